#!/usr/bin/env node
/**
 * render-figures <csv-dir> <out-dir> [--format svg|png]
 *
 * Reads the analysis CLI's fig1..fig4 CSVs from <csv-dir> and writes one
 * chart image per figure into <out-dir>.  No data is recomputed; the CSV
 * values are plotted verbatim.
 */

import { defaultJobs, ImageFormat } from "./manifest";
import { render } from "./render";

export function main(argv: string[]): number {
  const args = argv.filter((a) => a !== "--");
  let format: ImageFormat = "svg";
  const positional: string[] = [];
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "--format") {
      const value = args[++i];
      if (value !== "svg" && value !== "png") {
        process.stderr.write(`error: unknown format '${value}'\n`);
        return 2;
      }
      format = value;
    } else if (args[i].startsWith("--")) {
      process.stderr.write(`error: unknown flag '${args[i]}'\n`);
      return 2;
    } else {
      positional.push(args[i]);
    }
  }
  if (positional.length !== 2) {
    process.stderr.write("usage: render-figures <csv-dir> <out-dir> [--format svg|png]\n");
    return 2;
  }
  const [csvDir, outDir] = positional;
  for (const job of defaultJobs(csvDir, outDir, format)) {
    try {
      const prepared = render(job);
      process.stdout.write(
        `${job.outputImage}: ${prepared.series.length} curves, ` +
          `${prepared.x.length} points\n`,
      );
    } catch (err) {
      process.stderr.write(`error: ${job.inputCsv}: ${(err as Error).message}\n`);
      return 1;
    }
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
