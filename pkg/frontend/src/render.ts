/** Orchestration: CSV in, image out; the backend comes from the extension. */

import * as fs from "node:fs";
import * as path from "node:path";

import { parseCsv } from "./csv";
import { FigureJob, layoutFigure, prepareFigure, PreparedFigure } from "./figure";
import { renderPng } from "./png";
import { renderSvg } from "./svg";

/** Parse and validate the job's CSV without writing anything. */
export function loadFigure(job: FigureJob): PreparedFigure {
  const table = parseCsv(fs.readFileSync(job.inputCsv, "ascii"));
  return prepareFigure(job, table);
}

export function render(job: FigureJob): PreparedFigure {
  const prepared = loadFigure(job);
  const layout = layoutFigure(prepared);
  const ext = path.extname(job.outputImage).toLowerCase();
  let payload: Buffer | string;
  if (ext === ".svg") {
    payload = renderSvg(layout);
  } else if (ext === ".png") {
    payload = renderPng(layout);
  } else {
    throw new Error(`unsupported image format: ${ext || "(none)"}`);
  }
  fs.mkdirSync(path.dirname(job.outputImage), { recursive: true });
  fs.writeFileSync(job.outputImage, payload);
  return prepared;
}
