/** Default jobs mapping the analysis CLI's four figure CSVs to charts. */

import * as path from "node:path";

import { FigureJob } from "./figure";

export type ImageFormat = "svg" | "png";

export function defaultJobs(csvDir: string, outDir: string, format: ImageFormat = "svg"): FigureJob[] {
  const job = (
    name: string,
    xColumn: string,
    yColumns: string[],
    logX: boolean,
    logY: boolean,
    title: string,
  ): FigureJob => ({
    inputCsv: path.join(csvDir, `${name}.csv`),
    outputImage: path.join(outDir, `${name}.${format}`),
    xColumn,
    yColumns,
    logX,
    logY,
    title,
  });
  return [
    job("fig1", "snr_db", ["fixed_l3", "optimized"], false, false,
      "Single-stage sum rate vs transmit SNR (alpha=3, n=1e4)"),
    job("fig2", "alpha", ["single_stage", "hierarchical"], false, false,
      "Coding rates vs path-loss exponent"),
    job("fig3", "n", ["conventional", "enhanced"], true, true,
      "Hierarchical sum rate vs network size (alpha=3)"),
    job("fig4", "t", ["q1", "q2", "q3"], false, false,
      "Coding-rate iterates vs stage count (alpha=3)"),
  ];
}
