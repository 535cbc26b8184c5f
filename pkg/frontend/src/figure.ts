/**
 * Chart model shared by the SVG and PNG backends.
 *
 * prepareFigure() validates the job against a parsed CSV and carries the
 * numeric data through untouched; scaling to pixels happens only in
 * layoutFigure(), so the plotted values can be compared back to the CSV
 * bit for bit.
 */

import { CsvTable, numericColumn } from "./csv";

export interface FigureJob {
  inputCsv: string;
  outputImage: string;
  xColumn: string;
  yColumns: string[];
  logX: boolean;
  logY: boolean;
  title: string;
}

export class FigureDataError extends Error {}

export interface Series {
  name: string;
  /** Raw y values, exactly as parsed from the CSV. */
  values: number[];
}

export interface PreparedFigure {
  job: FigureJob;
  x: number[];
  series: Series[];
}

export function prepareFigure(job: FigureJob, table: CsvTable): PreparedFigure {
  for (const column of [job.xColumn, ...job.yColumns]) {
    if (!table.header.includes(column)) {
      throw new FigureDataError(`missing column: ${column}`);
    }
  }
  if (table.rows.length === 0) {
    throw new FigureDataError("no data rows");
  }
  const x = numericColumn(table, job.xColumn);
  const series = job.yColumns.map((name) => ({
    name,
    values: numericColumn(table, name),
  }));
  if (job.logX && x.some((v) => v <= 0)) {
    throw new FigureDataError(`log x axis needs positive ${job.xColumn} values`);
  }
  if (job.logY && series.some((s) => s.values.some((v) => v <= 0))) {
    throw new FigureDataError("log y axis needs positive values");
  }
  return { job, x, series };
}

// -- layout ---------------------------------------------------------------

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { left: 72, right: 24, top: 40, bottom: 48 };

export const PALETTE = [
  "#1f6fb4",
  "#d45500",
  "#2c8c4b",
  "#b03060",
  "#6a51a3",
  "#8c6d31",
];

export interface Tick {
  pixel: number;
  label: string;
}

export interface LaidOutSeries extends Series {
  color: string;
  /** Pixel-space polyline, same order as the data rows. */
  points: { px: number; py: number }[];
}

export interface Layout {
  width: number;
  height: number;
  plot: { x0: number; y0: number; x1: number; y1: number };
  xTicks: Tick[];
  yTicks: Tick[];
  series: LaidOutSeries[];
  title: string;
  xLabel: string;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function formatTick(value: number): string {
  const a = Math.abs(value);
  if (a !== 0 && (a >= 1e5 || a < 1e-3)) {
    return value.toExponential(0).replace("+", "");
  }
  const text = value.toPrecision(6);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

function linearTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo || Math.abs(hi) || 1;
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= target)! ;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

export function layoutFigure(prepared: PreparedFigure): Layout {
  const { job, x, series } = prepared;
  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  let [xLo, xHi] = extent(x);
  let [yLo, yHi] = extent(series.flatMap((s) => s.values));
  if (xLo === xHi) [xLo, xHi] = [xLo - 1, xHi + 1];
  if (yLo === yHi) [yLo, yHi] = [yLo - 1, yHi + 1];
  if (!job.logY) {
    // anchor linear rate axes at zero when the data allows it
    if (yLo > 0 && yLo < 0.5 * yHi) yLo = 0;
    const pad = 0.05 * (yHi - yLo);
    yHi += pad;
    if (yLo !== 0) yLo -= pad;
  }

  const sx = (v: number): number => {
    const t = job.logX
      ? (Math.log10(v) - Math.log10(xLo)) / (Math.log10(xHi) - Math.log10(xLo))
      : (v - xLo) / (xHi - xLo);
    return plot.x0 + t * (plot.x1 - plot.x0);
  };
  const sy = (v: number): number => {
    const t = job.logY
      ? (Math.log10(v) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo))
      : (v - yLo) / (yHi - yLo);
    return plot.y1 - t * (plot.y1 - plot.y0);
  };

  const xTickValues = job.logX ? logTicks(xLo, xHi) : linearTicks(xLo, xHi);
  const yTickValues = job.logY ? logTicks(yLo, yHi) : linearTicks(yLo, yHi);
  return {
    width: WIDTH,
    height: HEIGHT,
    plot,
    xTicks: xTickValues.map((v) => ({ pixel: sx(v), label: formatTick(v) })),
    yTicks: yTickValues.map((v) => ({ pixel: sy(v), label: formatTick(v) })),
    series: series.map((s, i) => ({
      ...s,
      color: PALETTE[i % PALETTE.length],
      points: s.values.map((v, k) => ({ px: sx(x[k]), py: sy(v) })),
    })),
    title: job.title,
    xLabel: job.xColumn,
  };
}
