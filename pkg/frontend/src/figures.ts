/** Figure renderers: pure functions from parsed rows (+ manifest fit) to a canvas. */

import { Canvas, linearScale } from "./raster.js";
import type { Row } from "./csv.js";
import type { RateLawFit } from "./schemas.js";

export const WIDTH = 480;
export const HEIGHT = 360;
export const MARGIN = { left: 48, right: 16, top: 16, bottom: 36 };

const BLACK = 0;
const GRAY = 140;

export interface RateGeometry {
  discs: { px: number; py: number }[];
  lineAt?: (px: number) => number;
}

function plotArea() {
  return {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: HEIGHT - MARGIN.bottom,
    y1: MARGIN.top,
  };
}

function drawFrame(canvas: Canvas): void {
  const { x0, x1, y0, y1 } = plotArea();
  canvas.drawLine(x0, y0, x1, y0, BLACK);
  canvas.drawLine(x0, y0, x0, y1, BLACK);
}

/**
 * Geometry shared by the rate-law figures: disc centers for measured minimum
 * rates and, when a fit is supplied, the regression curve in pixel space.
 * The x axis carries W (rate-vs-w) or K (rate-vs-k); the curve is the fitted
 * law R = slope * K ln(W/K + 1) + intercept evaluated along that axis.
 */
export function rateGeometry(
  rows: Row[],
  axis: "w" | "k",
  fit: RateLawFit | undefined,
): RateGeometry {
  const { x0, x1, y0, y1 } = plotArea();
  const xs = rows.map((row) => row[axis]);
  const rates = rows.map((row) => row.r_min);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const xScale = linearScale(xMin, xMax, x0, x1);
  const law = (x: number, row: Row) => {
    const k = axis === "k" ? x : row.k;
    const w = axis === "w" ? x : row.w;
    return fit!.slope * k * Math.log(w / k + 1) + fit!.intercept;
  };
  const yCandidates = rates.slice();
  if (fit && rows.length >= 3) {
    yCandidates.push(...xs.map((x, i) => law(x, rows[i])));
  }
  const yMax = Math.max(...yCandidates) * 1.1 + 1;
  const yScale = linearScale(0, yMax, y0, y1);

  const discs = rows.map((row, i) => ({
    px: xScale.toPixel(xs[i]),
    py: yScale.toPixel(rates[i]),
  }));
  let lineAt: ((px: number) => number) | undefined;
  if (fit && rows.length >= 3) {
    const span = xMax - xMin || 1;
    const template = rows[0];
    lineAt = (px: number) => {
      const x = xMin + ((px - x0) / (x1 - x0)) * span;
      return yScale.toPixel(law(x, template));
    };
  }
  return { discs, lineAt };
}

export function renderRatePlot(rows: Row[], axis: "w" | "k", fit?: RateLawFit): Canvas {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const canvas = new Canvas(WIDTH, HEIGHT);
  drawFrame(canvas);
  const { x0, x1 } = plotArea();
  const geometry = rateGeometry(rows, axis, fit);
  if (geometry.lineAt) {
    canvas.drawCurve(x0, x1, geometry.lineAt, GRAY);
  }
  for (const disc of geometry.discs) {
    canvas.fillDisc(disc.px, disc.py, 3, BLACK);
  }
  return canvas;
}

export interface PhaseGridGeometry {
  rValues: number[];
  kValues: number[];
  cellRect(i: number, j: number): { x: number; y: number; w: number; h: number };
  shade(successRate: number): number;
}

export function phaseGridGeometry(rows: Row[]): PhaseGridGeometry {
  const { x0, x1, y0, y1 } = plotArea();
  const rValues = [...new Set(rows.map((row) => row.r))].sort((a, b) => a - b);
  const kValues = [...new Set(rows.map((row) => row.k))].sort((a, b) => a - b);
  const cellW = (x1 - x0) / rValues.length;
  const cellH = (y0 - y1) / kValues.length;
  return {
    rValues,
    kValues,
    // row i: sparsity (low K at the bottom); column j: sampling rate
    cellRect: (i, j) => ({
      x: x0 + j * cellW,
      y: y0 - (i + 1) * cellH,
      w: cellW,
      h: cellH,
    }),
    // lighter pixels denote higher success probability
    shade: (rate) => Math.round(255 * Math.min(Math.max(rate, 0), 1)),
  };
}

export function renderPhaseGrid(rows: Row[]): Canvas {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const canvas = new Canvas(WIDTH, HEIGHT);
  const geometry = phaseGridGeometry(rows);
  const { rValues, kValues } = geometry;
  const rate = new Map<string, number>();
  for (const row of rows) {
    rate.set(`${row.k},${row.r}`, row.successes < 0 ? NaN : row.successes / row.trials);
  }
  for (let i = 0; i < kValues.length; i++) {
    for (let j = 0; j < rValues.length; j++) {
      const cell = geometry.cellRect(i, j);
      const value = rate.get(`${kValues[i]},${rValues[j]}`);
      if (value === undefined || Number.isNaN(value)) {
        continue; // skipped cells stay background
      }
      canvas.fillRect(cell.x, cell.y, cell.w, cell.h, geometry.shade(value));
    }
  }
  // dashed empirical 99% success isocline: for each sparsity row, the first
  // sampling rate whose success rate reaches 0.99
  for (let i = 0; i < kValues.length; i++) {
    const j = rValues.findIndex((r) => {
      const value = rate.get(`${kValues[i]},${r}`);
      return value !== undefined && value >= 0.99;
    });
    if (j >= 0) {
      const cell = geometry.cellRect(i, j);
      canvas.drawLine(cell.x, cell.y, cell.x, cell.y + cell.h, BLACK, [4, 4]);
    }
  }
  drawFrame(canvas);
  return canvas;
}

export function renderWindowDecay(rows: Row[]): Canvas {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const canvas = new Canvas(WIDTH, HEIGHT);
  drawFrame(canvas);
  const { x0, x1, y0, y1 } = plotArea();
  const logs = rows.map((row) => ({
    x: Math.log(row.k),
    raw: Math.log(row.err_raw),
    win: Math.log(row.err_windowed),
  }));
  const xScale = linearScale(
    Math.min(...logs.map((p) => p.x)),
    Math.max(...logs.map((p) => p.x)),
    x0,
    x1,
  );
  const all = logs.flatMap((p) => [p.raw, p.win]).filter((v) => Number.isFinite(v));
  const yScale = linearScale(Math.min(...all), Math.max(...all), y0, y1);
  for (let i = 1; i < logs.length; i++) {
    canvas.drawLine(
      xScale.toPixel(logs[i - 1].x), yScale.toPixel(logs[i - 1].raw),
      xScale.toPixel(logs[i].x), yScale.toPixel(logs[i].raw), BLACK,
    );
    canvas.drawLine(
      xScale.toPixel(logs[i - 1].x), yScale.toPixel(logs[i - 1].win),
      xScale.toPixel(logs[i].x), yScale.toPixel(logs[i].win), GRAY, [4, 4],
    );
  }
  for (const p of logs) {
    canvas.fillDisc(xScale.toPixel(p.x), yScale.toPixel(p.raw), 2, BLACK);
    canvas.fillDisc(xScale.toPixel(p.x), yScale.toPixel(p.win), 2, GRAY);
  }
  return canvas;
}

export function renderAmSnr(rows: Row[]): Canvas {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const canvas = new Canvas(WIDTH, HEIGHT);
  drawFrame(canvas);
  const { x0, x1, y0, y1 } = plotArea();
  const sorted = [...rows].sort((a, b) => a.r - b.r);
  const xScale = linearScale(sorted[0].r, sorted[sorted.length - 1].r, x0, x1);
  const snrs = sorted.map((row) => row.snr_db);
  const yScale = linearScale(Math.min(...snrs, 0), Math.max(...snrs) * 1.05 + 1, y0, y1);
  for (let i = 1; i < sorted.length; i++) {
    canvas.drawLine(
      xScale.toPixel(sorted[i - 1].r), yScale.toPixel(sorted[i - 1].snr_db),
      xScale.toPixel(sorted[i].r), yScale.toPixel(sorted[i].snr_db), BLACK,
    );
  }
  for (const row of sorted) {
    canvas.fillDisc(xScale.toPixel(row.r), yScale.toPixel(row.snr_db), 3, BLACK);
  }
  return canvas;
}
