/**
 * render --in <csv> --kind <figure-kind> --out <png> [--manifest <json>]
 *
 * Renders a demodlab CSV artifact to a grayscale PNG.  Fit coefficients for
 * the rate-law overlay are read from the run manifest (never recomputed);
 * the manifest defaults to manifest.json next to the input CSV.
 * Exit codes: 0 ok, 1 schema mismatch or bad invocation, 2 I/O failure.
 */

import { readFileSync, writeFileSync, existsSync, realpathSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { parseCsv, SchemaMismatchError } from "./csv.js";
import {
  renderAmSnr,
  renderPhaseGrid,
  renderRatePlot,
  renderWindowDecay,
} from "./figures.js";
import { encodeGrayPng } from "./png.js";
import { COLUMNS, FIGURE_KINDS, type FigureKind, type RateLawFit } from "./schemas.js";

function parseArgs(argv: string[]): { input: string; kind: FigureKind; output: string; manifest?: string } {
  const values: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`bad argument ${flag}`);
    }
    values[flag.slice(2)] = value;
  }
  const { in: input, kind, out: output, manifest } = values;
  if (!input || !kind || !output) {
    throw new Error("usage: render --in <csv> --kind <kind> --out <png> [--manifest <json>]");
  }
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    throw new Error(`unknown figure kind "${kind}" (expected one of ${FIGURE_KINDS.join(", ")})`);
  }
  return { input, kind: kind as FigureKind, output, manifest };
}

function readFit(manifestPath: string): RateLawFit | undefined {
  if (!existsSync(manifestPath)) {
    return undefined;
  }
  const doc = JSON.parse(readFileSync(manifestPath, "utf8"));
  const fit = doc?.results?.fit;
  if (fit && typeof fit.slope === "number" && typeof fit.intercept === "number") {
    return { slope: fit.slope, intercept: fit.intercept };
  }
  return undefined;
}

export function render(input: string, kind: FigureKind, manifestPath?: string) {
  const rows = parseCsv(readFileSync(input, "utf8"), COLUMNS[kind]);
  switch (kind) {
    case "rate-vs-w":
    case "rate-vs-k": {
      const fit = readFit(manifestPath ?? join(dirname(input), "manifest.json"));
      return renderRatePlot(rows, kind === "rate-vs-w" ? "w" : "k", fit);
    }
    case "phase-grid":
      return renderPhaseGrid(rows);
    case "window-decay":
      return renderWindowDecay(rows);
    case "am-snr":
      return renderAmSnr(rows);
  }
}

export function main(argv: string[]): number {
  let spec;
  try {
    spec = parseArgs(argv);
  } catch (error) {
    console.error(`render: ${(error as Error).message}`);
    return 1;
  }
  try {
    const canvas = render(spec.input, spec.kind, spec.manifest);
    writeFileSync(spec.output, encodeGrayPng(canvas.width, canvas.height, canvas.pixels));
    return 0;
  } catch (error) {
    if (error instanceof SchemaMismatchError) {
      console.error(`render: schema mismatch: ${error.message}`);
      return 1;
    }
    console.error(`render: ${(error as Error).message}`);
    return 2;
  }
}

const invokedDirectly = (() => {
  try {
    return (
      process.argv[1] !== undefined &&
      realpathSync(process.argv[1]) === fileURLToPath(import.meta.url)
    );
  } catch {
    return false;
  }
})();
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
