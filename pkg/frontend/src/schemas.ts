/** CSV column contracts shared with the demodlab CLI, plus figure kinds. */

export const FIGURE_KINDS = [
  "rate-vs-w",
  "rate-vs-k",
  "phase-grid",
  "window-decay",
  "am-snr",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  manifest?: string;
}

/** Exact column sets, in file order, per input schema. */
export const COLUMNS: Record<FigureKind, readonly string[]> = {
  "rate-vs-w": ["w", "k", "r_min"],
  "rate-vs-k": ["w", "k", "r_min"],
  "phase-grid": ["w", "k", "r", "trials", "successes"],
  "window-decay": ["k", "err_raw", "err_windowed"],
  "am-snr": ["w", "k", "r", "carrier", "noise", "snr_db"],
};

export interface RateLawFit {
  slope: number;
  intercept: number;
}
