#!/usr/bin/env python3
"""Minimum sampling rate as the bandlimit grows at fixed sparsity.

One minrate.csv per bandlimit is awkward to plot, so this script runs the
search directly and writes a single CSV of (w, k, r_min) rows plus the
fitted rate law.
"""

import argparse
from pathlib import Path

from demodlab import io
from demodlab.experiments import fit_rate_law, min_rate_search
from demodlab.seeding import derive_rng


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--w", default="128,256,512,1024")
    parser.add_argument("--k", type=int, default=5)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--target", type=float, default=0.99)
    parser.add_argument("--seed", type=int, default=20090130)
    parser.add_argument("--out", default="results/growth")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    w_values = [int(w) for w in args.w.split(",")]
    points = []
    for w in w_values:
        rng = derive_rng(args.seed, "growth", w, args.k)
        r_min = min_rate_search(w, args.k, args.trials, args.target, rng)
        points.append((args.k, w, r_min))
        print(f"W={w:5d} K={args.k}: R_min = {r_min}")
    io.write_csv(out / "minrate.csv", io.MINRATE_COLUMNS, [(w, k, r) for (k, w, r) in points])
    results = {}
    valid = [p for p in points if p[2] > 0]
    if len(valid) >= 3:
        fit = fit_rate_law(valid)
        results["fit"] = {"slope": fit.slope, "intercept": fit.intercept}
        print(f"fit: R = {fit.slope:.2f} K ln(W/K + 1) + {fit.intercept:.2f}")
    config = {
        "w": w_values, "k": args.k, "trials": args.trials,
        "target": args.target, "seed": args.seed,
    }
    io.write_manifest(out, "growth", args.seed, config, results=results)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
