#!/usr/bin/env python3
"""Populate the phase-transition success grid at fixed bandlimit.

Writes grid.csv under --out.  The default desk-scale grid spans sampling
rates and sparsities around the empirical 99% isocline at W=512.
"""

import argparse

from demodlab.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--w", type=int, default=512)
    parser.add_argument("--k", default="1,2,4,8,16,24,32,48")
    parser.add_argument("--r", default="16:128:16")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20090130)
    parser.add_argument("--out", default="results/phase_grid")
    args = parser.parse_args()
    return cli_main([
        "sweep", "--kind", "grid", "--w", str(args.w), "--k", args.k, "--r", args.r,
        "--trials", str(args.trials), "--seed", str(args.seed), "--out", args.out,
    ])


if __name__ == "__main__":
    raise SystemExit(main())
