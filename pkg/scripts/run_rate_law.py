#!/usr/bin/env python3
"""Reproduce the sampling-rate law: R_min vs sparsity at fixed bandlimit.

Writes minrate.csv and a manifest (with the fitted slope/intercept) under
--out.  Desk scale by default: W=512, K in {1,2,4,8,16}, 100 trials per
candidate rate, 99% success target.
"""

import argparse

from demodlab.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--w", type=int, default=512)
    parser.add_argument("--k", default="1,2,4,8,16")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--target", type=float, default=0.99)
    parser.add_argument("--seed", type=int, default=20090130)
    parser.add_argument("--out", default="results/rate_law")
    args = parser.parse_args()
    return cli_main([
        "sweep", "--kind", "minrate", "--w", str(args.w), "--k", args.k,
        "--trials", str(args.trials), "--target", str(args.target),
        "--seed", str(args.seed), "--out", args.out,
    ])


if __name__ == "__main__":
    raise SystemExit(main())
