#!/usr/bin/env python3
"""Run the windowing decay study, AM demo sweep, and matrix diagnostics."""

import argparse

from demodlab.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20090130)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    jobs = [
        ["window", "--omega-prime", "10.5", "--order", "2", "--k", "4,8,16,32,64",
         "--out", f"{args.out}/window"],
        ["am-demo", "--w", "1024", "--k", "4", "--carrier", "100",
         "--r", "512,256,102", "--noise", "0.01", "--seed", str(args.seed),
         "--out", f"{args.out}/am"],
        ["diagnose", "--w", "512", "--r", "128", "--k", "8", "--draws", "100",
         "--seed", str(args.seed), "--out", f"{args.out}/diag"],
    ]
    for job in jobs:
        code = cli_main(job)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
