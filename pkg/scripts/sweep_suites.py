#!/usr/bin/env python3
"""Run every verification suite over a grid of dimensions.

    python scripts/sweep_suites.py --dims 2 3 4 8 --trials 10000 --seed 7 --out sweep.jsonl

Writes one Report JSON line per (suite, n) and prints a compact table on stderr.
"""

import argparse
import sys
import time

from conez.harness import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 8])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    sink = sys.stdout if args.out == "-" else open(args.out, "w")
    all_pass = True
    for n in args.dims:
        for suite in SUITES:
            if suite == "n2" and n != args.dims[0]:
                continue  # n2 does not depend on n
            t0 = time.perf_counter()
            for report in run_suite(suite, n, args.trials, args.seed):
                sink.write(report.to_json() + "\n")
                all_pass &= report.status == "Pass"
                print(
                    f"{report.suite:>13} n={report.n:<3} {report.status:4} "
                    f"failures={report.failures:<5} worst={report.worst_violation:+.3e} "
                    f"({time.perf_counter() - t0:.1f} s)",
                    file=sys.stderr,
                )
    if sink is not sys.stdout:
        sink.close()
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
