"""Time the cone-calculus law suites.

Usage: python3 scripts/run_laws.py [--count N] [--seed S] [--mutate]
"""

import argparse
import sys
import time

from conecalc.cli import run_suites
from conecalc.linecone.laws import DEFAULT_COUNT, DEFAULT_SEED, LAWS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=DEFAULT_COUNT)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--mutate", action="store_true")
    ap.add_argument("--replay-dir", default="conecalc-replay")
    args = ap.parse_args()
    total = time.perf_counter()
    ok = True
    for suite in LAWS:
        t0 = time.perf_counter()
        rep = run_suites([suite], args.seed, args.count, args.mutate, args.replay_dir)
        r = rep["suites"][suite]
        ok &= rep["all_passed"]
        print(f"{suite:28s} {r['passed']:4d}/{args.count}  {time.perf_counter() - t0:6.2f} s")
    print(f"total {time.perf_counter() - total:.2f} s")
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
