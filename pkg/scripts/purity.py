"""Purity sweep: random sections of split bundles on P^n.

For each seed, checks that the global normal cone has dimension rk F0 and
that the direct route and the closed formula give the same class.
Usage: python3 scripts/purity.py [--n 2] [--count 50] [--max-degree 2]
"""

import argparse
import sys
import time

from conecalc.vfclasses import (SectionConfig, bundles, random_section, vfc_closed_formula,
                                vfc_direct)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--start", type=int, default=0)
    args = ap.parse_args()
    cfg = SectionConfig(n=args.n, max_degree=args.max_degree)
    bad = 0
    t0 = time.perf_counter()
    for seed in range(args.start, args.start + args.count):
        X, ns = random_section(seed, cfg)
        r = vfc_direct(X, ns)
        rank0 = bundles(X, ns)[0].rank
        agree = r.vfc == vfc_closed_formula(X, ns).vfc
        if r.cone_dimension != rank0 or not agree:
            bad += 1
            print(f"seed {seed}: cone dim {r.cone_dimension}, rk F0 {rank0}, routes agree {agree}")
    print(f"{args.count - bad}/{args.count} pure with matching routes "
          f"in {time.perf_counter() - t0:.1f} s")
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
