"""Run every built-in fixture job and print the one-line summaries.

Usage: python3 scripts/run_fixtures.py [--out DIR]
"""

import argparse
import sys
from pathlib import Path

from conecalc.cli import canonical_json, run_job_data, summary
from conecalc.fixtures import FIXTURES, fixture


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="write each report to DIR/<name>.json")
    args = ap.parse_args()
    worst = 0
    for name in FIXTURES:
        code, report = run_job_data(fixture(name))
        worst = max(worst, code)
        print(f"== {name} (exit {code}, {report['timing']['seconds']} s)")
        print(summary(report))
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{name}.json").write_text(canonical_json(report))
    return worst


if __name__ == "__main__":
    sys.exit(main())
