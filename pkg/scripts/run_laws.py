#!/usr/bin/env python3
"""Run the full law suite and print the report.

Standalone equivalent of `tsettopos laws`.  Useful for quick
before/after diffs while hacking on the core modules:

    python3 scripts/run_laws.py --format json > before.json
    ... edit ...
    python3 scripts/run_laws.py --format json > after.json
    diff before.json after.json
"""

import argparse
import sys

from tsettopos import SuiteConfig, report_json, report_text, run_suite
from tsettopos.suites import CHECKS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--max-algebra-size", type=int, default=4)
    ap.add_argument("--max-carrier-size", type=int, default=3)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--check", action="append", choices=CHECKS,
                    help="restrict to these checks (repeatable)")
    args = ap.parse_args()

    kw = {
        "max_algebra_size": args.max_algebra_size,
        "max_carrier_size": args.max_carrier_size,
    }
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.check:
        kw["checks"] = tuple(args.check)
    rep = run_suite(SuiteConfig(**kw))

    if args.format == "json":
        sys.stdout.write(report_json(rep))
    else:
        sys.stdout.write(report_text(rep))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
