#!/usr/bin/env python3
"""Run the acceptance criteria and print one line per criterion.

    python scripts/run_acceptance.py          # all seven
    python scripts/run_acceptance.py 3 7      # a subset
"""
import argparse
import sys

from k2coh.acceptance import CRITERIA


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("criteria", nargs="*", type=int, choices=sorted(CRITERIA),
                    help="criterion numbers (default: all)")
    args = ap.parse_args(argv)
    failed = 0
    for k in args.criteria or sorted(CRITERIA):
        res = CRITERIA[k]()
        print(res.line(), flush=True)
        failed += not res.passed
    print(f"{failed} criteria failed" if failed else "all criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
