#!/usr/bin/env python3
"""Run the acceptance suite in-process and print one line per criterion.

    python3 scripts/run_acceptance.py --level quick --workers 2 --json out.json
"""

import argparse
import json
import sys
import time

from carlitz_goss.acceptance import CRITERIA, LEVELS, run_suite, theorem4_checks
from carlitz_goss.zeta import ZetaConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", choices=LEVELS, default="quick")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run (0 = P-adic class formula over O_L)")
    ap.add_argument("--json", help="also write the results here")
    args = ap.parse_args()

    config = ZetaConfig.from_env(args.workers)
    start = time.perf_counter()
    if args.only:
        results = []
        for k in args.only:
            results.append(theorem4_checks(config) if k == 0 else CRITERIA[k](args.level, config))
    else:
        results = run_suite(args.level, config)
    for r in results:
        print(r.line(), flush=True)
    print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, sort_keys=True, indent=2)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
