"""Run the full identity suite over the default parameter sets and print a summary table.

    python3 scripts/run_suite.py [--seed 0] [--json reports.json]
"""

import argparse
import json
import time
from pathlib import Path

from dunkl_coulomb.verification import DEFAULT_PARAMS, SuiteConfig, all_passed, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", type=Path, help="also write the full reports here")
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = run_suite(DEFAULT_PARAMS, SuiteConfig(seed=args.seed))
    for r in reports:
        p = r.params
        print(f"{r.status:4s}  {r.name:20s} mu=({p['mu1']},{p['mu2']}) alpha={p['alpha']:5s} "
              f"{r.exactness:5s} {r.elapsed_ms:9.1f} ms")
    print(f"{len(reports)} reports in {time.perf_counter() - t0:.1f}s")
    if args.json:
        args.json.write_text(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    return 0 if all_passed(reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
