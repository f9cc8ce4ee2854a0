"""Run the seeded property checks over several fields and print a summary table."""

import argparse
import sys
import time

from biquat.exactfield import field_from_name
from biquat.verify import VerifyConfig, format_summary, run_verification

DEFAULT_FIELDS = ("F2", "F3", "F4", "F5", "F7", "Q", "F2t", "F2st", "F3t")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fields", nargs="+", default=list(DEFAULT_FIELDS))
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--verbose", action="store_true", help="print the per-label summary for every field")
    args = parser.parse_args()

    failed = False
    print(f"{'field':8s} {'trials':>6s} {'passed':>7s} {'skipped':>7s} {'failed':>6s} {'seconds':>8s}")
    for name in args.fields:
        config = VerifyConfig(field_from_name(name), args.trials, args.seed)
        start = time.perf_counter()
        tallies = run_verification(config)
        elapsed = time.perf_counter() - start
        passed = sum(t.passed for t in tallies.values())
        skipped = sum(t.skipped for t in tallies.values())
        bad = sum(t.failed for t in tallies.values())
        failed |= bad > 0
        print(f"{name:8s} {args.trials:6d} {passed:7d} {skipped:7d} {bad:6d} {elapsed:8.1f}", flush=True)
        if args.verbose or bad:
            print(format_summary(config, tallies))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
