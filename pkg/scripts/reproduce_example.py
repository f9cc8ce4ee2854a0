"""Print the verdicts for T_s (x) T_t versus T_(s+1) (x) T_t over F2(s,t)."""

import argparse
import sys

from biquat.example import reproduce_example


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    result = reproduce_example(seed=args.seed)
    sys.stdout.write(result.text())
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
