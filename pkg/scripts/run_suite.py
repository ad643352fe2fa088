"""Run the nine acceptance criteria and print one line per criterion.

    python scripts/run_suite.py [--seed N]

Exits non-zero when any criterion fails.
"""

import argparse
import sys

from gorenstein_stark.acceptance import run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed of the shared instance corpus")
    args = parser.parse_args()
    results = run_all(seed=args.seed)
    for result in results:
        print(result.line(), flush=True)
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
