#!/usr/bin/env python3
"""Survey a contiguous block of machine-clock indices for counterexamples.

Scans each index n in the block with a fixed budget and summarizes how the
least failing pairs distribute: most decoded machines are trivial and fail
at the same small z, while indices of machines that guess some instances
correctly push their least counterexample higher or exhaust the budget.

Usage:
    python3 scripts/bgs_survey.py --from 0 --to 500 --budget 2000 [--cache FILE]
"""

import argparse
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bgslab import bgs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--from", dest="start", type=int, default=0)
    parser.add_argument("--to", type=int, default=200)
    parser.add_argument("--budget", type=int, default=2000)
    parser.add_argument("--cache", metavar="FILE")
    args = parser.parse_args()

    cache = bgs.ResultCache.load(args.cache) if args.cache else None
    witness_counts: Counter = Counter()
    exhausted = []
    for n in range(args.start, args.to + 1):
        result = bgs.counterexample(bgs.BgsIndex.from_natural(n), args.budget, cache)
        if result.found:
            witness_counts[result.z] += 1
        else:
            exhausted.append(n)
    if cache is not None:
        cache.save(args.cache)

    total = args.to - args.start + 1
    print(f"indices {args.start}..{args.to} (budget {args.budget}): "
          f"{total - len(exhausted)} found, {len(exhausted)} exhausted")
    print("\nleast-counterexample histogram:")
    for z, count in sorted(witness_counts.items()):
        print(f"  z={z:>8}  x{count}")
    if exhausted:
        print(f"\nexhausted indices: {exhausted}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
