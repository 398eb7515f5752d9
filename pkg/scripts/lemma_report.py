#!/usr/bin/env python3
"""Run the full cutoff-machine pipeline over a range of cutoffs and report.

For each cutoff k: compile the machine, measure its clock offset, embed it
at <m, 2, b_m>, scan for its least counterexample, and compare against the
independent double-enumeration prediction.  Prints one row per cutoff and
optionally writes the rows as JSON.

Usage:
    python3 scripts/lemma_report.py --cutoffs 0..10 [--window 200] [--out report.json]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bgslab import quasitrivial as qt
from bgslab.cli import VERSION_TAGS, _parse_range


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cutoffs", default="0..10", metavar="A..B")
    parser.add_argument("--window", type=int, default=200,
                        help="no-interrupt check window above the cutoff")
    parser.add_argument("--budget", type=int, default=None,
                        help="counterexample scan budget (default: oracle-derived)")
    parser.add_argument("--out", metavar="FILE", help="write rows as JSON")
    args = parser.parse_args()

    rows = qt.lemma_check(_parse_range(args.cutoffs), budget=args.budget,
                          window=args.window)
    header = f"{'k':>3} {'b_m':>5} {'z':>8} {'zPred':>8} {'cutoff+1':>8} " \
             f"{'noInt':>6} {'restr':>6} {'pass':>5}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(f"{row.k:>3} {row.b_m:>5} {row.z:>8} {row.z_pred:>8} {row.k + 1:>8} "
              f"{str(row.no_interrupt):>6} {str(row.restriction_equal):>6} "
              f"{str(row.passed):>5}")
    failed = [row.k for row in rows if not row.passed]
    print(f"\n{len(rows) - len(failed)}/{len(rows)} cutoffs passed"
          + (f"; failing: {failed}" if failed else ""))

    if args.out:
        payload = {
            "rows": [
                {"k": r.k, "m": r.m, "b_m": r.b_m, "N": r.n, "status": r.status,
                 "z": r.z, "zPred": r.z_pred, "noInterrupt": r.no_interrupt,
                 "restrictionEqual": r.restriction_equal, "pass": r.passed,
                 **VERSION_TAGS}
                for r in rows
            ],
        }
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
