"""Reproduce the method-comparison table over a grid of (row, g, k) instances.

    python scripts/table1.py                 # the default two instances per row
    python scripts/table1.py --g 5 7 11 --k 0 1
"""

from __future__ import annotations

import argparse

from gchain.analysis import DEFAULT_GRID, table1_row
from gchain.errors import ConditionUnmet, Overflow


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--g", type=int, nargs="*", help="try every row at these g (default: built-in grid)")
    ap.add_argument("--k", type=int, nargs="*", default=[0])
    args = ap.parse_args()

    if args.g:
        grid = [(row, g, k) for row in range(1, 8) for g in args.g for k in args.k]
    else:
        grid = list(DEFAULT_GRID)
    wins = total = 0
    for row, g, k in grid:
        try:
            r = table1_row(row, g, k)
        except (ConditionUnmet, Overflow) as exc:
            if not args.g:
                raise
            print(f"row {row} g={g} k={k}: skipped ({exc})")
            continue
        total += 1
        wins += r.verdict
        print(f"row {row} g={g:<3d} k={k} d={r.d:<12d} {r.summary()}")
    print(f"{wins}/{total} strict verdicts")


if __name__ == "__main__":
    main()
