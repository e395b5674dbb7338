"""Exact l_g(d) over a range of d, checked against the log and digit bounds.

    python scripts/sandwich_grid.py --g 3 --max 5000
"""

from __future__ import annotations

import argparse
import time
from collections import Counter

from gchain.optimal import bounds, l_g_exact


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--g", type=int, nargs="+", default=[3])
    ap.add_argument("--max", type=int, default=2000, dest="d_max")
    args = ap.parse_args()

    for g in args.g:
        t0 = time.perf_counter()
        slack = Counter()
        bad = []
        for d in range(1, args.d_max + 1):
            l = l_g_exact(d, g).l
            lo, hi = bounds(d, g)
            if not lo <= l <= hi:
                bad.append(d)
            slack[hi - l] += 1
        dt = time.perf_counter() - t0
        print(f"g={g}: d<={args.d_max} violations={len(bad)} upper-bound slack histogram={dict(sorted(slack.items()))} ({dt:.1f}s)")


if __name__ == "__main__":
    main()
