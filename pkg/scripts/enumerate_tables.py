"""Print l_g(n), d_g(r), c_g(r) and NMC_g(n) tables from a full enumeration.

    python scripts/enumerate_tables.py --g 2 --max 256
"""

from __future__ import annotations

import argparse
import sys

from gchain.errors import LimitExceeded
from gchain.optimal import enumerate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--max", type=int, default=128, dest="n_max")
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--per-n", action="store_true", help="also list l and NMC for every n")
    args = ap.parse_args()

    try:
        t = enumerate(args.g, args.n_max, args.budget)
    except LimitExceeded as exc:
        print(f"stopped early: {exc}", file=sys.stderr)
        t = exc.partial
    print(f"g={t.g} n<={t.n_max} nodes={t.node_count}{' (partial)' if t.partial else ''}")
    print(" r  c_g(r)  d_g(r)")
    for r in sorted(t.c_g):
        dg = t.d_g[r] if r in t.complete_d else f"{t.d_g.get(r, 0)}+"
        print(f"{r:2d}  {t.c_g[r]:6d}  {dg}")
    if args.per_n:
        print("   n  l  NMC")
        for n in sorted(t.l):
            print(f"{n:4d} {t.l[n]:2d}  {t.nmc.get(n, '?')}")


if __name__ == "__main__":
    main()
