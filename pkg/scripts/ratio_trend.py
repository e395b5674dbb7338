"""Mean best-method length over floor(log_g n), level by level.

    python scripts/ratio_trend.py --g 2 --levels 10 40 --samples 50
"""

from __future__ import annotations

import argparse

from gchain.analysis import ratio_scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--levels", type=int, nargs=2, default=(10, 40), metavar=("LO", "HI"))
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    scan = ratio_scan(args.g, *args.levels, samples_per_level=args.samples, seed=args.seed)
    prev = None
    for lv, mean in scan.means().items():
        bounds = [s.bound / s.lam for s in scan.samples if s.lam == lv]
        mark = "" if prev is None or mean <= prev else "  (rises)"
        print(f"level {lv:2d}  mean ratio {mean:.4f}  mean bound/level {sum(bounds) / len(bounds):.4f}{mark}")
        prev = mean
    print(f"non-increasing: {scan.monotone()}  last <= first: {scan.endpoints_ok()}")


if __name__ == "__main__":
    main()
