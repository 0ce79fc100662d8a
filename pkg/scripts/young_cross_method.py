"""Riemann–Stieltjes versus mollified Young integrals under grid refinement.

Fixes a pair of Weierstrass paths and reports both routes for increasing
sample counts, so the discretization error of each can be read off.

    python scripts/young_cross_method.py --gamma 0.7 --terms 8 --levels 10-15
"""

from __future__ import annotations

import argparse

from hkit.holder import weierstrass_path
from hkit.young import young_mollified, young_rs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=0.7)
    ap.add_argument("--terms", type=int, default=8)
    ap.add_argument("--levels", default="10-15", help="range of log2 sample counts")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    lo, hi = (int(s) for s in args.levels.split("-"))
    print(f"{'N':>7} {'rs':>14} {'rs+rich':>14} {'mollified':>14} {'rel gap':>10}")
    for j in range(lo, hi + 1):
        p = weierstrass_path(args.gamma, 2, args.terms, 2 ** j, 2, args.seed)
        f, g = p.component(0), p.component(1)
        rs = young_rs(f, g).value
        rich = young_rs(f, g, richardson=True).value
        mol = young_mollified(f, g).value
        print(f"{2 ** j:>7} {rs:>14.9f} {rich:>14.9f} {mol:>14.9f} {abs(rich - mol) / abs(rich):>10.2e}")


if __name__ == "__main__":
    main()
