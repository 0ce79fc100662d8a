"""L^p norms of the winding field of rough closed curves.

A circle is perturbed by a Weierstrass field of exponent γ and ‖w‖_p is
tabulated over p and raster resolution. Below p = 2γ the values settle as the
raster refines; above it they may keep growing with the resolution.

    python scripts/winding_lp_scan.py --gamma 0.6 --p 1,1.1,1.5,2
"""

from __future__ import annotations

import argparse
import warnings

import numpy as np

from hkit.holder import weierstrass_path
from hkit.planar import ClosedCurve2D, circle, winding_field


def rough_curve(gamma: float, amp: float, terms: int, N: int, seed: int) -> ClosedCurve2D:
    pts = circle(N).points
    W = weierstrass_path(gamma, 2, terms, N, 2, seed).values
    pts = pts + amp * (W - W[:1])
    pts[-1] = pts[0]
    return ClosedCurve2D.from_points(pts, gamma)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=0.6)
    ap.add_argument("--amp", type=float, default=0.5)
    ap.add_argument("--terms", type=int, default=14)
    ap.add_argument("--p", default="1,1.1,1.5,2")
    ap.add_argument("--res", default="256,512,1024,2048")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ps = [float(s) for s in args.p.split(",")]
    resolutions = [int(s) for s in args.res.split(",")]
    curve = rough_curve(args.gamma, args.amp, args.terms, 2 ** (args.terms + 3), args.seed)
    print(f"p < 2γ = {2 * args.gamma:g} is the finite range")
    print(f"{'res':>6} " + " ".join(f"{'p=' + format(p, 'g'):>10}" for p in ps) + f" {'max|w|':>7}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for r in resolutions:
            wf = winding_field(curve, r)
            norms = [wf.lp_norm(p) for p in ps]
            print(f"{r:>6} " + " ".join(f"{v:>10.5f}" for v in norms) + f" {int(np.abs(wf.w).max()):>7}")


if __name__ == "__main__":
    main()
