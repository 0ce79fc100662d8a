"""Numba kernels rasterizing the winding number of a closed polyline.

Cells are indexed ``[i, j]`` with i along x and j along y; the grid's lower
left corner is (x0, y0) and cell sizes are hx, hy.

Convention: a point p gets +1 for every polyline piece that crosses the
horizontal ray from p to the right while moving upward, and -1 when moving
downward. That is the winding number for any orientation.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def center_winding(xs, ys, x0, y0, hx, hy, nx, ny):
    """Integer winding number at every cell center (half-open crossing rule)."""
    diff = np.zeros((nx + 1, ny), dtype=np.int64)
    for s in range(len(xs) - 1):
        xa, ya, xb, yb = xs[s], ys[s], xs[s + 1], ys[s + 1]
        if ya == yb:
            continue
        if ya < yb:
            lo, hi, sgn = ya, yb, 1
        else:
            lo, hi, sgn = yb, ya, -1
        # rows whose center y_c satisfies lo <= y_c < hi
        j0 = int(np.ceil((lo - y0) / hy - 0.5))
        j1 = int(np.ceil((hi - y0) / hy - 0.5))
        if j0 < 0:
            j0 = 0
        if j1 > ny:
            j1 = ny
        for j in range(j0, j1):
            yc = y0 + (j + 0.5) * hy
            xc = xa + (xb - xa) * (yc - ya) / (yb - ya)
            # cells with center strictly left of the crossing get the count
            i0 = int(np.ceil((xc - x0) / hx - 0.5))
            if i0 < 0:
                i0 = 0
            if i0 > nx:
                i0 = nx
            diff[0, j] += sgn
            diff[i0, j] -= sgn
    out = np.empty((nx, ny), dtype=np.int64)
    for j in range(ny):
        acc = 0
        for i in range(nx):
            acc += diff[i, j]
            out[i, j] = acc
    return out


@numba.njit(cache=True)
def _antiderivative(x, lo, hi, dy):
    """G(x) = ∫_x^∞ F, where F is the signed y-measure of a strip piece right of x."""
    if x >= hi:
        return 0.0
    if x <= lo:
        return dy * (0.5 * (lo + hi) - x)
    return dy * (hi - x) * (hi - x) / (2.0 * (hi - lo))


@numba.njit(cache=True)
def coverage_winding(xs, ys, x0, y0, hx, hy, nx, ny):
    """Exact ∫_cell w dA for every cell, plus a flag array of cells the line touches.

    Each segment is clipped to horizontal strips; within a strip the piece
    contributes dy to every point lying left of it, which integrates in closed
    form over each cell.
    """
    acc = np.zeros((nx + 1, ny))
    tail = np.zeros((nx + 1, ny))
    touched = np.zeros((nx, ny), dtype=np.bool_)
    for s in range(len(xs) - 1):
        xa, ya, xb, yb = xs[s], ys[s], xs[s + 1], ys[s + 1]
        ylo = min(ya, yb)
        yhi = max(ya, yb)
        ja = int(np.floor((ylo - y0) / hy))
        jb = int(np.floor((yhi - y0) / hy))
        if ya == yb:
            # horizontal pieces carry no area but still mark cells
            j = ja
            if 0 <= j < ny:
                ia = int(np.floor((min(xa, xb) - x0) / hx))
                ib = int(np.floor((max(xa, xb) - x0) / hx))
                for i in range(max(ia, 0), min(ib, nx - 1) + 1):
                    touched[i, j] = True
            continue
        for j in range(max(ja, 0), min(jb, ny - 1) + 1):
            s0 = max(ylo, y0 + j * hy)
            s1 = min(yhi, y0 + (j + 1) * hy)
            if s1 < s0:
                continue
            xs0 = xa + (xb - xa) * (s0 - ya) / (yb - ya)
            xs1 = xa + (xb - xa) * (s1 - ya) / (yb - ya)
            dy = (s1 - s0) if yb > ya else -(s1 - s0)
            lo = min(xs0, xs1)
            hi = max(xs0, xs1)
            il = int(np.floor((lo - x0) / hx))
            ih = int(np.floor((hi - x0) / hx))
            if il < 0:
                il = 0
            if ih > nx - 1:
                ih = nx - 1
            for i in range(il, ih + 1):
                touched[i, j] = True
                if dy == 0.0:
                    continue
                xl = x0 + i * hx
                xr = xl + hx
                if hi - lo <= 1e-15 * hx:
                    xm = 0.5 * (lo + hi)
                    acc[i, j] += dy * max(0.0, min(hx, xm - xl))
                else:
                    acc[i, j] += _antiderivative(xl, lo, hi, dy) - _antiderivative(xr, lo, hi, dy)
            # cells entirely left of the piece see the full signed height
            if dy != 0.0:
                tail[0, j] += dy * hx
                tail[il, j] -= dy * hx
    out = np.empty((nx, ny))
    for j in range(ny):
        run = 0.0
        for i in range(nx):
            run += tail[i, j]
            out[i, j] = acc[i, j] + run
    return out, touched
