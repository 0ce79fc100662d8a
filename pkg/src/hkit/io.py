"""File formats: CSV time series, JSON objects, the GridMap binary and winding rasters.

Floats are written with 17 significant digits so files round-trip exactly and
identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from .heisenberg import HPoint
from .holder import GridMap, SampledPath
from .planar import WindingField

FLOAT_FMT = "%.17g"
GRID_HEADER_REALS = 8


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_json(path):
    return json.loads(Path(path).read_text())


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ----------------------------------------------------------------------------
# paths and points


def write_path_csv(path: SampledPath, dest, names=None) -> None:
    """Header ``t, v1..vd`` (or the given column names) then one row per sample."""
    names = names or [f"v{j + 1}" for j in range(path.dim)]
    if len(names) != path.dim:
        raise ValueError("one column name per component")
    data = np.column_stack([path.times, path.values])
    np.savetxt(dest, data, delimiter=",", fmt=FLOAT_FMT, header=",".join(["t", *names]),
               comments="")


def read_path_csv(src, gamma: float | None = None) -> SampledPath:
    """Read ``t, v1..vd`` rows; a non-numeric first row is taken as the header."""
    with open(src, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise ValueError(f"{src}: empty path file")
    try:
        float(rows[0][0])
    except ValueError:
        rows = rows[1:]
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError(f"{src}: need a time column and at least one value column")
    return SampledPath(data[:, 0], data[:, 1:], gamma)


def write_hpoints_csv(points, dest) -> None:
    """Rows ``n, z..., t``."""
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh)
        for p in points:
            w.writerow([p.n, *[FLOAT_FMT % v for v in p.z], FLOAT_FMT % p.t])


def read_hpoints_csv(src) -> list[HPoint]:
    out = []
    with open(src, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            n = int(row[0])
            vals = [float(v) for v in row[1:]]
            if len(vals) != 2 * n + 1:
                raise ValueError(f"{src}: row for n={n} needs {2 * n + 1} coordinates")
            out.append(HPoint(np.asarray(vals[:-1]), vals[-1]))
    return out


# ----------------------------------------------------------------------------
# GridMap binary


def write_gridmap(f: GridMap, dest) -> None:
    """Little-endian float64: 8-real header then row-major values.

    Header: ``m, target_dim, n_1, n_2, lo_1, hi_1, lo_2, hi_2`` with unused
    slots zero (m = 1 or 2). Values follow in shape ``(n_1[, n_2], target_dim)``.
    """
    if f.m not in (1, 2):
        raise ValueError("binary layout covers 1- and 2-dimensional domains")
    head = np.zeros(GRID_HEADER_REALS)
    head[0], head[1] = f.m, f.target_dim
    for a in range(f.m):
        head[2 + a] = f.shape[a]
        head[4 + 2 * a], head[5 + 2 * a] = f.lo[a], f.hi[a]
    with open(dest, "wb") as fh:
        fh.write(head.astype("<f8").tobytes())
        fh.write(np.ascontiguousarray(f.values, dtype="<f8").tobytes())


def read_gridmap(src, gamma: float | None = None) -> GridMap:
    raw = np.fromfile(src, dtype="<f8")
    if len(raw) < GRID_HEADER_REALS:
        raise ValueError(f"{src}: truncated header")
    head, body = raw[:GRID_HEADER_REALS], raw[GRID_HEADER_REALS:]
    m, N = int(head[0]), int(head[1])
    if m not in (1, 2) or N < 1:
        raise ValueError(f"{src}: bad header {head.tolist()}")
    shape = tuple(int(head[2 + a]) for a in range(m))
    if body.size != np.prod(shape) * N:
        raise ValueError(f"{src}: expected {np.prod(shape) * N} values, found {body.size}")
    lo = tuple(head[4 + 2 * a] for a in range(m))
    hi = tuple(head[5 + 2 * a] for a in range(m))
    return GridMap(lo, hi, body.reshape(shape + (N,)), gamma)


# ----------------------------------------------------------------------------
# winding rasters


def write_winding_csv(field: WindingField, dest) -> None:
    """Rows ``x, y, w, masked`` at cell centers, x varying fastest."""
    xc, yc = field.centers()
    X, Y = np.meshgrid(xc, yc, indexing="ij")
    cols = [X.T.ravel(), Y.T.ravel(), field.w.T.ravel(), field.mask.T.ravel().astype(int)]
    with open(dest, "w", newline="") as fh:
        fh.write("x,y,w,masked\n")
        for x, y, w, m in zip(*cols):
            fh.write(f"{FLOAT_FMT % x},{FLOAT_FMT % y},{int(w)},{int(m)}\n")


def write_winding_pgm(field: WindingField, dest) -> None:
    """Plain PGM (P2); gray level w - min(w), top row = largest y."""
    w = field.w
    lo = int(w.min())
    img = (w - lo).T[::-1]
    maxval = max(1, int(img.max()))
    lines = ["P2", f"# winding offset {lo}", f"{img.shape[1]} {img.shape[0]}", str(maxval)]
    lines += [" ".join(map(str, row)) for row in img]
    Path(dest).write_text("\n".join(lines) + "\n")
