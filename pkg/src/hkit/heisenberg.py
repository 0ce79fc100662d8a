"""The Heisenberg group H^n on R^{2n+1} with coordinates (x_1, y_1, ..., x_n, y_n, t).

Point-level functions take :class:`HPoint`; the ``*_arrays`` variants work on
arrays whose last axis holds the 2n+1 coordinates and broadcast over the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import Covector, contact_form_array


@dataclass(frozen=True)
class HPoint:
    z: np.ndarray
    t: float

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float).reshape(-1)
        if len(z) == 0 or len(z) % 2:
            raise ValueError("planar part must have even positive length 2n")
        if not (np.all(np.isfinite(z)) and np.isfinite(self.t)):
            raise ValueError("non-finite coordinates")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self) -> int:
        return len(self.z) // 2

    def coords(self) -> np.ndarray:
        return np.append(self.z, self.t)

    @classmethod
    def from_coords(cls, c) -> "HPoint":
        c = np.asarray(c, dtype=float)
        return cls(c[:-1], c[-1])

    @classmethod
    def identity(cls, n: int) -> "HPoint":
        return cls(np.zeros(2 * n), 0.0)

    def to_json(self) -> dict:
        return {"n": self.n, "z": self.z.tolist(), "t": self.t}

    @classmethod
    def from_json(cls, obj: dict) -> "HPoint":
        p = cls(obj["z"], obj["t"])
        if int(obj["n"]) != p.n:
            raise ValueError("declared n does not match z")
        return p


@dataclass(frozen=True)
class HMetricReport:
    euclid: float
    koranyi: float
    phi: float


def _same_n(p: HPoint, q: HPoint):
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: H^{p.n} vs H^{q.n}")


def symplectic_pairing(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Σ_j (y_j x'_j - x_j y'_j) for planar parts z = (x, y), w = (x', y')."""
    return (z[..., 1::2] * w[..., 0::2] - z[..., 0::2] * w[..., 1::2]).sum(axis=-1)


def mul_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = p + q
    out[..., -1] += 2.0 * symplectic_pairing(p[..., :-1], q[..., :-1])
    return out


def inv_arrays(p: np.ndarray) -> np.ndarray:
    return -np.asarray(p, dtype=float)


def phi_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Height component of q^{-1} * p: t - t' + 2Σ(x'_j y_j - x_j y'_j)."""
    return p[..., -1] - q[..., -1] + 2.0 * symplectic_pairing(p[..., :-1], q[..., :-1])


def koranyi_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    dz2 = ((p[..., :-1] - q[..., :-1]) ** 2).sum(axis=-1)
    phi = phi_arrays(p, q)
    return np.sqrt(np.sqrt(dz2 * dz2 + phi * phi))


def dilate_arrays(p: np.ndarray, r) -> np.ndarray:
    """δ_r p = (r z, r² t); ``r`` is a scalar or an array of shape (..., 1)."""
    if np.any(np.asarray(r) < 0):
        raise ValueError("dilation factor must be nonnegative")
    r = np.asarray(r, dtype=float)
    out = np.array(p, dtype=float) * r
    out[..., -1] *= r[..., 0] if r.ndim else r
    return out


def group_mul(p: HPoint, q: HPoint) -> HPoint:
    _same_n(p, q)
    return HPoint.from_coords(mul_arrays(p.coords(), q.coords()))


def group_inv(p: HPoint) -> HPoint:
    return HPoint(-p.z, -p.t)


def koranyi_dist(p: HPoint, q: HPoint) -> HMetricReport:
    _same_n(p, q)
    a, b = p.coords(), q.coords()
    return HMetricReport(
        euclid=float(np.linalg.norm(a - b)),
        koranyi=float(koranyi_arrays(a, b)),
        phi=float(phi_arrays(a, b)),
    )


def dilate(p: HPoint, r: float) -> HPoint:
    return HPoint.from_coords(dilate_arrays(p.coords(), r))


def contact_form_at(p: HPoint) -> Covector:
    return Covector.from_array(2 * p.n + 1, 1, contact_form_array(p.coords()))


def left_invariant_frame(p: HPoint) -> np.ndarray:
    """Rows X_1, Y_1, ..., X_n, Y_n, T at p in standard coordinates."""
    n, D = p.n, 2 * p.n + 1
    F = np.eye(D)
    for j in range(n):
        x, y = p.z[2 * j], p.z[2 * j + 1]
        F[2 * j, -1] = 2.0 * y
        F[2 * j + 1, -1] = -2.0 * x
    return F


def metric_comparison_check(points) -> tuple[float, float]:
    """Best constants with c_lower |p-q| <= d_K(p,q) <= c_upper |p-q|^{1/2}.

    Exhaustive over all pairs of distinct points in the cloud.
    """
    P = np.array([p.coords() if isinstance(p, HPoint) else p for p in points], dtype=float)
    if len(P) < 2:
        raise ValueError("need at least two points")
    i, j = np.triu_indices(len(P), k=1)
    e = np.linalg.norm(P[i] - P[j], axis=-1)
    dk = koranyi_arrays(P[i], P[j])
    keep = e > 0
    if not keep.any():
        raise ValueError("all points coincide")
    e, dk = e[keep], dk[keep]
    return float((dk / e).min()), float((dk / np.sqrt(e)).max())
