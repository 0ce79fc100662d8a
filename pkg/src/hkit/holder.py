"""Sampled Hölder functions: seminorms, mollification, concave moduli and the
one-dimensional Gagliardo extension.

Paths are time series on a uniform grid of [a, b]; grid maps are vector
valued samples on a uniform box grid. Mollification uses the normalized
bump exp(-1/(1-|x|^2)) restricted to the lattice offsets inside the support,
renormalized so the discrete weights sum to one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gamma as gamma_fn, pi

import numpy as np
import scipy.integrate
import scipy.signal

from .errors import PreconditionError
from .heisenberg import koranyi_arrays

UNIFORM_RTOL = 1e-9


# ----------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SampledPath:
    """Samples ``values[i]`` of a curve at strictly increasing ``times[i]``.

    ``gamma`` is an optional declared Hölder exponent.
    """

    times: np.ndarray
    values: np.ndarray
    gamma: float | None = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float).reshape(-1)
        v = np.asarray(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if len(t) < 2:
            raise ValueError("a path needs at least two samples")
        if v.shape[0] != len(t):
            raise ValueError("times and values have different lengths")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("non-finite samples")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_intervals(self) -> int:
        return len(self.times) - 1

    @property
    def interval(self) -> tuple[float, float]:
        return float(self.times[0]), float(self.times[-1])

    def component(self, j: int) -> "SampledPath":
        return SampledPath(self.times, self.values[:, j:j + 1], self.gamma)

    def is_uniform(self) -> bool:
        dt = np.diff(self.times)
        return bool(np.all(np.abs(dt - dt.mean()) <= UNIFORM_RTOL * dt.mean()))

    def spacing(self) -> float:
        if not self.is_uniform():
            raise PreconditionError("operation requires uniformly spaced samples")
        return float((self.times[-1] - self.times[0]) / self.n_intervals)

    def with_gamma(self, gamma: float | None) -> "SampledPath":
        return replace(self, gamma=gamma)

    @classmethod
    def from_function(cls, fn, a: float, b: float, N: int, gamma: float | None = None):
        t = np.linspace(a, b, N + 1)
        return cls(t, np.asarray(fn(t), dtype=float).reshape(N + 1, -1), gamma)


@dataclass(frozen=True)
class GridMap:
    """Samples of a map from a box of R^m to R^N on a uniform node grid.

    ``values`` has shape ``shape + (N,)`` with nodes including both box ends.
    """

    lo: tuple
    hi: tuple
    values: np.ndarray
    gamma: float | None = None

    def __post_init__(self):
        lo = tuple(float(x) for x in np.atleast_1d(self.lo))
        hi = tuple(float(x) for x in np.atleast_1d(self.hi))
        v = np.asarray(self.values, dtype=float)
        m = len(lo)
        if len(hi) != m or any(h <= l for l, h in zip(lo, hi)):
            raise ValueError("box must satisfy lo < hi on every axis")
        if v.ndim == m:
            v = v[..., None]
        if v.ndim != m + 1 or any(s < 2 for s in v.shape[:m]):
            raise ValueError("values must have shape (nodes per axis..., N) with >= 2 nodes")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite samples")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple:
        return self.values.shape[:self.m]

    @property
    def target_dim(self) -> int:
        return self.values.shape[-1]

    def spacing(self) -> np.ndarray:
        return np.array([(h - l) / (s - 1) for l, h, s in zip(self.lo, self.hi, self.shape)])

    def axes(self) -> list:
        return [np.linspace(l, h, s) for l, h, s in zip(self.lo, self.hi, self.shape)]

    def points(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    @classmethod
    def from_function(cls, fn, lo, hi, shape, gamma: float | None = None) -> "GridMap":
        axes = [np.linspace(l, h, s) for l, h, s in zip(np.atleast_1d(lo), np.atleast_1d(hi), shape)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(tuple(np.atleast_1d(lo)), tuple(np.atleast_1d(hi)), fn(pts), gamma)


# ----------------------------------------------------------------------------
# kernel


def bump(r):
    """exp(-1/(1-r^2)) inside the unit ball, 0 outside (r may be negative)."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = np.abs(r) < 1
    out[inside] = np.exp(-1.0 / (1.0 - r[inside] ** 2))
    return out


def bump_derivative(r):
    """d/dr of :func:`bump`."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    inside = np.abs(r) < 1
    ri = r[inside]
    s = 1.0 - ri ** 2
    out[inside] = np.exp(-1.0 / s) * (-2.0 * ri / s ** 2)
    return out


@lru_cache(maxsize=None)
def _bump_mass(m: int) -> float:
    sphere = 2 * pi ** (m / 2) / gamma_fn(m / 2)
    radial, _ = scipy.integrate.quad(lambda r: float(bump(r)) * r ** (m - 1), 0.0, 1.0,
                                     epsabs=1e-14, epsrel=1e-13)
    return sphere * radial


@dataclass(frozen=True)
class MollifierKernel:
    """Normalized radial bump on the unit ball of R^m.

    ``resolution`` controls the tabulated profile used for reporting
    (e.g. the L^1 norm of the gradient); discrete convolution weights are
    evaluated from the closed form and renormalized on each lattice.
    """

    resolution: int = 1025

    def normalization(self, m: int) -> float:
        return 1.0 / _bump_mass(m)

    def profile(self, m: int = 1) -> tuple[np.ndarray, np.ndarray]:
        r = np.linspace(-1.0, 1.0, self.resolution)
        return r, bump(r) * self.normalization(m)

    def gradient_l1(self, m: int = 1) -> float:
        """‖∇η‖_1 for the unscaled kernel, by quadrature of the radial profile."""
        sphere = 2 * pi ** (m / 2) / gamma_fn(m / 2)
        r = np.linspace(0.0, 1.0, self.resolution)
        vals = np.abs(bump_derivative(r)) * r ** (m - 1)
        return float(sphere * self.normalization(m) * np.trapezoid(vals, r))

    def weights_1d(self, h: float, eps: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Offsets z_j = j h and weights for value and derivative convolution.

        The value weights sum to one; the derivative weights are scaled so
        that -Σ z_j d_j = 1, making the derivative exact on linear data.
        """
        if eps < h * (1 - 1e-12):
            raise PreconditionError(f"eps = {eps:.3g} is smaller than one grid cell h = {h:.3g}")
        K = int(np.floor(eps / h * (1 + 1e-12)))
        z = np.arange(-K, K + 1) * h
        w = bump(z / eps)
        w = w / w.sum()
        d = bump_derivative(z / eps)
        moment = -(z * d).sum()
        if moment <= 0:
            raise PreconditionError("eps too close to h: derivative stencil is empty")
        d = d / moment
        return z, w, d

    def weights_nd(self, spacing, eps: float) -> tuple[list, np.ndarray, np.ndarray]:
        spacing = np.asarray(spacing, dtype=float)
        if np.any(eps < spacing * (1 - 1e-12)):
            raise PreconditionError(f"eps = {eps:.3g} is smaller than one grid cell")
        ks = [int(np.floor(eps / h * (1 + 1e-12))) for h in spacing]
        offs = [np.arange(-K, K + 1) * h for K, h in zip(ks, spacing)]
        Z = np.stack(np.meshgrid(*offs, indexing="ij"), axis=-1)
        r = np.linalg.norm(Z, axis=-1) / eps
        w = bump(r)
        w = w / w.sum()
        dr = bump_derivative(r)
        with np.errstate(invalid="ignore", divide="ignore"):
            unit = np.where(r[..., None] > 0, Z / (r[..., None] * eps), 0.0)
        g = dr[..., None] * unit  # ∇η up to a positive scale
        for i in range(len(spacing)):
            g[..., i] /= -(Z[..., i] * g[..., i]).sum()
        return offs, w, g


DEFAULT_KERNEL = MollifierKernel()


# ----------------------------------------------------------------------------
# mollification


def _pad_1d(values: np.ndarray, K: int, mode: str) -> np.ndarray:
    if mode == "constant":
        return np.pad(values, ((K, K), (0, 0)), mode="edge")
    if mode == "reflect":
        if K >= len(values):
            raise PreconditionError("mollification radius exceeds the path length")
        return np.pad(values, ((K, K), (0, 0)), mode="reflect", reflect_type="odd")
    if mode == "zero":
        return np.pad(values, ((K, K), (0, 0)), mode="constant")
    raise ValueError(f"unknown extension mode {mode!r}")


def _convolve_1d(padded: np.ndarray, w: np.ndarray) -> np.ndarray:
    return scipy.signal.convolve(padded, w[:, None], mode="valid")


def mollify(f, eps: float, kernel: MollifierKernel = DEFAULT_KERNEL, mode="constant"):
    """Discrete convolution f * η_ε.

    Paths are extended outside [a, b] by their end values (``mode="constant"``),
    by odd reflection about the end points (``"reflect"``, which keeps end
    values fixed and linear data exact) or by zero. Grid maps use the nearest
    node value.
    """
    if isinstance(f, GridMap):
        return _mollify_grid(f, eps, kernel, mode)
    h = f.spacing()
    z, w, _ = kernel.weights_1d(h, eps)
    K = (len(z) - 1) // 2
    out = _convolve_1d(_pad_1d(f.values, K, mode), w)
    return SampledPath(f.times, out, f.gamma)


def mollify_derivative(f, eps: float, kernel: MollifierKernel = DEFAULT_KERNEL,
                       mode="constant"):
    """Derivative of the mollification, in subtracted-constant form.

    Computes Σ_j (f(x - z_j) - f(x)) d_j; for grids the result has shape
    ``shape + (N, m)`` holding the Jacobian of f_ε.
    """
    if isinstance(f, GridMap):
        return _mollify_grid_gradient(f, eps, kernel, mode)
    h = f.spacing()
    z, _, d = kernel.weights_1d(h, eps)
    K = (len(z) - 1) // 2
    base = f.values - f.values.mean(axis=0)
    out = _convolve_1d(_pad_1d(base, K, mode), d) - base * d.sum()
    return SampledPath(f.times, out, None)


_GRID_PAD = {"nearest": {"mode": "edge"}, "constant": {"mode": "edge"},
             "wrap": {"mode": "wrap"}, "odd": {"mode": "reflect", "reflect_type": "odd"}}


def _pad_grid(values: np.ndarray, pads: list, mode) -> np.ndarray:
    m = len(pads)
    modes = [mode] * m if isinstance(mode, str) else list(mode)
    if len(modes) != m:
        raise ValueError("need one boundary mode per axis")
    out = values
    for ax, (K, md) in enumerate(zip(pads, modes)):
        if md not in _GRID_PAD:
            raise ValueError(f"unknown grid boundary mode {md!r}")
        if md != "nearest" and md != "constant" and K >= values.shape[ax]:
            raise PreconditionError("mollification radius exceeds the grid")
        width = [(0, 0)] * out.ndim
        width[ax] = (K, K)
        out = np.pad(out, width, **_GRID_PAD[md])
    return out


def _mollify_grid(f: GridMap, eps: float, kernel: MollifierKernel, mode) -> GridMap:
    offs, w, _ = kernel.weights_nd(f.spacing(), eps)
    pads = [(len(o) - 1) // 2 for o in offs]
    padded = _pad_grid(f.values, pads, mode)
    out = scipy.signal.fftconvolve(padded, w[..., None], mode="valid", axes=tuple(range(f.m)))
    return GridMap(f.lo, f.hi, out, f.gamma)


def _mollify_grid_gradient(f: GridMap, eps: float, kernel: MollifierKernel, mode) -> np.ndarray:
    offs, _, g = kernel.weights_nd(f.spacing(), eps)
    pads = [(len(o) - 1) // 2 for o in offs]
    base = f.values - f.values.reshape(-1, f.target_dim).mean(axis=0)
    padded = _pad_grid(base, pads, mode)
    axes = tuple(range(f.m))
    cols = []
    for i in range(f.m):
        gi = g[..., i]
        conv = scipy.signal.fftconvolve(padded, gi[..., None], mode="valid", axes=axes)
        cols.append(conv - base * gi.sum())
    return np.stack(cols, axis=-1)


# ----------------------------------------------------------------------------
# seminorms


def _target_distance(metric):
    if metric == "euclid":
        return lambda a, b: np.linalg.norm(a - b, axis=-1)
    if metric == "koranyi":
        return koranyi_arrays
    if callable(metric):
        return metric
    raise ValueError(f"unknown metric {metric!r}")


def holder_seminorm(f, gamma: float, scale_eps: float = np.inf, metric="euclid") -> float:
    """sup d(f(x), f(y)) / |x - y|^γ over sample pairs with 0 < |x - y| < scale_eps.

    Paths are scanned exhaustively lag by lag; grid maps scan all lattice
    offsets shorter than ``scale_eps``. Sampled values are a lower bound for
    the true seminorm.
    """
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    dist = _target_distance(metric)
    if isinstance(f, GridMap):
        return _grid_seminorm(f, gamma, scale_eps, dist)
    t, v = f.times, f.values
    best, found = 0.0, False
    for lag in range(1, len(t)):
        dt = t[lag:] - t[:-lag]
        ok = dt < scale_eps
        if not ok.any():
            break
        found = True
        q = dist(v[lag:][ok], v[:-lag][ok]) / dt[ok] ** gamma
        best = max(best, float(q.max()))
    if not found:
        raise PreconditionError("scale_eps is below the minimal sample spacing")
    return best


def _grid_seminorm(f: GridMap, gamma, scale_eps, dist) -> float:
    h = f.spacing()
    if not np.isfinite(scale_eps):
        if np.prod(f.shape) > 4096:
            raise PreconditionError("unrestricted grid seminorm is quadratic; pass scale_eps")
        scale_eps = np.inf
        reach = [s - 1 for s in f.shape]
    else:
        reach = [min(s - 1, int(np.ceil(scale_eps / hi))) for s, hi in zip(f.shape, h)]
    ranges = [np.arange(-r, r + 1) for r in reach]
    offsets = np.stack(np.meshgrid(*ranges, indexing="ij"), -1).reshape(-1, f.m)
    best, found = 0.0, False
    V = f.values
    for off in offsets:
        # each unordered pair once: first nonzero entry positive
        nz = np.flatnonzero(off)
        if len(nz) == 0 or off[nz[0]] < 0:
            continue
        length = float(np.linalg.norm(off * h))
        if length >= scale_eps:
            continue
        found = True
        src = tuple(slice(max(0, -o), s - max(0, o)) for o, s in zip(off, f.shape))
        dst = tuple(slice(max(0, o), s - max(0, -o)) for o, s in zip(off, f.shape))
        q = dist(V[dst], V[src]).max() / length ** gamma
        best = max(best, float(q))
    if not found:
        raise PreconditionError("scale_eps is below the minimal sample spacing")
    return best


def estimate_holder_exponent(f: SampledPath, levels: int = 6) -> float:
    """Exponent fitted from the dyadic oscillation profile max|f(t+2^j h) - f(t)|."""
    v = f.values
    lags, osc = [], []
    lag = 1
    while lag < len(v) and len(lags) < levels:
        lags.append(lag)
        osc.append(np.linalg.norm(v[lag:] - v[:-lag], axis=-1).max())
        lag *= 2
    osc = np.asarray(osc)
    if np.all(osc == 0):
        return 1.0
    slope = np.polyfit(np.log(lags), np.log(np.maximum(osc, 1e-300)), 1)[0]
    return float(np.clip(slope, 1e-3, 1.0))


# ----------------------------------------------------------------------------
# concave modulus


@dataclass(frozen=True)
class ConcaveModulus:
    """Piecewise linear concave function through ``knots`` (t, ω), constant after the last."""

    knots_t: np.ndarray
    knots_w: np.ndarray

    def __call__(self, t):
        return np.interp(t, self.knots_t, self.knots_w)


def concave_modulus(t, w) -> ConcaveModulus:
    """Least concave majorant of nondecreasing samples via the upper convex hull.

    The hull is anchored at (0, 0).
    """
    t = np.asarray(t, dtype=float)
    w = np.asarray(w, dtype=float)
    if t.shape != w.shape or t.ndim != 1:
        raise ValueError("t and w must be matching 1-D arrays")
    if np.any(np.diff(t) <= 0) or t[0] < 0:
        raise ValueError("t must be nonnegative and strictly increasing")
    if np.any(np.diff(w) < 0):
        raise ValueError("modulus samples must be nondecreasing")
    keep = t > 0
    pts = [(0.0, 0.0)] + list(zip(t[keep], w[keep]))
    hull: list = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    ht, hw = np.array(hull).T
    return ConcaveModulus(ht, hw)


# ----------------------------------------------------------------------------
# Gagliardo extension


def smoothstep_cutoff(s):
    """1 on [0, 1/2], 0 on [3/4, ∞), quintic smoothstep in between (C^2)."""
    s = np.asarray(s, dtype=float)
    u = np.clip((s - 0.5) / 0.25, 0.0, 1.0)
    return 1.0 - u ** 3 * (10 - 15 * u + 6 * u ** 2)


def smoothstep_cutoff_derivative(s):
    s = np.asarray(s, dtype=float)
    u = np.clip((s - 0.5) / 0.25, 0.0, 1.0)
    return -30 * u ** 2 * (1 - u) ** 2 / 0.25


@dataclass(frozen=True)
class GagliardoExtension:
    x: np.ndarray
    t: np.ndarray
    values: np.ndarray          # (len(t), len(x))
    grad_x: np.ndarray | None = field(default=None, repr=False)
    grad_t: np.ndarray | None = field(default=None, repr=False)

    def as_gridmap(self) -> GridMap:
        return GridMap((self.t[0], self.x[0]), (self.t[-1], self.x[-1]), self.values)


def gagliardo_extend(f: SampledPath, R_cut: float, kernel: MollifierKernel = DEFAULT_KERNEL,
                     n_levels: int = 64, t_min: float | None = None,
                     with_gradient: bool = False) -> GagliardoExtension:
    """ext f(x, t) = ψ(t/R)(f * η_t)(x) on a uniform t grid in [t_min, R].

    f is extended by zero outside its sampled interval. The t-derivative of
    the mollification uses ∂_t η_t(z) = -t^{-2}[η(u) + u η'(u)], u = z/t.
    """
    if f.dim != 1:
        raise ValueError("Gagliardo extension is implemented for scalar paths")
    h = f.spacing()
    v = f.values[:, 0]
    if abs(v[0]) > 1e-12 or abs(v[-1]) > 1e-12:
        warnings.warn("path does not vanish at its ends; zero padding introduces a jump",
                      stacklevel=2)
    t_min = h if t_min is None else t_min
    if t_min < h:
        raise PreconditionError("t_min must be at least one grid cell")
    ts = np.linspace(t_min, R_cut, n_levels)
    K = int(np.floor(R_cut / h)) + 1
    padded = np.pad(v, K)
    vals = np.empty((n_levels, len(v)))
    gx = np.empty_like(vals) if with_gradient else None
    gt = np.empty_like(vals) if with_gradient else None
    psi = smoothstep_cutoff(ts / R_cut)
    dpsi = smoothstep_cutoff_derivative(ts / R_cut) / R_cut
    for i, t in enumerate(ts):
        z, w, d = kernel.weights_1d(h, t)
        k = (len(z) - 1) // 2
        seg = padded[K - k:len(padded) - K + k]
        mol = scipy.signal.convolve(seg, w, mode="valid")
        vals[i] = psi[i] * mol
        if with_gradient:
            # exact t-derivative of the renormalized weights η(z/t)/Σ η(z/t)
            u = z / t
            q = u * bump_derivative(u) / (bump(u).sum() * t)
            dw = -q + w * q.sum()
            gx[i] = psi[i] * scipy.signal.convolve(seg, d, mode="valid")
            gt[i] = psi[i] * scipy.signal.convolve(seg, dw, mode="valid") + dpsi[i] * mol
    return GagliardoExtension(f.times, ts, vals, gx, gt)


# ----------------------------------------------------------------------------
# test data


def weierstrass_path(gamma: float, a_base: int = 2, terms: int = 12, N: int = 4096,
                     d: int = 1, seed: int = 0) -> SampledPath:
    """Σ_{k<terms} a^{-kγ} cos(2π a^k x + φ_k) per component on [0, 1], random phases.

    N intervals (N+1 samples); the path is 1-periodic, so first and last
    samples coincide up to rounding.
    """
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if a_base < 2:
        raise ValueError("base must be an integer >= 2")
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2 * pi, size=(d, terms))
    x = np.linspace(0.0, 1.0, N + 1)
    k = np.arange(terms)
    amp = float(a_base) ** (-k * gamma)
    freq = 2 * pi * float(a_base) ** k
    vals = np.empty((N + 1, d))
    for c in range(d):
        vals[:, c] = (amp * np.cos(np.outer(x, freq) + phases[c])).sum(axis=1)
    return SampledPath(x, vals, gamma)


def weierstrass_field(points: np.ndarray, gamma: float, a_base: int = 2, terms: int = 10,
                      components: int = 1, seed: int = 0) -> np.ndarray:
    """Planar Weierstrass-type field Σ a^{-kγ} cos(2π a^k ⟨θ_k, p⟩ + φ_k).

    ``points`` has shape (..., 2); the output has shape (..., components).
    Each term uses a random unit direction θ_k.
    """
    rng = np.random.default_rng(seed)
    out = np.zeros(points.shape[:-1] + (components,))
    for c in range(components):
        ang = rng.uniform(0.0, 2 * pi, terms)
        ph = rng.uniform(0.0, 2 * pi, terms)
        for k in range(terms):
            proj = points[..., 0] * np.cos(ang[k]) + points[..., 1] * np.sin(ang[k])
            out[..., c] += a_base ** (-k * gamma) * np.cos(2 * pi * a_base ** k * proj + ph[k])
    return out
