"""Winding numbers, oriented areas and planar change-of-variables identities.

The winding field is computed two ways on the same cell grid: an exact
integer count at cell centers (horizontal crossing rule) and the exact cell
integral of the winding number of the polyline (signed-area coverage).
Integrals use the coverage, pointwise norms use the center values, and the
signed-angle routine :func:`winding_number` serves single queries and spot
checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.ndimage
import scipy.signal

from . import _raster
from .errors import OnCurveError, PreconditionError, YoungConditionError
from .holder import DEFAULT_KERNEL, GridMap, MollifierKernel, SampledPath, mollify, mollify_derivative
from .young import extrapolate, young_mollified, young_rs

CLOSURE_RTOL = 1e-9


# ----------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class ClosedCurve2D:
    """A closed planar polyline sampled along a parameter interval."""

    path: SampledPath

    def __post_init__(self):
        if self.path.dim != 2:
            raise ValueError("closed curves live in R^2")
        v = self.path.values
        diam = max(np.ptp(v[:, 0]), np.ptp(v[:, 1]), 1e-300)
        if np.linalg.norm(v[0] - v[-1]) > CLOSURE_RTOL * diam:
            raise PreconditionError("curve is not closed within tolerance")

    @property
    def points(self) -> np.ndarray:
        return self.path.values

    @property
    def gamma(self) -> float | None:
        return self.path.gamma

    @classmethod
    def from_points(cls, pts, gamma: float | None = None, close: bool = False) -> "ClosedCurve2D":
        pts = np.asarray(pts, dtype=float)
        if close and np.any(pts[0] != pts[-1]):
            pts = np.vstack([pts, pts[:1]])
        t = np.linspace(0.0, 1.0, len(pts))
        return cls(SampledPath(t, pts, gamma))

    def reversed(self) -> "ClosedCurve2D":
        return ClosedCurve2D(SampledPath(self.path.times, self.points[::-1], self.gamma))


def circle(N: int, radius: float = 1.0, center=(0.0, 0.0), loops: int = 1,
           ccw: bool = True) -> ClosedCurve2D:
    s = np.linspace(0.0, 1.0, N + 1)
    ang = 2 * np.pi * loops * s * (1 if ccw else -1)
    pts = np.stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)], -1)
    pts[-1] = pts[0]
    return ClosedCurve2D(SampledPath(s, pts, 1.0))


def segment_distance(pts: np.ndarray, z) -> float:
    """Euclidean distance from z to a polyline."""
    a, b = pts[:-1] - z, pts[1:] - z
    d = b - a
    L2 = (d * d).sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(L2 > 0, np.clip(-(a * d).sum(axis=1) / L2, 0.0, 1.0), 0.0)
    q = a + s[:, None] * d
    return float(np.sqrt((q * q).sum(axis=1)).min())


def winding_number(curve: ClosedCurve2D, z, guard: float | None = None) -> int:
    """Total signed angle of the polyline around z divided by 2π.

    Raises :class:`OnCurveError` if z lies within ``guard`` of the polyline
    (default 1e-12 times the curve diameter).
    """
    pts = curve.points
    z = np.asarray(z, dtype=float)
    if guard is None:
        guard = 1e-12 * max(np.ptp(pts[:, 0]), np.ptp(pts[:, 1]), 1.0)
    if segment_distance(pts, z) <= guard:
        raise OnCurveError(f"point {z.tolist()} lies within the guard band of the curve")
    a, b = pts[:-1] - z, pts[1:] - z
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = (a * b).sum(axis=1)
    total = np.arctan2(cross, dot).sum() / (2 * np.pi)
    w = int(np.rint(total))
    if abs(total - w) > 1e-6:
        raise OnCurveError(f"angle sum {total:.9f} is not close to an integer")
    return w


# ----------------------------------------------------------------------------
# winding field


@dataclass(frozen=True)
class WindingField:
    """Winding number of a closed polyline on a uniform cell grid.

    ``w`` holds integer center values, ``coverage`` the cell means of the
    winding number, ``mask`` the cells within one cell of the polyline.
    Arrays are indexed ``[i, j]`` with i along x.
    """

    x0: float
    y0: float
    hx: float
    hy: float
    w: np.ndarray
    coverage: np.ndarray
    mask: np.ndarray = field(repr=False)

    @property
    def cell_area(self) -> float:
        return self.hx * self.hy

    @property
    def shape(self) -> tuple:
        return self.w.shape

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        nx, ny = self.w.shape
        return self.x0 + (np.arange(nx) + 0.5) * self.hx, self.y0 + (np.arange(ny) + 0.5) * self.hy

    def integral(self, weight=None) -> float:
        """∫ v w dz using exact cell means; ``weight`` is an array of cell values or None."""
        c = self.coverage if weight is None else self.coverage * weight
        return float(c.sum() * self.cell_area)

    def center_integral(self) -> float:
        return float(self.w.sum() * self.cell_area)

    def mask_area(self) -> float:
        return float(self.mask.sum() * self.cell_area)

    def lp_norm(self, p: float) -> float:
        return float(((np.abs(self.w) ** p).sum() * self.cell_area) ** (1.0 / p))


def _bounding_box(pts: np.ndarray, resolution: int):
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    # two cells of margin so the field vanishes on the outer ring
    h = span / (resolution - 4)
    return lo - 2 * h, h


def winding_field(curve: ClosedCurve2D, resolution: int = 512, box=None) -> WindingField:
    """Winding field on a ``resolution`` × ``resolution`` cell grid.

    ``box = (xlo, xhi, ylo, yhi)`` fixes the grid; by default it is the
    curve's bounding box with a two-cell margin.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16 cells per axis")
    pts = np.ascontiguousarray(curve.points)
    if box is None:
        (x0, y0), (hx, hy) = _bounding_box(pts, resolution)
    else:
        x0, y0 = box[0], box[2]
        hx, hy = (box[1] - box[0]) / resolution, (box[3] - box[2]) / resolution
        inside = ((pts[:, 0] > box[0]) & (pts[:, 0] < box[1])
                  & (pts[:, 1] > box[2]) & (pts[:, 1] < box[3]))
        if not inside.all():
            raise PreconditionError("curve leaves the requested box")
    xs, ys = pts[:, 0].copy(), pts[:, 1].copy()
    w = _raster.center_winding(xs, ys, x0, y0, hx, hy, resolution, resolution)
    cov, touched = _raster.coverage_winding(xs, ys, x0, y0, hx, hy, resolution, resolution)
    mask = scipy.ndimage.binary_dilation(touched, structure=np.ones((3, 3), bool))
    return WindingField(float(x0), float(y0), float(hx), float(hy), w, cov / (hx * hy), mask)


def winding_lp_norm(curve: ClosedCurve2D, p: float, resolution: int = 1024,
                    gamma: float | None = None) -> float:
    """(Σ |w|^p · cell area)^{1/p} over the winding field (center values)."""
    gamma = curve.gamma if gamma is None else gamma
    if p < 1 or (gamma is not None and gamma < 1 and p >= 2 * gamma):
        warnings.warn(f"p = {p} outside the range 1 <= p < 2γ", stacklevel=2)
    return winding_field(curve, resolution).lp_norm(p)


# ----------------------------------------------------------------------------
# Green's formula


@dataclass(frozen=True)
class GreenResult:
    value: float
    error_estimate: float
    by_method: dict


def _component_paths(path: SampledPath, gamma):
    x = SampledPath(path.times, path.values[:, 0], gamma)
    y = SampledPath(path.times, path.values[:, 1], gamma)
    return x, y


def oriented_area_green(curve: ClosedCurve2D, alpha: float | None = None, method: str = "rs",
                        **young_kw) -> GreenResult:
    """½ ∫ x dy - y dx along the curve, as a Young integral.

    ``method`` is ``"rs"``, ``"mollified"`` or ``"both"`` (value from rs,
    both reported).
    """
    alpha = curve.gamma if alpha is None else alpha
    if alpha is None:
        raise PreconditionError("declare the Hölder exponent of the curve")
    if alpha <= 0.5:
        raise YoungConditionError(alpha, alpha)
    x, y = _component_paths(curve.path, alpha)
    methods = ["rs", "mollified"] if method == "both" else [method]
    out = {}
    for m in methods:
        fn = young_rs if m == "rs" else young_mollified
        a, b = fn(x, y, **young_kw), fn(y, x, **young_kw)
        out[m] = (0.5 * (a.value - b.value), 0.5 * (a.error_estimate + b.error_estimate))
    first = out[methods[0]]
    return GreenResult(first[0], first[1], out)


def shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float((x[:-1] * y[1:] - x[1:] * y[:-1]).sum())


def close_curve(path: SampledPath) -> ClosedCurve2D:
    """Join the origin to the start and the end of a planar path by straight segments.

    The completed curve runs over [a - 1, b + 1]. When the path is uniformly
    sampled, the segments reuse its spacing so the result stays uniform.
    Radial segments add nothing to x dy - y dx.
    """
    if path.dim != 2:
        raise ValueError("close_curve expects a planar path")
    a, b = path.interval
    if path.is_uniform():
        h = path.spacing()
        m = max(1, int(round(1.0 / h)))
    else:
        m = max(1, path.n_intervals)
    s = np.linspace(0.0, 1.0, m + 1)
    head = np.outer(s, path.values[0])
    tail = np.outer(1 - s, path.values[-1])
    t = np.concatenate([a - 1 + s[:-1], path.times, b + s[1:]])
    pts = np.vstack([head[:-1], path.values, tail[1:]])
    if path.is_uniform():
        t = np.linspace(a - 1, b + 1, len(pts))
    return ClosedCurve2D(SampledPath(t, pts, path.gamma))


# ----------------------------------------------------------------------------
# Riemann-sum Jacobian on the unit square


@dataclass(frozen=True)
class JacobianResult:
    value: float
    error_estimate: float
    levels: list


def _edge_integrals(g1: np.ndarray, g2: np.ndarray):
    """Trapezoid ∫ g1 dg2 along every fine grid edge in x and y."""
    H = 0.5 * (g1[:-1, :] + g1[1:, :]) * (g2[1:, :] - g2[:-1, :])
    V = 0.5 * (g1[:, :-1] + g1[:, 1:]) * (g2[:, 1:] - g2[:, :-1])
    return H, V


def _scalar_grid(a) -> np.ndarray:
    if isinstance(a, GridMap):
        a = a.values[..., 0]
    return np.asarray(a, dtype=float)


def square_loop_integrals(g1: np.ndarray, g2: np.ndarray, k: int) -> np.ndarray:
    """∮ g1 dg2 over the boundary of each of the k×k subsquares (ccw)."""
    n = g1.shape[0] - 1
    if n % k:
        raise ValueError(f"{k} subsquares do not tile {n} cells")
    s = n // k
    H, V = _edge_integrals(g1, g2)
    # H: (n, n+1); sum blocks of s consecutive x-edges on every grid line
    Hs = H.reshape(k, s, n + 1).sum(axis=1)[:, ::s]        # (k, k+1)
    Vs = V.reshape(n + 1, k, s).sum(axis=2)[::s, :]        # (k+1, k)
    return Hs[:, :-1] + Vs[1:, :] - Hs[:, 1:] - Vs[:-1, :]


def zust_jacobian_square(f, g1, g2, k_levels=None, alpha: float | None = None,
                         beta: float | None = None) -> JacobianResult:
    """Σ_i f(p_i) ∮_{∂Q_i} g1 dg2 over dyadic tilings of [0,1]^2.

    Inputs are node samples on a common (n+1)×(n+1) grid of the unit square
    with n a power of two. f is evaluated at subsquare centers (averaging
    the four nearest nodes on the finest level).
    """
    F, G1, G2 = _scalar_grid(f), _scalar_grid(g1), _scalar_grid(g2)
    if not (F.shape == G1.shape == G2.shape) or F.shape[0] != F.shape[1]:
        raise ValueError("f, g1, g2 must share a square node grid")
    n = F.shape[0] - 1
    if n & (n - 1):
        raise ValueError("grid must have 2^m cells per side")
    if alpha is not None and beta is not None and (alpha + 2 * beta <= 2 or 2 * beta <= 1):
        raise YoungConditionError(beta, beta)
    if k_levels is None:
        k_levels = [2 ** j for j in range(int(np.log2(n)) + 1)]
    levels = []
    for k in k_levels:
        s = n // k
        loops = square_loop_integrals(G1, G2, k)
        if s % 2 == 0:
            fc = F[s // 2::s, s // 2::s][:k, :k]
        else:
            c = s // 2
            fc = 0.25 * (F[c:-1:s, c:-1:s][:k, :k] + F[c + 1::s, c:-1:s][:k, :k]
                         + F[c:-1:s, c + 1::s][:k, :k] + F[c + 1::s, c + 1::s][:k, :k])
        levels.append({"k": int(k), "value": float((fc * loops).sum())})
    value = levels[-1]["value"]
    err = abs(value - levels[-2]["value"]) if len(levels) > 1 else 0.0
    return JacobianResult(value, float(err), levels)


def mollified_jacobian(f, g1, g2, eps: float, kernel: MollifierKernel = DEFAULT_KERNEL) -> float:
    """∫ f det D(g1_ε, g2_ε) over [0,1]^2 by the trapezoid rule (cross-check route)."""
    F, G1, G2 = _scalar_grid(f), _scalar_grid(g1), _scalar_grid(g2)
    n = F.shape[0] - 1
    gm = GridMap((0.0, 0.0), (1.0, 1.0), np.stack([G1, G2], -1))
    D = mollify_derivative(gm, eps, kernel)
    det = D[..., 0, 0] * D[..., 1, 1] - D[..., 0, 1] * D[..., 1, 0]
    x = np.linspace(0, 1, n + 1)
    return float(np.trapezoid(np.trapezoid(F * det, x, axis=1), x))


# ----------------------------------------------------------------------------
# change of variables on the disk


def polar_grid(n_r: int, n_theta: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes of the polar parameter grid: r in [0, 1], s in [0, 1) (angle 2πs)."""
    return np.linspace(0.0, 1.0, n_r), np.arange(n_theta) / n_theta


def polar_gridmap(fn, n_r: int, n_theta: int, gamma: float | None = None) -> GridMap:
    """Sample ``fn(x, y) -> (..., 2)`` on the unit disk through the polar parametrization."""
    r, s = polar_grid(n_r, n_theta)
    R, S = np.meshgrid(r, s, indexing="ij")
    X, Y = R * np.cos(2 * np.pi * S), R * np.sin(2 * np.pi * S)
    return GridMap((0.0, 0.0), (1.0, s[-1]), fn(X, Y), gamma)


@dataclass(frozen=True)
class ChangeOfVariables:
    lhs: float
    rhs: float
    gap: float
    diagnostics: dict = field(default_factory=dict, repr=False)


POLAR_MODES = ("odd", "wrap")


def polar_jacobian(values: np.ndarray, h_r: float) -> np.ndarray:
    """det D_{(r,s)} of samples on the polar parameter grid.

    The angular derivative is spectral (the grid is periodic in s); the
    radial one is fourth order central, with odd reflection at both ends.
    """
    n_s = values.shape[1]
    k = 2j * np.pi * np.fft.fftfreq(n_s, d=1.0 / n_s)
    if n_s % 2 == 0:
        k[n_s // 2] = 0.0
    ds = np.fft.ifft(k[None, :, None] * np.fft.fft(values, axis=1), axis=1).real
    p = np.pad(values, ((2, 2), (0, 0), (0, 0)), mode="reflect", reflect_type="odd")
    dr = (p[:-4] - 8 * p[1:-3] + 8 * p[3:-1] - p[4:]) / (12 * h_r)
    return dr[..., 0] * ds[..., 1] - dr[..., 1] * ds[..., 0]


def boundary_curve(f: GridMap, upsample: int = 32) -> ClosedCurve2D:
    """The restriction f(1, ·) as a closed polyline, refined by periodic band-limited interpolation."""
    edge = f.values[-1]                       # (n_theta, 2)
    n = len(edge)
    fine = scipy.signal.resample(edge, n * upsample, axis=0) if upsample > 1 else edge
    pts = np.vstack([fine, fine[:1]])
    return ClosedCurve2D(SampledPath(np.linspace(0.0, 1.0, len(pts)), pts, f.gamma))


def change_of_variables_check(f: GridMap, v=None, eps_sequence=None, resolution: int = 1024,
                              kernel: MollifierKernel = DEFAULT_KERNEL,
                              boundary_upsample: int = 32) -> ChangeOfVariables:
    """Compare lim_ε ∫_{B²} v(f_ε) det Df_ε with ∫ v(y) w(f|∂B², y) dy.

    ``f`` is sampled on the polar parameter grid of :func:`polar_gridmap`
    (periodic in angle, odd reflection at r = 0 and r = 1). The Jacobian of
    each smooth f_ε is taken by :func:`polar_jacobian`. ``v`` maps
    arrays of points (..., 2) to values; None means v ≡ 1.
    """
    if f.m != 2 or f.target_dim != 2:
        raise ValueError("expected a planar map on the polar parameter grid")
    gamma = f.gamma
    if gamma is not None and gamma <= 0.5:
        raise YoungConditionError(gamma, gamma)
    vfun = (lambda p: np.ones(p.shape[:-1])) if v is None else v
    h = f.spacing().max()
    eps = h * np.array([16.0, 8.0, 4.0, 2.0]) if eps_sequence is None else np.asarray(eps_sequence)
    if np.any(np.diff(eps) >= 0):
        raise PreconditionError("eps sequence must be strictly decreasing")
    r, s = f.axes()
    vals = []
    for e in eps:
        fe = mollify(f, e, kernel, mode=POLAR_MODES).values
        det = polar_jacobian(fe, f.spacing()[0])
        integrand = vfun(fe) * det
        vals.append(float(np.trapezoid(integrand.sum(axis=1) / len(s), r)))
    vals = np.asarray(vals)
    floor = 2 * gamma - 1 if gamma is not None else 0.5
    lhs, rate = extrapolate(eps, vals, floor) if len(vals) > 1 else (vals[0], floor)
    curve = boundary_curve(f, boundary_upsample)
    field_ = winding_field(curve, resolution)
    xc, yc = field_.centers()
    P = np.stack(np.meshgrid(xc, yc, indexing="ij"), -1)
    rhs = field_.integral(vfun(P))
    if v is None:
        rhs = field_.integral()
    gap = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    return ChangeOfVariables(float(lhs), float(rhs), float(gap),
                             {"eps": eps.tolist(), "values": vals.tolist(), "rate": rate,
                              "mask_area": field_.mask_area()})
