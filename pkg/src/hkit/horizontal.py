"""Horizontal curves and maps into H^n.

Heights are forced by the planar part through
    t(s) - t(a) = -2 Σ_j ∫_a^s x_j dy_j - y_j dx_j,
evaluated as Young integrals. On sampled data the trapezoid Stieltjes sum of
one step reduces to the shoelace term x_i y_{i+1} - x_{i+1} y_i, so the
piecewise linear lift is horizontal up to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import PreconditionError, YoungConditionError
from .exterior import Covector
from .holder import DEFAULT_KERNEL, GridMap, MollifierKernel, SampledPath, holder_seminorm, mollify, mollify_derivative
from .planar import close_curve, winding_field
from .young import young_mollified

MIN_EPS_SPAN = 64.0

DECAY_LIMITATION = (
    "Finite data cannot separate convergence to zero without a rate from slow "
    "blow-up; the fitted slope is evidence over the sampled eps range only."
)


# ----------------------------------------------------------------------------
# paths


def split_hpath(path: SampledPath) -> tuple[np.ndarray, np.ndarray]:
    """Planar part (N+1, 2n) and height (N+1,) of a sampled curve in H^n."""
    d = path.dim
    if d < 3 or d % 2 == 0:
        raise ValueError("an H^n path has 2n+1 components")
    return path.values[:, :-1], path.values[:, -1]


def _require_exponent(gamma):
    if gamma is not None and gamma <= 0.5:
        raise YoungConditionError(gamma, gamma)


def step_areas(planar: np.ndarray) -> np.ndarray:
    """Per-step Σ_j (x_j,i y_j,i+1 - x_j,i+1 y_j,i) for planar samples (N+1, 2n)."""
    x, y = planar[:, 0::2], planar[:, 1::2]
    return (x[:-1] * y[1:] - x[1:] * y[:-1]).sum(axis=1)


def cumulative_height(planar: np.ndarray, richardson: bool = False) -> np.ndarray:
    """-2 Σ_j ∫_{t_0}^{t_i} x_j dy_j - y_j dx_j at every sample.

    With ``richardson`` the prefix sums at even samples are combined with the
    stride-2 sums as (4 F_h - F_2h)/3, and odd samples add one fine step to
    the preceding even value.
    """
    fine = np.concatenate([[0.0], np.cumsum(step_areas(planar))])
    if richardson and len(planar) > 2:
        coarse = np.concatenate([[0.0], np.cumsum(step_areas(planar[::2]))])
        out = fine.copy()
        even = np.arange(0, len(planar), 2)
        out[even] = (4 * fine[even] - coarse) / 3
        odd = even[:-1] + 1 if len(planar) % 2 else even + 1
        odd = odd[odd < len(planar)]
        out[odd] = out[odd - 1] + (fine[odd] - fine[odd - 1])
        fine = out
    return -2.0 * fine


@dataclass(frozen=True)
class HeightChange:
    value: float
    error_estimate: float


def height_change(path: SampledPath, a: float | None = None, b: float | None = None,
                  alpha: float | None = None, method: str = "rs") -> HeightChange:
    """-2 Σ_j ∫_a^b γ^{x_j} dγ^{y_j} - γ^{y_j} dγ^{x_j} by Young integration.

    ``path`` may be an H^n path (2n+1 components) or its planar part (2n
    components). ``a`` and ``b`` must be sample times.
    """
    alpha = path.gamma if alpha is None else alpha
    _require_exponent(alpha)
    vals = path.values if path.dim % 2 == 0 else path.values[:, :-1]
    t = path.times
    i0 = 0 if a is None else int(np.searchsorted(t, a))
    i1 = len(t) - 1 if b is None else int(np.searchsorted(t, b))
    if i0 >= len(t) or i1 >= len(t) or t[i0] != (t[0] if a is None else a) or \
            t[i1] != (t[-1] if b is None else b):
        raise ValueError("a and b must be sample times")
    if i1 == i0:
        return HeightChange(0.0, 0.0)
    sl = slice(i0, i1 + 1)
    if method == "rs":
        val = -2.0 * step_areas(vals[sl]).sum()
        # Cauchy increment against the stride-2 partition
        coarse_idx = np.arange(i0, i1 + 1, 2)
        if coarse_idx[-1] != i1:
            coarse_idx = np.append(coarse_idx, i1)
        coarse = -2.0 * step_areas(vals[coarse_idx]).sum()
        return HeightChange(float(val), float(abs(val - coarse)))
    total, err = 0.0, 0.0
    sub_t = t[sl]
    kw = {"alpha": alpha or 1.0, "beta": alpha or 1.0}
    for j in range(vals.shape[1] // 2):
        x = SampledPath(sub_t, vals[sl, 2 * j], alpha)
        y = SampledPath(sub_t, vals[sl, 2 * j + 1], alpha)
        r1, r2 = young_mollified(x, y, **kw), young_mollified(y, x, **kw)
        total += -2.0 * (r1.value - r2.value)
        err += 2.0 * (r1.error_estimate + r2.error_estimate)
    return HeightChange(float(total), float(err))


def horizontality_residual(path: SampledPath, richardson: bool = False) -> float:
    """max_s |γ^t(s) - γ^t(a) - height_change(a, s)| over the samples."""
    _require_exponent(path.gamma)
    planar, height = split_hpath(path)
    forced = cumulative_height(planar, richardson)
    return float(np.abs(height - height[0] - forced).max())


def horizontal_lift_curve(planar: SampledPath, t0: float = 0.0) -> SampledPath:
    """The horizontal curve over ``planar`` starting at height t0."""
    if planar.dim % 2:
        raise ValueError("planar part must have an even number of components")
    _require_exponent(planar.gamma)
    t = t0 + cumulative_height(planar.values)
    return SampledPath(planar.times, np.column_stack([planar.values, t]), planar.gamma)


def enclosed_area_sum(planar: SampledPath, resolution: int = 1024) -> float:
    """Σ_j ∫ w(γ̄_j, z) dz with γ̄_j the origin-completed projection on the j-th plane."""
    total = 0.0
    vals = planar.values if planar.dim % 2 == 0 else planar.values[:, :-1]
    for j in range(vals.shape[1] // 2):
        proj = SampledPath(planar.times, vals[:, 2 * j:2 * j + 2], planar.gamma)
        closed = close_curve(proj)
        pts = closed.points
        if np.ptp(pts[:, 0]) == 0 or np.ptp(pts[:, 1]) == 0:
            continue
        total += winding_field(closed, resolution).integral()
    return total


def koranyi_holder_ratio(lift: SampledPath, alpha: float) -> float:
    """[lift]_α in the Korányi metric divided by [planar part]_α."""
    planar = SampledPath(lift.times, lift.values[:, :-1])
    top = holder_seminorm(lift, alpha, metric="koranyi")
    base = holder_seminorm(planar, alpha)
    return top / base if base > 0 else 0.0


# ----------------------------------------------------------------------------
# lifting maps on grids


def _edge_increments(f: np.ndarray):
    """Height increments -2 Σ_j (x_j(p) y_j(q) - x_j(q) y_j(p)) on x- and y-edges."""
    x, y = f[..., 0::2], f[..., 1::2]
    H = -2.0 * (x[:-1, :] * y[1:, :] - x[1:, :] * y[:-1, :]).sum(axis=-1)
    V = -2.0 * (x[:, :-1] * y[:, 1:] - x[:, 1:] * y[:, :-1]).sum(axis=-1)
    return H, V


def plaquette_sums(f: np.ndarray) -> np.ndarray:
    """Height gained around every grid cell (ccw); equals -4 × the enclosed area sum."""
    H, V = _edge_increments(f)
    return H[:, :-1] + V[1:, :] - H[:, 1:] - V[:-1, :]


def tree_heights(f: np.ndarray, t0: float, row_first: bool) -> np.ndarray:
    """Integrate edge increments along a comb spanning tree rooted at node (0, 0)."""
    H, V = _edge_increments(f)
    nx, ny = f.shape[:2]
    tau = np.empty((nx, ny))
    if row_first:
        # spine along the first y-line, teeth along x
        spine = np.concatenate([[0.0], np.cumsum(V[0, :])])
        tau[:] = spine[None, :] + np.vstack([np.zeros((1, ny)), np.cumsum(H, axis=0)])
    else:
        spine = np.concatenate([[0.0], np.cumsum(H[:, 0])])
        tau[:] = spine[:, None] + np.hstack([np.zeros((nx, 1)), np.cumsum(V, axis=1)])
    return t0 + tau


@dataclass(frozen=True)
class Obstruction:
    """The worst loop whose area sum does not vanish."""

    kind: str                 # "plaquette" or "probe"
    where: tuple
    area_sum: float
    tolerance: float


@dataclass(frozen=True)
class LiftResult:
    lift: GridMap | None
    obstruction: Obstruction | None
    tree_deviation: float
    max_plaquette_area: float
    probe_areas: list = field(default_factory=list)
    tolerance: float = 0.0

    @property
    def ok(self) -> bool:
        return self.obstruction is None


def loop_area_sum(values: np.ndarray, loop, via_winding: bool = False,
                  resolution: int = 512) -> float:
    """Σ_j enclosed area of the j-th planar projection of f along a node loop.

    ``loop`` is a sequence of (i, j) node indices; it is closed back to its
    first node if needed.
    """
    loop = np.asarray(loop, dtype=int)
    if np.any(loop[0] != loop[-1]):
        loop = np.vstack([loop, loop[:1]])
    pts = values[loop[:, 0], loop[:, 1]]
    if not via_winding:
        return float(0.5 * step_areas(pts).sum())
    path = SampledPath(np.arange(len(pts), dtype=float), pts)
    return enclosed_area_sum(path, resolution)


def lift_map(f: GridMap, t0: float = 0.0, probe_loops=(), tolerance: float | None = None,
             probe_via_winding: bool = False) -> LiftResult:
    """Lift a planar-valued grid map to H^n or report the loop that obstructs it.

    Every grid cell is a fundamental loop; the lift exists on the grid iff all
    cell area sums vanish. The default tolerance is 1e-6 × domain area ×
    [f]²_α with the seminorm taken over neighbouring nodes.
    """
    if f.m != 2:
        raise ValueError("lift_map expects a map on a 2-D parameter grid")
    if f.target_dim % 2:
        raise ValueError("target must be R^{2n}")
    _require_exponent(f.gamma)
    vals = f.values
    if tolerance is None:
        alpha = f.gamma or 1.0
        sem = holder_seminorm(f, alpha, scale_eps=1.5 * f.spacing().max())
        area = float(np.prod(np.subtract(f.hi, f.lo)))
        tolerance = 1e-6 * area * max(sem, 1e-300) ** 2
    areas = -plaquette_sums(vals) / 4.0
    worst = np.unravel_index(np.argmax(np.abs(areas)), areas.shape)
    worst_area = float(areas[worst])
    probes = [loop_area_sum(vals, lp, probe_via_winding) for lp in probe_loops]
    obstruction = None
    if probes:
        k = int(np.argmax(np.abs(probes)))
        if abs(probes[k]) > tolerance:
            obstruction = Obstruction("probe", (k,), probes[k], tolerance)
    if obstruction is None and abs(worst_area) > tolerance:
        obstruction = Obstruction("plaquette", tuple(int(i) for i in worst), worst_area, tolerance)
    tau1 = tree_heights(vals, t0, row_first=True)
    tau2 = tree_heights(vals, t0, row_first=False)
    deviation = float(np.abs(tau1 - tau2).max())
    lift = None
    if obstruction is None:
        lift = GridMap(f.lo, f.hi, np.concatenate([vals, tau1[..., None]], axis=-1), f.gamma)
    return LiftResult(lift, obstruction, deviation, abs(worst_area), probes, tolerance)


# ----------------------------------------------------------------------------
# mollified pullbacks


@dataclass(frozen=True)
class PullbackField:
    """Pulled-back 1-covectors (or k-covector coefficients) on interior nodes."""

    points: np.ndarray
    values: np.ndarray

    def sup_norm(self) -> float:
        return float(np.sqrt((self.values ** 2).sum(axis=-1)).max())


def _interior(f: GridMap, margin: float) -> tuple:
    h = f.spacing()
    sl = []
    for s, hi in zip(f.shape, h):
        k = int(np.ceil(margin / hi - 1e-12))
        if 2 * k >= s:
            raise PreconditionError("evaluation margin leaves no interior nodes")
        sl.append(slice(k, s - k))
    return tuple(sl)


def pullback_alpha_mollified(f: GridMap, eps: float, kernel: MollifierKernel = DEFAULT_KERNEL,
                             margin: float | None = None) -> PullbackField:
    """∇t_ε + 2 Σ_j (x_j,ε ∇y_j,ε - y_j,ε ∇x_j,ε) on nodes at least ``margin`` inside Ω.

    ``margin`` defaults to 2ε and must be at least ε, so the boundary
    extension never enters the reported values.
    """
    if f.target_dim % 2 == 0:
        raise ValueError("target must be H^n = R^{2n+1}")
    margin = 2 * eps if margin is None else margin
    if margin < eps:
        raise PreconditionError("margin must be at least eps")
    sl = _interior(f, margin)
    fe = mollify(f, eps, kernel).values[sl]
    D = mollify_derivative(f, eps, kernel)[sl]      # (..., 2n+1, m)
    x, y = fe[..., 0:-1:2, None], fe[..., 1:-1:2, None]
    dx, dy = D[..., 0:-1:2, :], D[..., 1:-1:2, :]
    V = D[..., -1, :] + 2.0 * (x * dy - y * dx).sum(axis=-2)
    return PullbackField(f.points()[sl], V)


def pullback_form_mollified(f: GridMap, form: Covector, eps: float,
                            kernel: MollifierKernel = DEFAULT_KERNEL,
                            margin: float | None = None) -> PullbackField:
    """f_ε^* κ for a constant-coefficient k-form κ, via k×k minors of Df_ε."""
    if form.ambient_dim != f.target_dim:
        raise ValueError("form and target dimensions differ")
    k = form.degree
    if k > f.m:
        raise ValueError("form degree exceeds the domain dimension")
    margin = 2 * eps if margin is None else margin
    if margin < eps:
        raise PreconditionError("margin must be at least eps")
    sl = _interior(f, margin)
    D = mollify_derivative(f, eps, kernel)[sl]
    dom = list(combinations(range(f.m), k))
    out = np.zeros(D.shape[:-2] + (len(dom),))
    for I, c in form.coeffs.items():
        rows = [i - 1 for i in I]
        for a, J in enumerate(dom):
            sub = D[..., rows, :][..., list(J)]
            out[..., a] += c * np.linalg.det(sub) if k > 0 else c
    return PullbackField(f.points()[sl], out)


@dataclass(frozen=True)
class DecayReport:
    eps_values: list
    sup_norms: list
    fitted_slope: float
    reference_slope: float
    form: str
    passed: bool
    limitation: str = DECAY_LIMITATION

    def to_json(self) -> dict:
        return {"eps_values": self.eps_values, "sup_norms": self.sup_norms,
                "fitted_slope": self.fitted_slope, "reference_slope": self.reference_slope,
                "form": self.form, "passed": self.passed, "limitation": self.limitation}


def decay_exponent_fit(f: GridMap, form="contact", eps_grid=None, gamma_declared: float | None = None,
                       kernel: MollifierKernel = DEFAULT_KERNEL, margin: float | None = None,
                       slack: float = 0.1) -> DecayReport:
    """Least-squares slope of log ‖f_ε^* form‖_∞ against log ε.

    ``form`` is ``"contact"`` (reference 2γ - 1) or a constant k-covector
    (reference -k(1 - γ)). Both cases pass when the slope is at least the
    reference minus ``slack``: decay at least as fast, or blow-up no worse.
    The evaluation margin is the largest ε unless given.
    """
    gamma = f.gamma if gamma_declared is None else gamma_declared
    if gamma is None:
        raise PreconditionError("declare the Hölder exponent")
    eps = np.asarray(eps_grid if eps_grid is not None else 2.0 ** -np.arange(4, 11), float)
    if len(eps) < 4 or eps.max() / eps.min() < MIN_EPS_SPAN * (1 - 1e-12):
        raise PreconditionError(f"need at least 4 eps levels spanning a factor {MIN_EPS_SPAN:g}")
    if np.any(np.diff(eps) >= 0):
        raise PreconditionError("eps values must be strictly decreasing")
    margin = 2 * eps.max() if margin is None else margin
    sups = []
    for e in eps:
        if form == "contact":
            pb = pullback_alpha_mollified(f, e, kernel, margin)
        else:
            pb = pullback_form_mollified(f, form, e, kernel, margin)
        sups.append(pb.sup_norm())
    sups = np.asarray(sups)
    if np.all(sups < 1e-14):
        raise PreconditionError("all sup norms below 1e-14: slope is undefined")
    slope = float(np.polyfit(np.log(eps), np.log(np.maximum(sups, 1e-300)), 1)[0])
    if form == "contact":
        ref, name = 2 * gamma - 1, "contact_alpha"
    else:
        ref, name = -form.degree * (1 - gamma), "generic_k_form"
    return DecayReport(eps.tolist(), sups.tolist(), slope, float(ref), name,
                       bool(slope >= ref - slack))
