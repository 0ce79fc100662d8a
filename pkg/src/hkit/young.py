"""One-dimensional Young integrals ∫ f dg for Hölder data with α + β > 1.

Two independent routes:

* :func:`young_rs` refines Riemann–Stieltjes sums over dyadic sub-partitions
  of the sample grid.
* :func:`young_mollified` integrates f_ε g_ε' for a decreasing ε sequence and
  extrapolates ε → 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, YoungConditionError
from .holder import (DEFAULT_KERNEL, MollifierKernel, SampledPath, estimate_holder_exponent,
                     holder_seminorm, mollify, mollify_derivative)


@dataclass(frozen=True)
class YoungResult:
    value: float
    method: str
    error_estimate: float
    diagnostics: dict = field(default_factory=dict, repr=False)


def _scalar(p: SampledPath, name: str) -> np.ndarray:
    if p.dim != 1:
        raise ValueError(f"{name} must be scalar (got {p.dim} components)")
    return p.values[:, 0]


def resolve_exponents(f: SampledPath, g: SampledPath, alpha=None, beta=None) -> tuple[float, float]:
    """Declared exponents, falling back to path metadata and then to an estimate."""
    if alpha is None:
        alpha = f.gamma
    if beta is None:
        beta = g.gamma
    if alpha is None or beta is None:
        warnings.warn("Hölder exponent not declared; estimating from samples", stacklevel=3)
        alpha = estimate_holder_exponent(f) if alpha is None else alpha
        beta = estimate_holder_exponent(g) if beta is None else beta
    if alpha + beta <= 1:
        raise YoungConditionError(alpha, beta)
    return float(alpha), float(beta)


def _check_common(f: SampledPath, g: SampledPath):
    if len(f.times) != len(g.times) or np.any(f.times != g.times):
        raise ValueError("f and g must share their sample times")


def _level_indices(N: int, stride: int) -> np.ndarray:
    idx = np.arange(0, N + 1, stride)
    if idx[-1] != N:
        idx = np.append(idx, N)
    return idx


def stieltjes_sums(fv: np.ndarray, gv: np.ndarray, idx: np.ndarray) -> dict:
    """Left, right-averaged (trapezoid) and midpoint-tagged sums on a sub-partition."""
    dg = np.diff(gv[idx])
    left = float(fv[idx[:-1]] @ dg)
    trap = float((0.5 * (fv[idx[:-1]] + fv[idx[1:]])) @ dg)
    mid_idx = (idx[:-1] + idx[1:]) // 2
    odd = (idx[1:] - idx[:-1]) % 2 == 1
    fm = np.where(odd, 0.5 * (fv[mid_idx] + fv[np.minimum(mid_idx + 1, len(fv) - 1)]), fv[mid_idx])
    mid = float(fm @ dg)
    return {"left": left, "trapezoid": trap, "midpoint": mid}


def young_rs(f: SampledPath, g: SampledPath, depth: int | None = None, alpha=None, beta=None,
             richardson: bool = False) -> YoungResult:
    """Riemann–Stieltjes sums over dyadic sub-partitions of the sample grid.

    Level j uses every 2^j-th sample (plus the end point). The reported value
    is the trapezoid-tagged sum on the finest level, i.e. the Stieltjes
    integral of the piecewise linear interpolant of f against g; it is exact
    for polygons. Left and midpoint sums are kept as tag-sensitivity
    diagnostics. With ``richardson`` the last two levels are combined as
    (4 T_h - T_2h)/3, which removes the leading term for smooth data.
    """
    _check_common(f, g)
    alpha, beta = resolve_exponents(f, g, alpha, beta)
    fv, gv = _scalar(f, "f"), _scalar(g, "g")
    N = len(fv) - 1
    max_depth = max(1, int(np.floor(np.log2(N))) + 1)
    depth = max_depth if depth is None else int(depth)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    depth = min(depth, max_depth)
    levels = []
    for j in reversed(range(depth)):
        stride = 2 ** j
        s = stieltjes_sums(fv, gv, _level_indices(N, stride))
        s["stride"] = stride
        levels.append(s)
    fine = levels[-1]["trapezoid"]
    prev = levels[-2]["trapezoid"] if len(levels) > 1 else fine
    value = fine
    if richardson and len(levels) > 1:
        value = (4 * fine - prev) / 3
        err = max(abs(value - fine), abs(value - prev) / 3)
    else:
        err = abs(fine - prev)
    spread = max(abs(levels[-1]["left"] - levels[-1]["midpoint"]),
                 abs(levels[-1]["left"] - fine))
    return YoungResult(value, "riemann_stieltjes", float(err),
                       {"levels": levels, "alpha": alpha, "beta": beta,
                        "tag_spread": float(spread), "richardson": richardson})


def default_eps_sequence(h: float, levels: int = 5, coarsest: int = 64) -> np.ndarray:
    """Dyadic ε from ``coarsest`` grid cells down by factors of two."""
    return h * coarsest / 2.0 ** np.arange(levels)


def _richardson_step(eps: np.ndarray, vals: np.ndarray, floor_rate: float) -> tuple[float, float]:
    r = eps[-2] / eps[-1]
    rate = floor_rate
    if len(vals) >= 3:
        d1, d2 = vals[-2] - vals[-3], vals[-1] - vals[-2]
        if d1 * d2 > 0 and abs(d2) < abs(d1):
            r1 = eps[-3] / eps[-2]
            rate = np.log(abs(d1 / d2)) / np.log(0.5 * (r + r1))
        rate = float(np.clip(rate, floor_rate, 4.0))
    return float(vals[-1] + (vals[-1] - vals[-2]) / (r ** rate - 1)), rate


def extrapolate(eps: np.ndarray, vals: np.ndarray, floor_rate: float) -> tuple[float, float]:
    """Limit ε → 0 of a sequence behaving like L + C ε^r + D ε^{r+2}.

    Returns ``(limit, rate)``. The rate r is fitted from the last three
    increments, clipped to [floor_rate, 4], and falls back to ``floor_rate``
    if the increments do not have a common sign. With four or more levels a
    second elimination removes the ε^{r+2} term from the two most recent
    first-stage limits.
    """
    eps, vals = np.asarray(eps, float), np.asarray(vals, float)
    if len(vals) < 2:
        return float(vals[-1]), floor_rate
    limit, rate = _richardson_step(eps, vals, floor_rate)
    if len(vals) >= 4:
        prev, _ = _richardson_step(eps[:-1], vals[:-1], floor_rate)
        q = (eps[-2] / eps[-1]) ** (rate + 2.0)
        limit = limit + (limit - prev) / (q - 1)
    return float(limit), rate


def young_mollified(f: SampledPath, g: SampledPath, eps_sequence=None,
                    kernel: MollifierKernel = DEFAULT_KERNEL, alpha=None, beta=None) -> YoungResult:
    """lim_ε ∫ f_ε g_ε' dx by trapezoid quadrature and ε-extrapolation.

    Both paths are extended past [a, b] by odd reflection so that f_ε and g_ε
    keep the end values of f and g.
    """
    _check_common(f, g)
    alpha, beta = resolve_exponents(f, g, alpha, beta)
    _scalar(f, "f"), _scalar(g, "g")
    h = f.spacing()
    eps = default_eps_sequence(h) if eps_sequence is None else np.asarray(eps_sequence, float)
    if len(eps) < 1 or np.any(np.diff(eps) >= 0) or np.any(eps <= 0):
        raise PreconditionError("eps sequence must be positive and strictly decreasing")
    vals = []
    for e in eps:
        fe = mollify(f, e, kernel, mode="reflect").values[:, 0]
        dge = mollify_derivative(g, e, kernel, mode="reflect").values[:, 0]
        vals.append(float(np.trapezoid(fe * dge, f.times)))
    vals = np.asarray(vals)
    limit, rate = extrapolate(eps, vals, alpha + beta - 1)
    tail = vals[-2:] if len(vals) > 1 else vals
    err = float(np.abs(limit - tail).max())
    return YoungResult(limit, "mollified", err,
                       {"eps": eps.tolist(), "values": vals.tolist(), "rate": rate,
                        "alpha": alpha, "beta": beta})


def young_integral(f: SampledPath, g: SampledPath, method: str = "rs", **kw) -> YoungResult:
    if method in ("rs", "riemann_stieltjes"):
        return young_rs(f, g, **kw)
    if method == "mollified":
        return young_mollified(f, g, **kw)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class YoungBound:
    lhs: float
    rhs: float
    ratio: float


def young_bound_check(f: SampledPath, g: SampledPath, alpha: float, beta: float,
                      zero_tol: float = 1e-12) -> YoungBound:
    """Compare |∫ f dg| with |b - a|^{α+β} [f]_α [g]_β for f vanishing somewhere."""
    fv = _scalar(f, "f")
    if np.abs(fv).min() > zero_tol * max(1.0, np.abs(fv).max()):
        raise PreconditionError("f must vanish at some sample")
    if alpha + beta <= 1:
        raise YoungConditionError(alpha, beta)
    lhs = abs(young_rs(f, g, alpha=alpha, beta=beta).value)
    a, b = f.interval
    rhs = (b - a) ** (alpha + beta) * holder_seminorm(f, alpha) * holder_seminorm(g, beta)
    ratio = 0.0 if lhs == 0 else (lhs / rhs if rhs > 0 else np.inf)
    return YoungBound(lhs, rhs, float(ratio))


@dataclass(frozen=True)
class FourierBlock:
    k: int
    block_energy: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.block_energy / self.bound if self.bound > 0 else 0.0


def fourier_block_bounds(f: SampledPath, alpha: float, seminorm: float | None = None,
                         periodic_tol: float = 1e-8) -> list[FourierBlock]:
    """Dyadic Fourier block energies Σ_{2^k ≤ |n| < 2^{k+1}} |f̂(n)|² against [f]²_α 2^{-2kα}."""
    fv = _scalar(f, "f")
    N = len(fv) - 1
    if N & (N - 1) or N < 2:
        raise ValueError("need N = 2^m intervals")
    if abs(fv[0] - fv[-1]) > periodic_tol * max(1.0, np.abs(fv).max()):
        raise PreconditionError("path is not periodic: end values differ")
    a, b = f.interval
    if abs((b - a) - 1.0) > 1e-12:
        raise ValueError("periodic path must be sampled on an interval of length 1")
    coeff = np.fft.fft(fv[:-1]) / N
    power = np.abs(coeff) ** 2
    freq = np.abs(np.fft.fftfreq(N, d=1.0 / N)).astype(int)
    sem = holder_seminorm(f, alpha) if seminorm is None else seminorm
    out = []
    k = 0
    while 2 ** k < N // 2:
        sel = (freq >= 2 ** k) & (freq < 2 ** (k + 1))
        out.append(FourierBlock(k, float(power[sel].sum()), sem ** 2 * 2.0 ** (-2 * k * alpha)))
        k += 1
    return out
