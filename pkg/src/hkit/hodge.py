"""Spectral differential forms on flat tori T^k = R^k / Z^k (k = 2, 3).

A form of degree l is stored as complex Fourier coefficients on the frequency
cube [-M, M]^k, one coefficient array per basis covector dx_I. Every operator
here is diagonal in frequency: d multiplies by 2πi ξ and wedges, the Hodge
star permutes basis slots with signs, and the Laplace–de Rham operator has
symbol 4π²|ξ|². Harmonic forms on the flat torus are exactly the constant
(frequency zero) forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .exterior import basis, hodge_star_array, wedge_arrays

TWO_PI = 2.0 * np.pi
DEFAULT_MODES = {2: 32, 3: 16}


@dataclass(frozen=True)
class FourierForm:
    """Degree-l form on T^k; ``coeffs`` has shape ``(2M+1,)*k + (C(k, l),)``.

    Axis j of the lattice holds frequency ξ_j = index - M.
    """

    k: int
    l: int
    M: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("torus dimension must be positive")
        if not 0 <= self.l <= self.k:
            raise ValueError(f"degree {self.l} outside [0, {self.k}]")
        c = np.asarray(self.coeffs, dtype=complex)
        want = (2 * self.M + 1,) * self.k + (comb(self.k, self.l),)
        if c.shape != want:
            raise ValueError(f"coefficient shape {c.shape}, expected {want}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n_components(self) -> int:
        return comb(self.k, self.l)

    def like(self, l: int, coeffs: np.ndarray) -> "FourierForm":
        return FourierForm(self.k, l, self.M, coeffs)

    @classmethod
    def zero(cls, k: int, l: int, M: int) -> "FourierForm":
        return cls(k, l, M, np.zeros((2 * M + 1,) * k + (comb(k, l),), complex))

    def __add__(self, other: "FourierForm") -> "FourierForm":
        _check_compatible(self, other)
        return self.like(self.l, self.coeffs + other.coeffs)

    def __sub__(self, other: "FourierForm") -> "FourierForm":
        _check_compatible(self, other)
        return self.like(self.l, self.coeffs - other.coeffs)

    def __mul__(self, s: float) -> "FourierForm":
        return self.like(self.l, self.coeffs * s)

    __rmul__ = __mul__

    def symmetry_defect(self) -> float:
        """max |c(ξ) - conj c(-ξ)|; zero for a real-valued form."""
        flipped = self.coeffs[(slice(None, None, -1),) * self.k]
        return float(np.abs(self.coeffs - flipped.conj()).max())

    def harmonic(self) -> "FourierForm":
        out = np.zeros_like(self.coeffs)
        centre = (self.M,) * self.k
        out[centre] = self.coeffs[centre]
        return self.like(self.l, out)

    def to_grid(self, N: int) -> np.ndarray:
        """Real values on the N^k grid x = i/N; shape ``(N,)*k + (C,)``."""
        if N < 2 * self.M + 1:
            raise ValueError(f"grid of {N} points cannot hold modes up to {self.M}")
        spec = np.zeros((N,) * self.k + (self.n_components,), complex)
        idx = np.ix_(*[np.arange(-self.M, self.M + 1) % N] * self.k)
        spec[idx] = self.coeffs
        axes = tuple(range(self.k))
        vals = np.fft.ifftn(spec, axes=axes) * N ** self.k
        return vals.real

    @classmethod
    def from_grid(cls, values: np.ndarray, l: int, M: int) -> "FourierForm":
        """Truncate the discrete Fourier transform of sampled component values."""
        values = np.asarray(values, float)
        k = values.ndim - 1
        N = values.shape[0]
        if N < 2 * M + 1:
            raise ValueError(f"grid of {N} points cannot resolve modes up to {M}")
        spec = np.fft.fftn(values, axes=tuple(range(k))) / N ** k
        idx = np.ix_(*[np.arange(-M, M + 1) % N] * k)
        return cls(k, l, M, spec[idx])

    def to_json(self) -> dict:
        comps = {}
        for i, I in enumerate(basis(self.k, self.l)):
            flat = self.coeffs[..., i].ravel()
            comps[",".join(map(str, I))] = np.stack([flat.real, flat.imag], axis=1).tolist()
        return {"k": self.k, "l": self.l, "M": self.M, "components": comps}

    @classmethod
    def from_json(cls, obj: dict) -> "FourierForm":
        k, l, M = int(obj["k"]), int(obj["l"]), int(obj["M"])
        comps = obj["components"]
        names = [",".join(map(str, I)) for I in basis(k, l)]
        unknown = set(comps) - set(names)
        if unknown:
            raise ValueError(f"unknown basis components {sorted(unknown)}")
        c = np.zeros((2 * M + 1,) * k + (len(names),), complex)
        for i, name in enumerate(names):
            if name not in comps:
                continue
            pairs = np.asarray(comps[name], float).reshape(-1, 2)
            if len(pairs) != (2 * M + 1) ** k:
                raise ValueError(f"component {name!r}: expected {(2 * M + 1) ** k} modes")
            c[..., i] = (pairs[:, 0] + 1j * pairs[:, 1]).reshape((2 * M + 1,) * k)
        return cls(k, l, M, c)


def _check_compatible(a: FourierForm, b: FourierForm):
    if (a.k, a.l, a.M) != (b.k, b.l, b.M):
        raise ValueError(f"incompatible forms {(a.k, a.l, a.M)} and {(b.k, b.l, b.M)}")


def frequencies(k: int, M: int) -> np.ndarray:
    """Integer frequency vectors, shape ``(2M+1,)*k + (k,)``."""
    ax = np.arange(-M, M + 1)
    return np.stack(np.meshgrid(*[ax] * k, indexing="ij"), axis=-1)


def random_form(k: int, l: int, M: int, rng: np.random.Generator, decay: float = 1.0,
                mean_zero: bool = False) -> FourierForm:
    """Real-valued random form with coefficients damped like (1 + |ξ|)^{-decay}."""
    shape = (2 * M + 1,) * k + (comb(k, l),)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    xi = frequencies(k, M)
    c *= (1.0 + np.linalg.norm(xi, axis=-1))[..., None] ** -decay
    flipped = c[(slice(None, None, -1),) * k]
    c = 0.5 * (c + flipped.conj())
    if mean_zero:
        c[(M,) * k] = 0
    return FourierForm(k, l, M, c)


# ----------------------------------------------------------------------------
# operators


def star(w: FourierForm) -> FourierForm:
    """Flat Hodge star, applied to the constant basis slots at every mode."""
    return w.like(w.k - w.l, hodge_star_array(w.coeffs, w.k, w.l))


def d_spectral(w: FourierForm) -> FourierForm:
    """Exterior derivative: dx-wedge with the symbol 2πi ξ at every mode."""
    if w.l >= w.k:
        raise ValueError(f"d of a top-degree form on T^{w.k}")
    xi = frequencies(w.k, w.M).astype(float)
    return w.like(w.l + 1, 1j * TWO_PI * wedge_arrays(xi, w.coeffs, w.k, 1, w.l))


def codifferential_sign(k: int, l: int) -> int:
    return (-1) ** (k * (l - 1) + 1)


def delta_spectral(w: FourierForm) -> FourierForm:
    """Codifferential δ = (-1)^{k(l-1)+1} ∗ d ∗ on l-forms over T^k."""
    if w.l == 0:
        raise ValueError("δ of a 0-form")
    return star(d_spectral(star(w))) * codifferential_sign(w.k, w.l)


def laplacian(w: FourierForm) -> FourierForm:
    """Laplace–de Rham operator dδ + δd, assembled from the two compositions."""
    out = FourierForm.zero(w.k, w.l, w.M)
    if w.l > 0:
        out = out + d_spectral(delta_spectral(w))
    if w.l < w.k:
        out = out + delta_spectral(d_spectral(w))
    return out


def laplace_symbol(k: int, M: int) -> np.ndarray:
    xi = frequencies(k, M)
    return TWO_PI ** 2 * (xi ** 2).sum(axis=-1)


def laplace_solve(w: FourierForm) -> tuple[FourierForm, FourierForm]:
    """Return ``(η, h)`` with Δη = w - h, h the harmonic part and η mean-free."""
    h = w.harmonic()
    lam = laplace_symbol(w.k, w.M)
    safe = np.where(lam > 0, lam, 1.0)
    eta = np.where(lam[..., None] > 0, w.coeffs / safe[..., None], 0)
    return w.like(w.l, eta), h


@dataclass(frozen=True)
class HodgeSplit:
    d_part: FourierForm
    delta_part: FourierForm
    harmonic: FourierForm
    exact_potential: FourierForm | None
    coexact_potential: FourierForm | None

    def reconstruct(self) -> FourierForm:
        return self.d_part + self.delta_part + self.harmonic


def hodge_decompose(w: FourierForm) -> HodgeSplit:
    """w = dω₁ + δω₂ + h with ω₁ = δη, ω₂ = dη and Δη = w - h.

    Both potentials are mean-free (the canonical gauge), co-closed and closed
    respectively. Degree-0 forms have no exact part and top forms no
    co-exact part.
    """
    eta, h = laplace_solve(w)
    zero = FourierForm.zero(w.k, w.l, w.M)
    w1 = delta_spectral(eta) if w.l > 0 else None
    w2 = d_spectral(eta) if w.l < w.k else None
    d_part = d_spectral(w1) if w1 is not None else zero
    delta_part = delta_spectral(w2) if w2 is not None else zero
    return HodgeSplit(d_part, delta_part, h, w1, w2)


# ----------------------------------------------------------------------------
# norms and checks


def l2_inner(a: FourierForm, b: FourierForm) -> float:
    """∫_{T^k} <a, b> via Parseval (the torus has unit volume)."""
    _check_compatible(a, b)
    return float(np.real(np.vdot(b.coeffs, a.coeffs)))


def l2_norm(w: FourierForm) -> float:
    return float(np.sqrt(np.sum(np.abs(w.coeffs) ** 2)))


def sobolev_norm(w: FourierForm) -> float:
    """(‖w‖² + Σ_j ‖∂_j w‖²)^{1/2}."""
    lam = laplace_symbol(w.k, w.M)
    return float(np.sqrt(np.sum((1.0 + lam[..., None]) * np.abs(w.coeffs) ** 2)))


@dataclass(frozen=True)
class SplitReport:
    reconstruction: float
    orthogonality: float
    pythagoras: float
    side_conditions: float


def split_report(w: FourierForm, split: HodgeSplit) -> SplitReport:
    """Residuals of a decomposition; orthogonality is the largest |<p, q>|."""
    parts = [split.d_part, split.delta_part, split.harmonic]
    recon = l2_norm(w - split.reconstruct())
    ortho = max(abs(l2_inner(parts[i], parts[j])) for i in range(3) for j in range(i + 1, 3))
    pyth = abs(l2_norm(w) ** 2 - sum(l2_norm(p) ** 2 for p in parts))
    side = 0.0
    if split.exact_potential is not None and split.exact_potential.l > 0:
        side = max(side, l2_norm(delta_spectral(split.exact_potential)))
    if split.coexact_potential is not None and split.coexact_potential.l < w.k:
        side = max(side, l2_norm(d_spectral(split.coexact_potential)))
    return SplitReport(recon, ortho, pyth, side)


def symbol_matrix(k: int, l: int, xi) -> np.ndarray:
    """Integer matrices of dx-wedge by frequencies ξ, mapping l- to (l+1)-slots.

    ``xi`` has shape ``(..., k)``; the result has shape ``(..., C(k,l+1), C(k,l))``.
    d acts at frequency ξ as 2πi times this matrix.
    """
    xi = np.asarray(xi, dtype=np.int64)
    eye = np.eye(comb(k, l))
    # entries are ±ξ_j or 0, so the float wedge is exact
    cols = wedge_arrays(xi.astype(float)[None], eye.reshape((-1,) + (1,) * (xi.ndim - 1)
                                                            + (eye.shape[1],)), k, 1, l)
    return np.moveaxis(cols, 0, -1).astype(np.int64)


def star_matrix(k: int, l: int) -> np.ndarray:
    """Integer matrix of the Hodge star from l- to (k-l)-slots."""
    return hodge_star_array(np.eye(comb(k, l)), k, l).T.astype(np.int64)


def nilpotency_defect(k: int, M: int) -> tuple[int, int]:
    """Largest integer entry of the composed symbols of d∘d and δ∘δ over all modes.

    Both are computed in exact integer arithmetic, so (0, 0) certifies d² = 0
    and δ² = 0 on every frequency of the cube.
    """
    xi = frequencies(k, M).reshape(-1, k)
    dd = 0
    for l in range(k - 1):
        dd = max(dd, int(np.abs(symbol_matrix(k, l + 1, xi) @ symbol_matrix(k, l, xi)).max()))

    def delta(m):
        # δ on m-forms is ± ∗ d ∗ with ∗ mapping m → k-m
        return star_matrix(k, k - m + 1) @ symbol_matrix(k, k - m, xi) @ star_matrix(k, m)

    ddel = 0
    for l in range(2, k + 1):
        ddel = max(ddel, int(np.abs(delta(l - 1) @ delta(l)).max()))
    return dd, ddel


@dataclass(frozen=True)
class GaffneyReport:
    gaffney_min: float
    gaffney_max: float
    poincare_min: float
    poincare_max: float
    flagged: tuple[int, ...]


def gaffney_check(corpus, harmonic_tol: float = 1e-12) -> GaffneyReport:
    """Ranges of (‖w‖ + ‖dw‖ + ‖δw‖)/‖w‖_{1,2} and ‖w‖_{1,2}/(‖dw‖ + ‖δw‖).

    Forms with a nonzero harmonic part make the second ratio unbounded; they
    are listed in ``flagged`` and their Poincaré ratio is reported as inf.
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("empty corpus")
    g, p, flagged = [], [], []
    for i, w in enumerate(corpus):
        dw = l2_norm(d_spectral(w)) if w.l < w.k else 0.0
        sw = l2_norm(delta_spectral(w)) if w.l > 0 else 0.0
        s = sobolev_norm(w)
        g.append((l2_norm(w) + dw + sw) / s if s > 0 else np.nan)
        if l2_norm(w.harmonic()) > harmonic_tol * max(1.0, l2_norm(w)):
            flagged.append(i)
            p.append(np.inf)
        else:
            p.append(s / (dw + sw) if dw + sw > 0 else np.inf)
    g, p = np.asarray(g), np.asarray(p)
    return GaffneyReport(float(np.nanmin(g)), float(np.nanmax(g)),
                         float(p.min()), float(p.max()), tuple(flagged))


def poincare_potential_ratio(split: HodgeSplit) -> float:
    """‖ω₁‖ / ‖dω₁‖ for the exact potential; at most 1/(2π) on the torus."""
    if split.exact_potential is None:
        return 0.0
    num = l2_norm(split.exact_potential)
    den = l2_norm(split.d_part)
    return num / den if den > 0 else 0.0
