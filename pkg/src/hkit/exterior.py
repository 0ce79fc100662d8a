"""Multilinear algebra of k-covectors on R^n.

Basis covectors ``dx_I`` are indexed by strictly increasing 1-based tuples.
A :class:`Covector` keeps a sparse ``{I: c}`` map for readability and the
operations work on dense coefficient arrays in lexicographic basis order,
using small per-(n, k, l) sign tables that are built once and cached.

Symplectic conventions use the interleaved layout ``x_1, y_1, ..., x_n, y_n``
(index ``2j-1`` for ``x_j`` and ``2j`` for ``y_j``), and in R^{2n+1} the height
coordinate ``t`` is the last index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

import numpy as np
import scipy.linalg

from .errors import InternalFault, PreconditionError

MAX_SYMPLECTIC_HALF_DIM = 8


# ----------------------------------------------------------------------------
# basis bookkeeping


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing index tuples of length k in {1..n}, lexicographic."""
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def basis_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {I: i for i, I in enumerate(basis(n, k))}


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an index repeats.

    Counts swaps of an insertion sort, which is O(k^2) for the short index
    lists used here.
    """
    items = list(seq)
    swaps = 0
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            swaps += 1
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return 0
    return -1 if swaps % 2 else 1


@lru_cache(maxsize=None)
def wedge_table(n: int, k: int, l: int):
    """Index arrays ``(ia, ib, iout, sign)`` with dx_A ∧ dx_B = sign · dx_out."""
    out_index = basis_index(n, k + l)
    ia, ib, io, sg = [], [], [], []
    for a, A in enumerate(basis(n, k)):
        sa = set(A)
        for b, B in enumerate(basis(n, l)):
            if sa.intersection(B):
                continue
            s = permutation_sign(A + B)
            ia.append(a)
            ib.append(b)
            io.append(out_index[tuple(sorted(A + B))])
            sg.append(s)
    return (np.array(ia, dtype=np.intp), np.array(ib, dtype=np.intp),
            np.array(io, dtype=np.intp), np.array(sg, dtype=float))


def wedge_arrays(a: np.ndarray, b: np.ndarray, n: int, k: int, l: int) -> np.ndarray:
    """Wedge of coefficient arrays whose last axis is the basis axis.

    Leading axes broadcast, so the same routine serves single covectors and
    sampled covector fields.
    """
    if k + l > n:
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        return np.zeros(shape + (0,))
    ia, ib, io, sg = wedge_table(n, k, l)
    prod = a[..., ia] * b[..., ib] * sg
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.zeros(shape + (comb(n, k + l),), dtype=np.result_type(a, b))
    # accumulate in a fixed order so results are reproducible
    for j in range(len(io)):
        out[..., io[j]] += prod[..., j]
    return out


# ----------------------------------------------------------------------------
# the value type


@dataclass(frozen=True)
class Covector:
    """A k-covector on R^n as a sparse map from index tuples to coefficients.

    ``overflow`` marks the zero result of a wedge whose degree exceeded n.
    """

    ambient_dim: int
    degree: int
    coeffs: dict = field(default_factory=dict)
    overflow: bool = False

    def __post_init__(self):
        n, k = self.ambient_dim, self.degree
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        if not self.overflow and not 0 <= k <= n:
            raise ValueError(f"degree {k} outside [0, {n}]")
        clean = {}
        for I, c in self.coeffs.items():
            I = tuple(int(i) for i in I)
            if len(I) != k or any(b <= a for a, b in zip(I, I[1:])):
                raise ValueError(f"index {I} is not strictly increasing of length {k}")
            if I and not (1 <= I[0] and I[-1] <= n):
                raise ValueError(f"index {I} outside 1..{n}")
            if not np.isfinite(c):
                raise ValueError("non-finite coefficient")
            if c != 0:
                clean[I] = float(c)
        object.__setattr__(self, "coeffs", clean)

    # construction helpers

    @classmethod
    def basis_element(cls, n: int, *idx: int) -> "Covector":
        s = permutation_sign(idx)
        if s == 0:
            return cls(n, len(idx))
        return cls(n, len(idx), {tuple(sorted(idx)): float(s)})

    @classmethod
    def scalar(cls, n: int, c: float) -> "Covector":
        return cls(n, 0, {(): c})

    @classmethod
    def zero(cls, n: int, k: int) -> "Covector":
        return cls(n, k)

    @classmethod
    def from_array(cls, n: int, k: int, arr) -> "Covector":
        arr = np.asarray(arr, dtype=float)
        B = basis(n, k)
        if arr.shape != (len(B),):
            raise ValueError(f"expected {len(B)} coefficients, got {arr.shape}")
        return cls(n, k, {I: c for I, c in zip(B, arr) if c != 0})

    def to_array(self) -> np.ndarray:
        if self.overflow:
            return np.zeros(0)
        idx = basis_index(self.ambient_dim, self.degree)
        out = np.zeros(len(idx))
        for I, c in self.coeffs.items():
            out[idx[I]] = c
        return out

    # arithmetic

    def _check_same(self, other: "Covector"):
        if self.ambient_dim != other.ambient_dim or self.degree != other.degree:
            raise ValueError("covectors live in different spaces")

    def __add__(self, other: "Covector") -> "Covector":
        self._check_same(other)
        c = dict(self.coeffs)
        for I, v in other.coeffs.items():
            c[I] = c.get(I, 0.0) + v
        return Covector(self.ambient_dim, self.degree, c)

    def __neg__(self) -> "Covector":
        return self * -1.0

    def __sub__(self, other: "Covector") -> "Covector":
        return self + (-other)

    def __mul__(self, s: float) -> "Covector":
        return Covector(self.ambient_dim, self.degree,
                        {I: s * c for I, c in self.coeffs.items()}, self.overflow)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(sum(c * c for c in self.coeffs.values())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def has_index(self, i: int) -> bool:
        return any(i in I for I in self.coeffs)

    def to_json(self) -> dict:
        return {"n": self.ambient_dim, "k": self.degree,
                "terms": [{"idx": list(I), "c": c} for I, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, obj: dict) -> "Covector":
        return cls(int(obj["n"]), int(obj["k"]),
                   {tuple(t["idx"]): float(t["c"]) for t in obj["terms"]})


@dataclass(frozen=True)
class VectorN:
    components: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.components, dtype=float)
        if v.ndim != 1 or not np.all(np.isfinite(v)):
            raise ValueError("vector must be a finite 1-D array")
        object.__setattr__(self, "components", v)

    @property
    def dim(self) -> int:
        return len(self.components)


# ----------------------------------------------------------------------------
# operations


def wedge(a: Covector, b: Covector) -> Covector:
    n = a.ambient_dim
    if b.ambient_dim != n:
        raise ValueError(f"dimension mismatch: {n} vs {b.ambient_dim}")
    k, l = a.degree, b.degree
    if k + l > n:
        return Covector(n, k + l, overflow=True)
    out = wedge_arrays(a.to_array(), b.to_array(), n, k, l)
    return Covector.from_array(n, k + l, out)


@lru_cache(maxsize=None)
def _star_table(n: int, k: int):
    src = basis(n, k)
    dst_index = basis_index(n, n - k)
    perm = np.empty(len(src), dtype=np.intp)
    sign = np.empty(len(src))
    full = set(range(1, n + 1))
    for i, I in enumerate(src):
        J = tuple(sorted(full.difference(I)))
        perm[i] = dst_index[J]
        sign[i] = permutation_sign(I + J)
    return perm, sign


def hodge_star_array(a: np.ndarray, n: int, k: int) -> np.ndarray:
    perm, sign = _star_table(n, k)
    out = np.zeros(a.shape[:-1] + (len(perm),), dtype=a.dtype)
    out[..., perm] = a * sign
    return out


def hodge_star(a: Covector) -> Covector:
    """Euclidean Hodge star, *dx_I = sgn(I, J) dx_J with J the complement of I."""
    n, k = a.ambient_dim, a.degree
    return Covector.from_array(n, n - k, hodge_star_array(a.to_array(), n, k))


def inner(a: Covector, b: Covector) -> float:
    a._check_same(b)
    return float(a.to_array() @ b.to_array())


def interior_product(v, a: Covector) -> Covector:
    """Contraction of ``a`` with ``v`` in its first slot."""
    comps = v.components if isinstance(v, VectorN) else np.asarray(v, dtype=float)
    n, k = a.ambient_dim, a.degree
    if len(comps) != n:
        raise ValueError("vector and covector dimensions differ")
    if k == 0:
        raise ValueError("cannot contract a 0-covector")
    out: dict = {}
    for I, c in a.coeffs.items():
        for r, i in enumerate(I):
            J = I[:r] + I[r + 1:]
            out[J] = out.get(J, 0.0) + (-1) ** r * comps[i - 1] * c
    return Covector(n, k - 1, out)


def evaluate(a: Covector, *vectors) -> float:
    """a(v_1, ..., v_k) by repeated contraction."""
    if len(vectors) != a.degree:
        raise ValueError("need exactly k vectors")
    for v in vectors:
        a = interior_product(v, a)
    return a.coeffs.get((), 0.0)


# ----------------------------------------------------------------------------
# symplectic and contact structure


def symplectic_form(n: int, ambient_dim: int | None = None) -> Covector:
    """ω = Σ dx_j ∧ dy_j in R^{2n} (or embedded in a larger ambient space)."""
    D = 2 * n if ambient_dim is None else ambient_dim
    return Covector(D, 2, {(2 * j - 1, 2 * j): 1.0 for j in range(1, n + 1)})


def symplectic_power(n: int, p: int, ambient_dim: int | None = None) -> Covector:
    D = 2 * n if ambient_dim is None else ambient_dim
    out = Covector.scalar(D, 1.0)
    w = symplectic_form(n, D)
    for _ in range(p):
        out = wedge(out, w)
    return out


def _half_dim(a: Covector) -> int:
    if a.ambient_dim % 2:
        raise ValueError("Lefschetz operator needs an even ambient dimension")
    n = a.ambient_dim // 2
    if n > MAX_SYMPLECTIC_HALF_DIM:
        raise PreconditionError(f"n = {n} exceeds the supported cap {MAX_SYMPLECTIC_HALF_DIM}")
    return n


@lru_cache(maxsize=None)
def lefschetz_matrix(n: int, p: int) -> np.ndarray:
    """Matrix of a ↦ a ∧ ω^p from degree n-p to degree n+p on R^{2n}."""
    wp = symplectic_power(n, p).to_array()
    m = comb(2 * n, n - p)
    M = np.empty((comb(2 * n, n + p), m))
    for j in range(m):
        e = np.zeros(m)
        e[j] = 1.0
        M[:, j] = wedge_arrays(e, wp, 2 * n, n - p, 2 * p)
    return M


@lru_cache(maxsize=None)
def _lefschetz_lu(n: int, p: int):
    M = lefschetz_matrix(n, p)
    return scipy.linalg.lu_factor(M), float(np.linalg.cond(M))


def lefschetz_condition(n: int, p: int) -> float:
    """2-norm condition number of the Lefschetz basis matrix (reported, not used)."""
    return _lefschetz_lu(n, p)[1]


def lefschetz_apply(a: Covector, k_power: int) -> Covector:
    n = _half_dim(a)
    if not 1 <= k_power <= n:
        raise ValueError(f"power {k_power} outside [1, {n}]")
    if a.degree != n - k_power:
        raise ValueError(f"degree {a.degree} != n - power = {n - k_power}")
    return wedge(a, symplectic_power(n, k_power))


def lefschetz_invert_array(b: np.ndarray, n: int, p: int) -> np.ndarray:
    """Solve a ∧ ω^p = b for arrays with the basis on the last axis."""
    (lu, piv), _ = _lefschetz_lu(n, p)
    flat = b.reshape(-1, b.shape[-1]).T
    sol = scipy.linalg.lu_solve((lu, piv), flat)
    resid = np.abs(lefschetz_matrix(n, p) @ sol - flat).max(initial=0.0)
    scale = max(1.0, np.abs(flat).max(initial=0.0))
    if resid > 1e-9 * scale:
        raise InternalFault(f"Lefschetz solve residual {resid:.3g}")
    return sol.T.reshape(b.shape[:-1] + (sol.shape[0],))


def lefschetz_invert(b: Covector, k_power: int) -> Covector:
    n = _half_dim(b)
    if not 1 <= k_power <= n:
        raise ValueError(f"power {k_power} outside [1, {n}]")
    if b.degree != n + k_power:
        raise ValueError(f"degree {b.degree} != n + power = {n + k_power}")
    a = lefschetz_invert_array(b.to_array(), n, k_power)
    return Covector.from_array(2 * n, n - k_power, a)


def contact_form_array(points: np.ndarray) -> np.ndarray:
    """Coefficients of α = dt + 2Σ(x dy - y dx) at points (..., 2n+1)."""
    points = np.asarray(points, dtype=float)
    D = points.shape[-1]
    out = np.zeros(points.shape)
    out[..., 0:D - 1:2] = -2.0 * points[..., 1:D - 1:2]
    out[..., 1:D - 1:2] = 2.0 * points[..., 0:D - 1:2]
    out[..., D - 1] = 1.0
    return out


@lru_cache(maxsize=None)
def _split_dt(D: int, k: int):
    """Map degree-k basis of R^D into (dt-free part, dt-part) of R^{D-1}."""
    free_idx, free_src, dt_idx, dt_src = [], [], [], []
    inner_free = basis_index(D - 1, k)
    inner_dt = basis_index(D - 1, k - 1) if k >= 1 else {}
    for i, I in enumerate(basis(D, k)):
        if I and I[-1] == D:
            dt_src.append(i)
            dt_idx.append(inner_dt[I[:-1]])
        else:
            free_src.append(i)
            free_idx.append(inner_free[I])
    return (np.array(free_src, dtype=np.intp), np.array(free_idx, dtype=np.intp),
            np.array(dt_src, dtype=np.intp), np.array(dt_idx, dtype=np.intp))


@lru_cache(maxsize=None)
def _embed_index(D: int, k: int) -> np.ndarray:
    """Positions of the R^{D-1} degree-k basis inside the R^D degree-k basis."""
    idx = basis_index(D, k)
    return np.array([idx[I] for I in basis(D - 1, k)], dtype=np.intp)


def embed_array(a: np.ndarray, D: int, k: int) -> np.ndarray:
    """Lift dt-free coefficients on R^{D-1} into R^D."""
    out = np.zeros(a.shape[:-1] + (comb(D, k),), dtype=a.dtype)
    out[..., _embed_index(D, k)] = a
    return out


def contact_decompose_arrays(kappa: np.ndarray, points: np.ndarray, k: int):
    """Vectorized pointwise contact decomposition.

    ``kappa`` has shape (..., C(2n+1, k)) and ``points`` shape (..., 2n+1).
    Returns ``(beta, gamma)`` as dt-free arrays on R^{2n}: beta of degree k-1,
    gamma of degree 2n-k (gamma is zero when k = 2n+1).
    """
    D = points.shape[-1]
    n = (D - 1) // 2
    if D % 2 == 0:
        raise ValueError("contact decomposition needs ambient dimension 2n+1")
    if not n + 1 <= k <= 2 * n + 1:
        raise ValueError(f"degree {k} outside [{n + 1}, {2 * n + 1}]")
    free_src, free_idx, dt_src, dt_idx = _split_dt(D, k)
    lead = np.broadcast_shapes(kappa.shape[:-1], points.shape[:-1])
    beta = np.zeros(lead + (comb(2 * n, k - 1),))
    beta[..., dt_idx] = kappa[..., dt_src]  # dx_J ∧ dt = dx_{J+t}, t is last
    if k == 2 * n + 1:
        return beta, np.zeros(lead + (1,))
    kappa_free = np.zeros(lead + (comb(2 * n, k),))
    kappa_free[..., free_idx] = kappa[..., free_src]
    theta = contact_form_array(points)[..., :2 * n]
    delta = kappa_free - wedge_arrays(beta, theta, 2 * n, k - 1, 1)
    p = k - n
    gamma = lefschetz_invert_array(delta, n, p) / 4.0 ** p
    return beta, gamma


def contact_decompose_pointwise(kappa: Covector, p) -> tuple[Covector, Covector]:
    """Split κ = β ∧ α(p) + γ ∧ (dα)^{k-n} with β, γ free of dt.

    Both outputs are returned as covectors on R^{2n+1} (they simply never use
    the last index). ``p`` is an :class:`~hkit.heisenberg.HPoint` or a raw
    coordinate array.
    """
    coords = p.coords() if hasattr(p, "coords") else np.asarray(p, dtype=float)
    D, k = kappa.ambient_dim, kappa.degree
    if len(coords) != D:
        raise ValueError("point and covector dimensions differ")
    n = (D - 1) // 2
    if D % 2 == 0 or not n + 1 <= k <= 2 * n:
        raise ValueError(f"degree {k} outside [{n + 1}, {2 * n}] or even ambient dim")
    if n > MAX_SYMPLECTIC_HALF_DIM:
        raise PreconditionError(f"n = {n} exceeds the supported cap")
    beta, gamma = contact_decompose_arrays(kappa.to_array(), coords, k)
    return (Covector.from_array(D, k - 1, embed_array(beta, D, k - 1)),
            Covector.from_array(D, 2 * n - k, embed_array(gamma, D, 2 * n - k)))


def contact_reconstruct(beta: Covector, gamma: Covector, p) -> Covector:
    """β ∧ α(p) + γ ∧ (dα)^{k-n}, the inverse of the pointwise decomposition."""
    coords = p.coords() if hasattr(p, "coords") else np.asarray(p, dtype=float)
    D = beta.ambient_dim
    n = (D - 1) // 2
    k = beta.degree + 1
    alpha = Covector.from_array(D, 1, contact_form_array(coords))
    dalpha_pow = symplectic_power(n, k - n, D) * 4.0 ** (k - n)
    return wedge(beta, alpha) + wedge(gamma, dalpha_pow)


def volume_factorial_check(n: int) -> float:
    """|ω^n - n!·vol|, a cheap sanity value for the symplectic conventions."""
    w = symplectic_power(n, n)
    return abs(w.coeffs.get(tuple(range(1, 2 * n + 1)), 0.0) - factorial(n))


# ----------------------------------------------------------------------------
# sampled covector fields and the exact contact decomposition


@dataclass(frozen=True)
class CovectorField:
    """A k-form sampled on a tensor grid of R^D.

    ``axes`` holds one coordinate array per dimension and ``coeffs`` has shape
    ``(len(axes[0]), ..., len(axes[D-1]), C(D, k))``.
    """

    axes: tuple
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        object.__setattr__(self, "axes", axes)
        shape = tuple(len(a) for a in axes) + (comb(len(axes), self.degree),)
        if self.coeffs.shape != shape:
            raise ValueError(f"coeffs shape {self.coeffs.shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return len(self.axes)

    def points(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)

    @classmethod
    def from_function(cls, axes, degree: int, fn) -> "CovectorField":
        """Sample ``fn(points) -> (..., C(D, k))`` on the grid."""
        axes = tuple(np.asarray(a, dtype=float) for a in axes)
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(axes, degree, np.asarray(fn(pts), dtype=float))


def exterior_derivative_fd(field: CovectorField) -> CovectorField:
    """d of a sampled form by second-order finite differences on every axis."""
    D, k = field.dim, field.degree
    if any(len(a) < 3 for a in field.axes):
        raise PreconditionError("need at least 3 nodes per axis to differentiate")
    if k >= D:
        raise ValueError("d of a top-degree form leaves the exterior algebra")
    grads = np.stack(
        [np.stack(np.gradient(field.coeffs[..., i], *field.axes, edge_order=2), axis=-1)
         for i in range(field.coeffs.shape[-1])], axis=-2)  # (..., C(D,k), D)
    ia, ib, io, sg = wedge_table(D, 1, k)
    out = np.zeros(field.coeffs.shape[:-1] + (comb(D, k + 1),))
    for j in range(len(io)):
        out[..., io[j]] += sg[j] * grads[..., ib[j], ia[j]]
    return CovectorField(field.axes, k + 1, out)


@dataclass(frozen=True)
class ExactContactSplit:
    beta_prime: CovectorField
    gamma_prime: CovectorField


def contact_decompose_exact(kappa: CovectorField) -> ExactContactSplit:
    """Write a sampled k-form as κ = β' ∧ α + d(γ' ∧ α).

    Built from the pointwise split κ = β ∧ α + γ ∧ (dα)^{k-n}: with
    γ̃ = γ ∧ (dα)^{k-n-1} one has γ' = (-1)^k γ̃ and β' = β - (-1)^k dγ̃, where d
    is taken by finite differences. For top-degree κ the split is already
    β ∧ α and γ' = 0.
    """
    D, k = kappa.dim, kappa.degree
    n = (D - 1) // 2
    if D % 2 == 0 or not n + 1 <= k <= 2 * n + 1:
        raise ValueError(f"degree {k} outside [{n + 1}, {2 * n + 1}]")
    if any(len(a) < 3 for a in kappa.axes):
        raise PreconditionError("grid too coarse: need at least 3 nodes per axis")
    pts = kappa.points()
    beta, gamma = contact_decompose_arrays(kappa.coeffs, pts, k)
    beta = embed_array(beta, D, k - 1)
    if k == 2 * n + 1:
        zero = np.zeros(pts.shape[:-1] + (comb(D, k - 2),))
        return ExactContactSplit(CovectorField(kappa.axes, k - 1, beta),
                                 CovectorField(kappa.axes, k - 2, zero))
    p = k - n - 1
    if p > 0:
        wp = symplectic_power(n, p).to_array() * 4.0 ** p
        gamma = wedge_arrays(gamma, wp, 2 * n, 2 * n - k, 2 * p)
    gamma_t = CovectorField(kappa.axes, k - 2, embed_array(gamma, D, k - 2))
    sign = -1.0 if k % 2 else 1.0
    dg = exterior_derivative_fd(gamma_t).coeffs
    return ExactContactSplit(
        CovectorField(kappa.axes, k - 1, beta - sign * dg),
        CovectorField(kappa.axes, k - 2, sign * gamma_t.coeffs))


def exact_split_residual(kappa: CovectorField, split: ExactContactSplit) -> float:
    """max |κ - β' ∧ α - d(γ' ∧ α)| over the grid (d by finite differences)."""
    D, k = kappa.dim, kappa.degree
    alpha = contact_form_array(kappa.points())
    ga = wedge_arrays(split.gamma_prime.coeffs, alpha, D, k - 2, 1)
    d_ga = exterior_derivative_fd(CovectorField(kappa.axes, k - 1, ga)).coeffs
    ba = wedge_arrays(split.beta_prime.coeffs, alpha, D, k - 1, 1)
    return float(np.abs(kappa.coeffs - ba - d_ga).max())
