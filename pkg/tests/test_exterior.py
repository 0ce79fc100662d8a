from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkit.errors import PreconditionError
from hkit.exterior import (Covector, CovectorField, basis, contact_decompose_exact,
                           contact_decompose_pointwise, contact_reconstruct, evaluate,
                           exact_split_residual, exterior_derivative_fd, hodge_star, inner,
                           interior_product, lefschetz_apply, lefschetz_invert, permutation_sign,
                           symplectic_power, volume_factorial_check, wedge)


def random_covector(seed: int, n: int, k: int) -> Covector:
    r = np.random.default_rng(seed)
    return Covector.from_array(n, k, r.standard_normal(comb(n, k)))


dims = st.integers(1, 6)


@st.composite
def covector_pair(draw):
    n = draw(dims)
    k = draw(st.integers(0, n))
    l = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_covector(seed, n, k), random_covector(seed + 1, n, l)


# --- frozen oracles ---------------------------------------------------------

def test_basis_sizes_and_order():
    assert basis(4, 2) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert len(basis(7, 3)) == 35


def test_permutation_sign_values():
    assert permutation_sign((1, 2, 3)) == 1
    assert permutation_sign((2, 1, 3)) == -1
    assert permutation_sign((3, 1, 2)) == 1
    assert permutation_sign((1, 1)) == 0


def test_basis_element_antisymmetry():
    assert Covector.basis_element(3, 2, 1).coeffs == {(1, 2): -1.0}
    assert Covector.basis_element(3, 1, 1).is_zero()


def test_wedge_of_basis_elements():
    dx1, dx2, dx3 = (Covector.basis_element(3, i) for i in (1, 2, 3))
    assert wedge(dx2, dx1).coeffs == {(1, 2): -1.0}
    assert wedge(wedge(dx3, dx1), dx2).coeffs == {(1, 2, 3): 1.0}


def test_wedge_overflow_is_flagged_zero():
    a = Covector.basis_element(2, 1, 2)
    out = wedge(a, Covector.basis_element(2, 1))
    assert out.overflow and out.is_zero()


def test_hodge_star_values_in_r3():
    dx1 = Covector.basis_element(3, 1)
    dx2 = Covector.basis_element(3, 2)
    assert hodge_star(dx1).coeffs == {(2, 3): 1.0}
    assert hodge_star(dx2).coeffs == {(1, 3): -1.0}
    assert hodge_star(Covector.scalar(3, 2.0)).coeffs == {(1, 2, 3): 2.0}


def test_evaluate_determinant():
    vol = Covector.basis_element(3, 1, 2, 3)
    M = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 3.0], [4.0, 0.0, 1.0]])
    assert evaluate(vol, *M) == pytest.approx(np.linalg.det(M), abs=1e-12)


def test_symplectic_volume_is_n_factorial():
    for n in range(1, 5):
        assert volume_factorial_check(n) == 0.0
        assert symplectic_power(n, n).coeffs[tuple(range(1, 2 * n + 1))] == factorial(n)


def test_contact_split_of_dx_dy_at_origin():
    # dα = 4 dx∧dy, so dx∧dy = (1/4) dα and the dt-part β vanishes
    beta, gamma = contact_decompose_pointwise(Covector.basis_element(3, 1, 2), np.zeros(3))
    assert beta.is_zero()
    assert gamma.coeffs == {(): 0.25}


def test_contact_split_of_dx_dt_at_origin():
    beta, gamma = contact_decompose_pointwise(Covector.basis_element(3, 1, 3), np.zeros(3))
    assert beta.coeffs == {(1,): 1.0}
    assert gamma.is_zero()


def test_covector_validation():
    with pytest.raises(ValueError):
        Covector(3, 2, {(2, 1): 1.0})
    with pytest.raises(ValueError):
        Covector(3, 1, {(4,): 1.0})
    with pytest.raises(ValueError):
        Covector(3, 1, {(1,): np.nan})


def test_json_roundtrip():
    a = random_covector(3, 5, 2)
    assert Covector.from_json(a.to_json()) == a


# --- algebraic invariants ---------------------------------------------------

@given(covector_pair())
def test_graded_commutativity(pair):
    a, b = pair
    if a.degree + b.degree > a.ambient_dim:
        return
    ab, ba = wedge(a, b), wedge(b, a)
    sign = (-1) ** (a.degree * b.degree)
    assert np.abs(ab.to_array() - sign * ba.to_array()).max(initial=0) <= 1e-12 * max(1, ab.norm())


@given(st.integers(2, 6), st.integers(0, 2 ** 32 - 1))
def test_associativity(n, seed):
    r = np.random.default_rng(seed)
    k, l, m = (int(x) for x in r.integers(0, 3, size=3))
    if k + l + m > n:
        return
    a, b, c = (random_covector(seed + i, n, d) for i, d in enumerate((k, l, m)))
    lhs = wedge(wedge(a, b), c).to_array()
    rhs = wedge(a, wedge(b, c)).to_array()
    assert np.allclose(lhs, rhs, atol=1e-12)


@given(dims, st.integers(0, 2 ** 32 - 1), st.data())
def test_star_star_sign(n, seed, data):
    k = data.draw(st.integers(0, n))
    a = random_covector(seed, n, k)
    twice = hodge_star(hodge_star(a))
    assert np.array_equal(twice.to_array(), (-1) ** (k * (n - k)) * a.to_array())


@given(dims, st.integers(0, 2 ** 32 - 1), st.data())
def test_star_defines_inner_product(n, seed, data):
    k = data.draw(st.integers(0, n))
    a, b = random_covector(seed, n, k), random_covector(seed + 7, n, k)
    top = wedge(a, hodge_star(b)).coeffs.get(tuple(range(1, n + 1)), 0.0)
    assert top == pytest.approx(inner(a, b), abs=1e-12 * (1 + a.norm() * b.norm()))


@given(covector_pair(), st.integers(0, 2 ** 32 - 1))
def test_interior_product_is_antiderivation(pair, seed):
    a, b = pair
    n, k = a.ambient_dim, a.degree
    if k == 0 or b.degree == 0 or k + b.degree > n:
        return
    v = np.random.default_rng(seed).standard_normal(n)
    lhs = interior_product(v, wedge(a, b)).to_array()
    rhs = (wedge(interior_product(v, a), b).to_array()
           + (-1) ** k * wedge(a, interior_product(v, b)).to_array())
    assert np.allclose(lhs, rhs, atol=1e-11)


@given(st.integers(1, 4), st.integers(0, 2 ** 32 - 1), st.data())
def test_lefschetz_roundtrip(n, seed, data):
    p = data.draw(st.integers(1, n))
    a = random_covector(seed, 2 * n, n - p)
    back = lefschetz_invert(lefschetz_apply(a, p), p)
    assert np.allclose(back.to_array(), a.to_array(), atol=1e-10)


@given(st.integers(1, 3), st.integers(0, 2 ** 32 - 1), st.data())
def test_contact_split_reconstructs(n, seed, data):
    D = 2 * n + 1
    k = data.draw(st.integers(n + 1, 2 * n))
    kappa = random_covector(seed, D, k)
    p = np.random.default_rng(seed + 1).standard_normal(D) * 3
    beta, gamma = contact_decompose_pointwise(kappa, p)
    assert not beta.has_index(D) and not gamma.has_index(D)
    back = contact_reconstruct(beta, gamma, p)
    assert np.abs(back.to_array() - kappa.to_array()).max() <= 1e-12 * max(1.0, kappa.norm()) * (1 + np.abs(p).max()) ** 2


def test_exact_split_on_quadratic_field():
    # finite differences are exact on quadratics, so the residual is rounding only
    ax = [np.linspace(-1, 1, 9)] * 3
    kappa = CovectorField.from_function(
        ax, 2, lambda P: np.stack([P[..., 0] * P[..., 1], P[..., 2] ** 2, 1 + P[..., 0]], -1))
    split = contact_decompose_exact(kappa)
    assert exact_split_residual(kappa, split) < 1e-12


def test_fd_derivative_and_coarse_grid():
    ax = [np.linspace(0, 1, 5)] * 2
    f = CovectorField.from_function(ax, 0, lambda P: (P[..., 0] * P[..., 1])[..., None])
    df = exterior_derivative_fd(f)
    P = f.points()
    assert np.allclose(df.coeffs, np.stack([P[..., 1], P[..., 0]], -1))
    with pytest.raises(PreconditionError):
        exterior_derivative_fd(CovectorField.from_function([np.arange(2.0)] * 2, 0,
                                                           lambda P: P[..., :1]))
