import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkit.exterior import evaluate
from hkit.heisenberg import (HPoint, contact_form_at, dilate, dilate_arrays, group_inv, group_mul,
                             koranyi_arrays, koranyi_dist, left_invariant_frame, metric_comparison_check,
                             mul_arrays, phi_arrays)

seeds = st.integers(0, 2 ** 32 - 1)


def points(seed, n, count, scale=1.0):
    return np.random.default_rng(seed).standard_normal((count, 2 * n + 1)) * scale


# --- frozen oracles ---------------------------------------------------------

def test_group_law_values():
    p, q = HPoint([1.0, 0.0], 0.0), HPoint([0.0, 1.0], 0.0)
    assert group_mul(p, q).coords().tolist() == [1.0, 1.0, -2.0]
    assert group_mul(q, p).coords().tolist() == [1.0, 1.0, 2.0]


def test_phi_sign():
    # phi(p, q) is the height of q^{-1} p
    p, q = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    assert phi_arrays(p, q) == -2.0
    assert mul_arrays(-q, p)[-1] == -2.0
    assert phi_arrays(q, p) == 2.0


def test_distance_values():
    o = HPoint.identity(1)
    assert koranyi_dist(o, HPoint([0, 0], 1.0)).koranyi == 1.0
    assert koranyi_dist(o, HPoint([3, 4], 0.0)).koranyi == 5.0
    r = koranyi_dist(HPoint([1, 0], 0.0), HPoint([0, 1], 0.0))
    assert (r.euclid, r.phi) == (np.sqrt(2), -2.0)
    assert r.koranyi == pytest.approx(8 ** 0.25)


def test_inverse_and_identity():
    p = HPoint([1.5, -2.0, 0.3, 4.0], 7.0)
    e = HPoint.identity(2)
    assert np.array_equal(group_mul(p, group_inv(p)).coords(), e.coords())
    assert np.array_equal(group_mul(e, p).coords(), p.coords())


def test_dilation_values():
    assert dilate(HPoint([1.0, 2.0], 3.0), 2.0).coords().tolist() == [2.0, 4.0, 12.0]
    with pytest.raises(ValueError):
        dilate_arrays(np.zeros(3), -1.0)
    out = dilate_arrays(np.ones((2, 3)), np.array([[1.0], [3.0]]))
    assert out.tolist() == [[1, 1, 1], [3, 3, 9]]


def test_hpoint_validation_and_json():
    with pytest.raises(ValueError):
        HPoint([1.0], 0.0)
    with pytest.raises(ValueError):
        HPoint([np.inf, 0.0], 0.0)
    p = HPoint([1.0, 2.0], 3.0)
    assert np.array_equal(HPoint.from_json(p.to_json()).coords(), p.coords())
    with pytest.raises(ValueError):
        koranyi_dist(p, HPoint.identity(2))


def test_contact_form_kills_horizontal_frame():
    p = HPoint([0.3, -1.2, 2.0, 0.5], 4.0)
    alpha = contact_form_at(p)
    F = left_invariant_frame(p)
    vals = [evaluate(alpha, F[i]) for i in range(5)]
    assert vals[:4] == pytest.approx([0, 0, 0, 0], abs=1e-15)
    assert vals[4] == 1.0


# --- invariants -------------------------------------------------------------

@given(st.integers(1, 3), seeds)
def test_associativity(n, seed):
    p, q, r = points(seed, n, 3)
    lhs = mul_arrays(mul_arrays(p, q), r)
    rhs = mul_arrays(p, mul_arrays(q, r))
    assert np.allclose(lhs, rhs, atol=1e-12)


@given(st.integers(1, 3), seeds)
def test_left_invariance(n, seed):
    P = points(seed, n, 3)
    g, p, q = P
    d0 = koranyi_arrays(p, q)
    d1 = koranyi_arrays(mul_arrays(g, p), mul_arrays(g, q))
    assert d1 == pytest.approx(d0, rel=1e-12, abs=1e-13)


@given(st.integers(1, 3), seeds)
def test_distance_is_gauge_of_quotient(n, seed):
    p, q = points(seed, n, 2)
    u = mul_arrays(-q, p)
    gauge = (((u[:-1] ** 2).sum()) ** 2 + u[-1] ** 2) ** 0.25
    assert koranyi_arrays(p, q) == pytest.approx(gauge, rel=1e-12)


@given(st.integers(1, 3), seeds, st.floats(0.01, 100.0))
def test_dilation_homogeneity(n, seed, r):
    p, q = points(seed, n, 2)
    d = koranyi_arrays(dilate_arrays(p, r), dilate_arrays(q, r))
    assert d == pytest.approx(r * koranyi_arrays(p, q), rel=1e-12)


@given(st.integers(1, 3), seeds)
def test_symmetry_and_triangle(n, seed):
    p, q, r = points(seed, n, 3)
    assert koranyi_arrays(p, q) == koranyi_arrays(q, p)
    assert koranyi_arrays(p, r) <= koranyi_arrays(p, q) + koranyi_arrays(q, r) + 1e-12


def test_metric_comparison_on_unit_ball():
    P = points(4, 1, 400)
    P = P / np.linalg.norm(P, axis=1, keepdims=True) * np.random.default_rng(5).uniform(0, 1, (400, 1))
    lo, hi = metric_comparison_check(P)
    # d ≥ |p-q|·c and d ≤ C |p-q|^{1/2} with constants of order one on the unit ball
    assert 0.1 < lo <= hi < 10
