import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkit import hodge
from hkit.hodge import FourierForm

seeds = st.integers(0, 2 ** 32 - 1)


def form(seed, k, l, M=4, **kw):
    return hodge.random_form(k, l, M, np.random.default_rng(seed), **kw)


def test_symbols_compose_to_zero():
    assert hodge.nilpotency_defect(2, 6) == (0, 0)
    assert hodge.nilpotency_defect(3, 4) == (0, 0)


def test_derivative_of_sine():
    # f = sin 2πx on T²; df = 2π cos 2πx dx
    N = 16
    x = np.arange(N) / N
    X, _ = np.meshgrid(x, x, indexing="ij")
    f = FourierForm.from_grid(np.sin(2 * np.pi * X)[..., None], 0, 4)
    df = hodge.d_spectral(f).to_grid(N)
    assert np.allclose(df[..., 0], 2 * np.pi * np.cos(2 * np.pi * X), atol=1e-12)
    assert np.allclose(df[..., 1], 0, atol=1e-12)


def test_codifferential_is_minus_divergence():
    N = 16
    x = np.arange(N) / N
    X, Y = np.meshgrid(x, x, indexing="ij")
    w = FourierForm.from_grid(np.stack([np.sin(2 * np.pi * X), np.cos(2 * np.pi * Y)], -1), 1, 4)
    div = 2 * np.pi * np.cos(2 * np.pi * X) - 2 * np.pi * np.sin(2 * np.pi * Y)
    assert np.allclose(hodge.delta_spectral(w).to_grid(N)[..., 0], -div, atol=1e-12)


def test_operator_domain_errors():
    with pytest.raises(ValueError):
        hodge.d_spectral(FourierForm.zero(2, 2, 2))
    with pytest.raises(ValueError):
        hodge.delta_spectral(FourierForm.zero(2, 0, 2))


@given(seeds, st.sampled_from([(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (3, 3)]))
def test_laplacian_symbol(seed, kl):
    k, l = kl
    w = form(seed, k, l)
    lap = hodge.laplacian(w).coeffs
    expect = hodge.laplace_symbol(k, w.M)[..., None] * w.coeffs
    assert np.allclose(lap, expect, rtol=1e-12, atol=1e-10)


@given(seeds, st.sampled_from([(2, 0), (2, 1), (2, 2), (3, 1), (3, 2)]))
def test_decomposition_invariants(seed, kl):
    k, l = kl
    w = form(seed, k, l)
    split = hodge.hodge_decompose(w)
    rep = hodge.split_report(w, split)
    assert rep.reconstruction < 1e-12
    assert rep.orthogonality < 1e-12
    assert rep.pythagoras < 1e-10
    assert rep.side_conditions < 1e-10
    assert hodge.poincare_potential_ratio(split) <= 1 / (2 * np.pi) + 1e-12


@given(seeds, st.integers(2, 3), st.data())
def test_star_star(seed, k, data):
    l = data.draw(st.integers(0, k))
    w = form(seed, k, l)
    assert np.array_equal(hodge.star(hodge.star(w)).coeffs, (-1) ** (l * (k - l)) * w.coeffs)


def test_random_form_is_real():
    w = form(1, 3, 2)
    assert w.symmetry_defect() < 1e-15
    assert np.abs(np.fft.ifftn(np.zeros(1))).max() == 0
    grid = w.to_grid(12)
    back = FourierForm.from_grid(grid, 2, 4)
    assert np.allclose(back.coeffs, w.coeffs, atol=1e-12)


def test_json_roundtrip_and_validation():
    w = form(2, 2, 1, M=3)
    back = FourierForm.from_json(w.to_json())
    assert np.array_equal(back.coeffs, w.coeffs)
    bad = w.to_json()
    bad["components"]["9,9"] = []
    with pytest.raises(ValueError):
        FourierForm.from_json(bad)
    with pytest.raises(ValueError):
        FourierForm(2, 1, 3, np.zeros((7, 7, 1)))


def test_gaffney_flags_harmonic_forms():
    corpus = [form(s, 2, 1, mean_zero=True) for s in range(5)] + [form(99, 2, 1)]
    rep = hodge.gaffney_check(corpus)
    assert rep.flagged == (5,)
    assert rep.poincare_max == np.inf
    clean = hodge.gaffney_check(corpus[:5])
    assert 1.0 <= clean.gaffney_min <= clean.gaffney_max <= np.sqrt(3)
    assert np.isfinite(clean.poincare_max)
