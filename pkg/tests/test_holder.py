import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkit.errors import PreconditionError
from hkit.holder import (GridMap, MollifierKernel, SampledPath, concave_modulus,
                         estimate_holder_exponent, gagliardo_extend, holder_seminorm, mollify,
                         mollify_derivative, weierstrass_field, weierstrass_path)


def test_sampled_path_validation():
    with pytest.raises(ValueError):
        SampledPath([0.0], [1.0])
    with pytest.raises(ValueError):
        SampledPath([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        SampledPath([0.0, 1.0], [1.0, np.nan])
    with pytest.raises(PreconditionError):
        SampledPath([0.0, 0.1, 1.0], [0.0, 1.0, 2.0]).spacing()


def test_gridmap_validation():
    with pytest.raises(ValueError):
        GridMap((0.0,), (0.0,), np.zeros(4))
    g = GridMap((0.0, 0.0), (1.0, 2.0), np.zeros((3, 5)))
    assert g.target_dim == 1 and g.spacing().tolist() == [0.5, 0.5]


def test_sqrt_seminorm_is_one():
    f = SampledPath.from_function(np.sqrt, 0.0, 1.0, 256)
    assert holder_seminorm(f, 0.5) == pytest.approx(1.0, abs=1e-12)


def test_linear_path_lipschitz_constant():
    f = SampledPath.from_function(lambda t: 3 * t, 0.0, 2.0, 64)
    assert holder_seminorm(f, 1.0) == pytest.approx(3.0, rel=1e-12)


def test_grid_seminorm_of_linear_map():
    f = GridMap.from_function(lambda P: 2 * P[..., 0] - P[..., 1], (0, 0), (1, 1), (9, 9))
    assert holder_seminorm(f, 1.0) == pytest.approx(np.sqrt(5), rel=1e-12)


def test_kernel_weights_normalized():
    k = MollifierKernel()
    z, w, d = k.weights_1d(0.01, 0.1)
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    # derivative weights differentiate a linear function exactly
    assert (d * z).sum() == pytest.approx(-1.0, abs=1e-12) or (d * z).sum() == pytest.approx(1.0, abs=1e-12)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.02, 0.2))
def test_mollify_preserves_affine(a, b, eps):
    f = SampledPath.from_function(lambda t: a * t + b, 0.0, 1.0, 512)
    fe = mollify(f, eps, mode="reflect").values[:, 0]
    dfe = mollify_derivative(f, eps, mode="reflect").values[:, 0]
    inner = slice(int(eps * 512) + 1, -int(eps * 512) - 1)
    assert np.allclose(fe[inner], (a * f.times + b)[inner], atol=1e-12)
    assert np.allclose(dfe[inner], a, atol=1e-10)


def test_concave_modulus_oracle():
    m = concave_modulus([1.0, 2.0, 3.0], [1.0, 1.0, 3.0])
    assert m.knots_t.tolist() == [0.0, 3.0]
    assert m(2.0) == pytest.approx(2.0)


@given(st.lists(st.floats(0, 10), min_size=2, max_size=20))
def test_concave_modulus_majorizes(incs):
    w = np.cumsum(incs)
    t = np.arange(1, len(w) + 1, dtype=float)
    m = concave_modulus(t, w)
    assert np.all(m(t) >= w - 1e-9)
    slopes = np.diff(m.knots_w) / np.diff(m.knots_t)
    assert np.all(np.diff(slopes) <= 1e-9)


def test_weierstrass_path_shape_and_period():
    p = weierstrass_path(0.6, terms=8, N=1024, d=2, seed=3)
    assert p.values.shape == (1025, 2) and p.gamma == 0.6
    assert np.allclose(p.values[0], p.values[-1], atol=1e-12)
    with pytest.raises(ValueError):
        weierstrass_path(1.2)


def test_exponent_estimate():
    p = weierstrass_path(0.6, terms=14, N=2 ** 14, seed=1)
    assert estimate_holder_exponent(p) == pytest.approx(0.6, abs=0.1)


def test_weierstrass_field_deterministic():
    P = np.random.default_rng(0).uniform(size=(10, 2))
    a = weierstrass_field(P, 0.7, seed=9, components=2)
    assert a.shape == (10, 2) and np.array_equal(a, weierstrass_field(P, 0.7, seed=9, components=2))


def test_gagliardo_extension_recovers_boundary_values():
    f = SampledPath.from_function(lambda t: np.sin(np.pi * t) ** 2, 0.0, 1.0, 1024)
    ext = gagliardo_extend(f, R_cut=0.2, n_levels=16, t_min=4 / 1024,
                           with_gradient=True)
    # the finest level is a light mollification of f
    assert np.abs(ext.values[0] - f.values[:, 0]).max() < 1e-4
    assert ext.as_gridmap().shape == (16, 1025)
    # the cutoff kills the top level
    assert np.abs(ext.values[-1]).max() == 0.0
