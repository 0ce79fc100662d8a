import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkit.errors import PreconditionError, YoungConditionError
from hkit.holder import SampledPath, weierstrass_path
from hkit.young import (extrapolate, fourier_block_bounds, young_bound_check, young_integral,
                        young_mollified, young_rs)

SIN_DEXP = (np.e * (np.sin(1.0) - np.cos(1.0)) + 1.0) / 2.0   # ∫_0^1 sin x e^x dx


def smooth_pair(N):
    f = SampledPath.from_function(np.sin, 0.0, 1.0, N, gamma=1.0)
    g = SampledPath.from_function(np.exp, 0.0, 1.0, N, gamma=1.0)
    return f, g


def test_polygon_integral_is_exact():
    f = SampledPath.from_function(lambda t: t, 0.0, 1.0, 8, gamma=1.0)
    assert young_rs(f, f).value == 0.5


def test_smooth_oracle_both_routes():
    f, g = smooth_pair(2 ** 12)
    rs = young_integral(f, g, "rs", richardson=True)
    mol = young_integral(f, g, "mollified")
    assert rs.value == pytest.approx(SIN_DEXP, abs=1e-10)
    assert mol.value == pytest.approx(SIN_DEXP, abs=1e-6)
    assert young_rs(f, g).error_estimate > 0


def test_young_condition_enforced():
    f, g = smooth_pair(64)
    with pytest.raises(YoungConditionError):
        young_rs(f, g, alpha=0.5, beta=0.5)
    with pytest.raises(ValueError):
        young_integral(f, g, "simpson")


def test_missing_exponent_warns_and_estimates():
    f = SampledPath.from_function(np.sin, 0.0, 1.0, 256)
    with pytest.warns(UserWarning):
        r = young_rs(f, f)
    assert r.value == pytest.approx(np.sin(1.0) ** 2 / 2, abs=1e-5)


def test_eps_sequence_must_decrease():
    f, g = smooth_pair(256)
    with pytest.raises(PreconditionError):
        young_mollified(f, g, eps_sequence=[0.01, 0.02])


@given(st.integers(0, 2 ** 32 - 1), st.floats(0.55, 0.95))
def test_summation_by_parts(seed, gamma):
    # trapezoid sums satisfy ∫ f dg + ∫ g df = fg|_a^b exactly
    p = weierstrass_path(gamma, terms=8, N=256, d=2, seed=seed)
    f, g = p.component(0), p.component(1)
    lhs = young_rs(f, g).value + young_rs(g, f).value
    rhs = f.values[-1, 0] * g.values[-1, 0] - f.values[0, 0] * g.values[0, 0]
    assert lhs == pytest.approx(rhs, abs=1e-12)


@given(st.integers(0, 2 ** 32 - 1), st.floats(-3, 3))
def test_linearity_in_integrand(seed, c):
    p = weierstrass_path(0.8, terms=8, N=256, d=3, seed=seed)
    f1, f2, g = (p.component(j) for j in range(3))
    combo = SampledPath(p.times, f1.values + c * f2.values, 0.8)
    lhs = young_rs(combo, g).value
    rhs = young_rs(f1, g).value + c * young_rs(f2, g).value
    assert lhs == pytest.approx(rhs, abs=1e-12 * (1 + abs(c)) * 10)


def test_extrapolate_recovers_power_law():
    eps = 2.0 ** -np.arange(3, 8)
    vals = 1.5 + 0.7 * eps ** 1.3
    limit, rate = extrapolate(eps, vals, 0.5)
    assert limit == pytest.approx(1.5, abs=1e-6)
    assert rate == pytest.approx(1.3, abs=1e-6)


def test_bound_check_on_weierstrass():
    p = weierstrass_path(0.7, terms=10, N=2048, d=2, seed=2)
    f = SampledPath(p.times, p.values[:, 0] - p.values[0, 0], 0.7)
    g = p.component(1)
    b = young_bound_check(f, g, 0.7, 0.7)
    assert 0 < b.ratio < 1 + 1 / (1 - 2 ** (1 - 1.4))
    with pytest.raises(PreconditionError):
        young_bound_check(SampledPath(p.times, p.values[:, 0] + 10, 0.7), g, 0.7, 0.7)


def test_fourier_blocks_of_pure_tone():
    f = SampledPath.from_function(lambda t: np.cos(2 * np.pi * 4 * t), 0.0, 1.0, 256)
    blocks = fourier_block_bounds(f, 0.5)
    energy = [b.block_energy for b in blocks]
    # cos has two coefficients of 1/2 in the block 4 <= |n| < 8
    assert energy[2] == pytest.approx(0.5, abs=1e-14)
    assert sum(energy) == pytest.approx(0.5, abs=1e-14)
    assert all(b.ratio <= 1 for b in blocks)
