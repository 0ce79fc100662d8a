import numpy as np
import pytest

from hkit.errors import PreconditionError, YoungConditionError
from hkit.exterior import Covector
from hkit.holder import GridMap, SampledPath, weierstrass_path
from hkit.horizontal import (cumulative_height, decay_exponent_fit, enclosed_area_sum, height_change,
                             horizontal_lift_curve, horizontality_residual, koranyi_holder_ratio,
                             lift_map, plaquette_sums, pullback_alpha_mollified, step_areas)
from hkit.planar import circle


def test_circle_lift_height_oracle():
    N = 256
    lift = horizontal_lift_curve(circle(N).path, t0=1.0)
    polygon_area = 0.5 * N * np.sin(2 * np.pi / N)
    assert lift.values[-1, -1] - 1.0 == pytest.approx(-4 * polygon_area, abs=1e-12)
    assert horizontality_residual(lift) < 1e-14


def test_lift_requires_exponent_above_half():
    p = weierstrass_path(0.4, terms=6, N=64, d=2)
    with pytest.raises(YoungConditionError):
        horizontal_lift_curve(p)


def test_non_horizontal_path_has_residual():
    t = np.linspace(0, 1, 33)
    path = SampledPath(t, np.stack([t, 0 * t, t], -1), 1.0)
    assert horizontality_residual(path) == pytest.approx(1.0)


def test_height_change_routes_agree():
    planar = weierstrass_path(0.8, terms=8, N=2 ** 12, d=2, seed=5)
    rs = height_change(planar)
    mol = height_change(planar, method="mollified")
    assert rs.value == pytest.approx(mol.value, abs=5e-3 * max(1.0, abs(rs.value)))
    with pytest.raises(ValueError):
        height_change(planar, a=0.123456)


def test_richardson_height_matches_plain_for_polygon_samples():
    t = np.linspace(0, 1, 9)
    pts = np.stack([t, t ** 2], -1)
    plain = cumulative_height(pts)
    rich = cumulative_height(pts, richardson=True)
    assert plain.shape == rich.shape == (9,)
    # -2 ∫_0^1 x dy - y dx with x = t, y = t²; the chord error is pure h², so
    # one Richardson step is exact
    exact = -2 / 3
    assert plain[-1] == pytest.approx(-0.65625, abs=1e-15)
    assert rich[-1] == pytest.approx(exact, abs=1e-14)


def test_enclosed_area_matches_lift_height():
    planar = weierstrass_path(0.8, terms=8, N=2 ** 11, d=2, seed=1)
    lift = horizontal_lift_curve(planar)
    area = enclosed_area_sum(planar, resolution=1024)
    assert lift.values[-1, -1] - lift.values[0, -1] == pytest.approx(-4 * area, abs=2e-2)


def test_koranyi_ratio_is_finite():
    lift = horizontal_lift_curve(weierstrass_path(0.75, terms=6, N=256, d=2, seed=0))
    assert 0 < koranyi_holder_ratio(lift, 0.5) < np.inf


def test_curl_free_map_lifts():
    f = GridMap.from_function(lambda P: np.stack([np.sin(P[..., 0] + P[..., 1]), 0 * P[..., 0]], -1),
                              (0, 0), (1, 1), (17, 17), 1.0)
    res = lift_map(f)
    assert res.ok and res.tree_deviation < 1e-14
    assert res.lift.target_dim == 3


def test_identity_map_is_obstructed():
    f = GridMap.from_function(lambda P: P, (0, 0), (1, 1), (9, 9), 1.0)
    res = lift_map(f)
    assert not res.ok and res.obstruction.kind == "plaquette"
    # every cell encloses its own area, 1/64
    assert res.max_plaquette_area == pytest.approx(1 / 64, abs=1e-15)
    assert np.allclose(plaquette_sums(f.values), -4 / 64)


def test_step_areas_oracle():
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    assert step_areas(pts).tolist() == [1.0, 1.0]


def test_smooth_horizontal_map_has_small_pullback():
    t = np.linspace(0, 1, 2049)
    planar = SampledPath(t, np.stack([np.cos(2 * np.pi * t), np.sin(4 * np.pi * t)], -1), 1.0)
    lift = horizontal_lift_curve(planar)
    f = GridMap((0.0,), (1.0,), lift.values, 1.0)
    # for smooth horizontal data the commutator is O(ε²)
    a = pullback_alpha_mollified(f, 2 ** -6, margin=2 ** -5).sup_norm()
    b = pullback_alpha_mollified(f, 2 ** -7, margin=2 ** -5).sup_norm()
    assert 3.5 < a / b < 4.5


def test_decay_fit_preconditions():
    lift = horizontal_lift_curve(weierstrass_path(0.75, terms=8, N=2 ** 11, d=2, seed=0))
    f = GridMap((0.0,), (1.0,), lift.values)
    with pytest.raises(PreconditionError):
        decay_exponent_fit(f, "contact", 2.0 ** -np.arange(4, 11))
    with pytest.raises(PreconditionError):
        decay_exponent_fit(f, "contact", [2 ** -4, 2 ** -5, 2 ** -6, 2 ** -7], gamma_declared=0.75)
    rep = decay_exponent_fit(f, Covector.basis_element(3, 3), 2.0 ** -np.arange(3, 10),
                             gamma_declared=0.75)
    assert rep.form == "generic_k_form" and rep.reference_slope == pytest.approx(-0.25)
    assert "fitted slope" in rep.limitation
