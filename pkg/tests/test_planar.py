import numpy as np
import pytest

from hkit.errors import OnCurveError, PreconditionError, YoungConditionError
from hkit.holder import SampledPath
from hkit.planar import (ClosedCurve2D, change_of_variables_check, circle, close_curve,
                         oriented_area_green, polar_gridmap, shoelace, winding_field, winding_lp_norm,
                         winding_number, zust_jacobian_square)

SQUARE = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1], [-1, -1]], float)


def test_winding_numbers():
    c = circle(64)
    assert winding_number(c, (0, 0)) == 1
    assert winding_number(c, (2, 0)) == 0
    assert winding_number(c.reversed(), (0.1, 0.2)) == -1
    assert winding_number(circle(64, loops=2), (0, 0)) == 2
    with pytest.raises(OnCurveError):
        winding_number(c, c.points[3])


def test_open_curve_rejected():
    with pytest.raises(PreconditionError):
        ClosedCurve2D.from_points(SQUARE[:-1])
    assert len(ClosedCurve2D.from_points(SQUARE[:-1], close=True).points) == 5


def test_shoelace_and_square_field():
    assert shoelace(SQUARE) == 4.0
    wf = winding_field(ClosedCurve2D.from_points(SQUARE), 64)
    # cell means are exact for polygons
    assert wf.integral() == pytest.approx(4.0, abs=1e-12)
    assert wf.w.max() == 1 and wf.w.min() == 0


def test_circle_field_integral():
    wf = winding_field(circle(2 ** 12), 256)
    polygon = 0.5 * 2 ** 12 * np.sin(2 * np.pi / 2 ** 12)
    assert wf.integral() == pytest.approx(polygon, abs=1e-9)
    assert wf.center_integral() == pytest.approx(np.pi, abs=wf.mask_area())


def test_lp_norm_range_warning():
    c = circle(256)
    assert winding_lp_norm(c, 1.0, 128) == pytest.approx(np.pi, rel=1e-2)
    bent = ClosedCurve2D(SampledPath(c.path.times, c.points, 0.6))
    with pytest.warns(UserWarning):
        winding_lp_norm(bent, 1.5, 64)


def test_green_on_polygon_and_circle():
    sq = ClosedCurve2D(SampledPath(np.linspace(0, 1, 5), SQUARE, 1.0))
    assert oriented_area_green(sq).value == 4.0
    r = oriented_area_green(circle(2 ** 12), method="both")
    assert r.by_method["rs"][0] == pytest.approx(np.pi, abs=1e-5)
    assert r.by_method["mollified"][0] == pytest.approx(np.pi, abs=1e-5)
    with pytest.raises(YoungConditionError):
        oriented_area_green(sq, alpha=0.5)


def test_close_curve_adds_no_area():
    t = np.linspace(0, 1, 65)
    arc = SampledPath(t, np.stack([np.cos(np.pi * t), np.sin(np.pi * t)], -1), 1.0)
    closed = close_curve(arc)
    # half disk: the radial segments through the origin add nothing
    assert shoelace(closed.points) == pytest.approx(shoelace(np.vstack([arc.values, arc.values[:1]])),
                                                    abs=1e-14)
    assert closed.path.is_uniform()


def test_jacobian_square_identity_and_weight():
    n = 64
    x = np.linspace(0, 1, n + 1)
    X, Y = np.meshgrid(x, x, indexing="ij")
    r = zust_jacobian_square(np.ones_like(X), X, Y)
    assert all(lv["value"] == pytest.approx(1.0, abs=1e-13) for lv in r.levels)
    # ∫ x over the square; center tags make every level exact
    r = zust_jacobian_square(X, X, Y)
    assert r.value == pytest.approx(0.5, abs=1e-13)
    with pytest.raises(ValueError):
        zust_jacobian_square(X[:-1, :-1], X[:-1, :-1], Y[:-1, :-1])


def test_change_of_variables_identity_disk():
    f = polar_gridmap(lambda X, Y: np.stack([X, Y], -1), 129, 128, 1.0)
    cov = change_of_variables_check(f, resolution=512)
    assert cov.lhs == pytest.approx(np.pi, rel=1e-4)
    assert cov.gap < 1e-3
