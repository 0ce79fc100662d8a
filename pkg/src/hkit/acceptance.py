"""The acceptance suite: one function per criterion, shared by the tests and ``hkit verify``.

Every check returns :class:`Check` rows carrying the measured value, the
pinned tolerance and the comparison used. Tolerances live in
``DEFAULT_TOLERANCES`` and can be overridden per key (unknown keys are
rejected), which is how a tampered fixture produces a targeted failure.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from . import hodge
from .exterior import (Covector, CovectorField, contact_decompose_exact, contact_decompose_pointwise,
                       contact_reconstruct, exact_split_residual, hodge_star, interior_product,
                       lefschetz_apply, lefschetz_invert, symplectic_form, symplectic_power, wedge)
from .heisenberg import dilate_arrays, inv_arrays, koranyi_arrays, mul_arrays
from .holder import GridMap, SampledPath, holder_seminorm, weierstrass_field, weierstrass_path
from .horizontal import (decay_exponent_fit, enclosed_area_sum, height_change, horizontal_lift_curve,
                         lift_map)
from .planar import (ClosedCurve2D, change_of_variables_check, circle, close_curve, oriented_area_green,
                     polar_gridmap, winding_field)
from .young import fourier_block_bounds, young_bound_check, young_mollified, young_rs

DEFAULT_TOLERANCES = {
    "exterior.residual": 1e-12,
    "contact.pointwise_residual": 1e-12,
    "contact.min_order": 1.8,
    "metric.triangle_slack": 1e-12,
    "metric.dilation_rel": 1e-13,
    "metric.left_invariance": 1e-12,
    "young.smooth_abs": 1e-8,
    "young.cross_method_rel": 1e-3,
    "young.corpus_constant": 1.0 + 1.0 / (1.0 - 2.0 ** (1.0 - 1.2)),
    "young.block_ratio": 4.0,
    "green.circle_abs": 1e-8,
    "green.perturbed_rel": 1e-2,
    "jacobian.identity_abs": 1e-6,
    "jacobian.perturbed_rel": 1e-2,
    "lift.circle_abs": 1e-6,
    "lift.gap_over_bound": 1.0,
    "lift.uniqueness": 1e-9,
    "obstruction.area_abs": 1e-3,
    "obstruction.tree_deviation": 1e-6,
    "decay.contact_min_slope": 0.4,
    "decay.generic_slack": 0.1,
    "decay.vertical_abs": 0.05,
    "hodge.reconstruction": 1e-10,
    "hodge.orthogonality": 1e-10,
    "hodge.pythagoras": 1e-9,
    "hodge.seed_spread": 0.05,
}

SUITES = {1: "exterior", 2: "contact", 3: "metric", 4: "young", 5: "green", 6: "jacobian",
          7: "lift", 8: "obstruction", 9: "decay", 10: "hodge", 11: "determinism"}


@dataclass(frozen=True)
class Check:
    criterion: str
    suite: str
    name: str
    measured: float
    tolerance: float
    comparison: str          # "<=", ">=" or "=="
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        m, t = self.measured, self.tolerance
        if not np.isfinite(m):
            return False
        if self.comparison == "<=":
            return m <= t
        if self.comparison == ">=":
            return m >= t
        return m == t

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.criterion:<4} {self.suite:<12} {self.name}: "
                f"measured {self.measured:.6g} {self.comparison} {self.tolerance:.6g}")

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def merged_tolerances(overrides: dict | None = None) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    if overrides:
        unknown = set(overrides) - set(tol)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update({k: float(v) for k, v in overrides.items()})
    return tol


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def _random_covector(rng, n: int, k: int) -> Covector:
    return Covector.from_array(n, k, rng.standard_normal(comb(n, k)))


# ----------------------------------------------------------------------------
# 1. exterior algebra


def criterion_exterior(seed: int, tol: dict) -> list[Check]:
    rng = _rng(seed, 1)
    worst = {"anticommutativity": 0.0, "star_star": 0.0, "leibniz": 0.0, "contraction_power": 0.0,
             "lefschetz_roundtrip": 0.0}
    for _ in range(1000):
        d = int(rng.integers(1, 10))
        k, l = int(rng.integers(0, d + 1)), int(rng.integers(0, d + 1))
        a, b = _random_covector(rng, d, k), _random_covector(rng, d, l)
        ab, ba = wedge(a, b), wedge(b, a)
        if not ab.overflow:
            worst["anticommutativity"] = max(worst["anticommutativity"],
                                             (ab - ba * (-1) ** (k * l)).norm())
        worst["star_star"] = max(worst["star_star"],
                                 (hodge_star(hodge_star(a)) - a * (-1) ** (k * (d - k))).norm())
        if k >= 1 and l >= 1 and k + l <= d:
            v = rng.standard_normal(d)
            lhs = interior_product(v, ab)
            rhs = wedge(interior_product(v, a), b) + wedge(a, interior_product(v, b)) * (-1) ** k
            worst["leibniz"] = max(worst["leibniz"], (lhs - rhs).norm())
        n = int(rng.integers(1, 5))
        p = int(rng.integers(1, n + 1))
        v = rng.standard_normal(2 * n)
        lhs = interior_product(v, symplectic_power(n, p))
        rhs = wedge(symplectic_power(n, p - 1), interior_product(v, symplectic_form(n))) * p
        worst["contraction_power"] = max(worst["contraction_power"], (lhs - rhs).norm())
        a0 = _random_covector(rng, 2 * n, n - p)
        b0 = _random_covector(rng, 2 * n, n + p)
        r1 = (lefschetz_invert(lefschetz_apply(a0, p), p) - a0).norm()
        r2 = (lefschetz_apply(lefschetz_invert(b0, p), p) - b0).norm()
        worst["lefschetz_roundtrip"] = max(worst["lefschetz_roundtrip"], r1, r2)
    t = tol["exterior.residual"]
    return [Check("1", "exterior", f"{name} max residual, 1000 instances", v, t, "<=")
            for name, v in worst.items()]


# ----------------------------------------------------------------------------
# 2. contact decompositions


def _smooth_kappa(pts: np.ndarray, k: int) -> np.ndarray:
    """A fixed smooth k-form on R^{2n+1} with every basis coefficient populated."""
    D = pts.shape[-1]
    m = comb(D, k)
    c = np.arange(1, m + 1)
    x = pts @ np.linspace(0.7, 1.3, D)
    return np.sin(c * 0.37 + x[..., None]) + 0.5 * np.cos(0.61 * c * pts[..., [0]] - pts[..., [-1]])


def criterion_contact(seed: int, tol: dict) -> list[Check]:
    rng = _rng(seed, 2)
    worst = 0.0
    for _ in range(300):
        n = int(rng.integers(1, 4))
        D = 2 * n + 1
        k = int(rng.integers(n + 1, 2 * n + 1))
        kappa = _random_covector(rng, D, k)
        p = rng.standard_normal(D)
        beta, gamma = contact_decompose_pointwise(kappa, p)
        worst = max(worst, (contact_reconstruct(beta, gamma, p) - kappa).norm())
    out = [Check("2", "contact", "pointwise split reconstruction, 300 instances", worst,
                 tol["contact.pointwise_residual"], "<=")]
    orders = {}
    for n, k in ((1, 2), (1, 3), (2, 3), (2, 4)):
        D = 2 * n + 1
        # grids in R^5 stay small to bound memory
        sizes = (9, 17, 33) if n == 1 else (5, 9, 13)
        errs, hs = [], []
        for N in sizes:
            axes = [np.linspace(-0.5, 0.5, N)] * D
            field_ = CovectorField.from_function(axes, k, lambda P: _smooth_kappa(P, k))
            errs.append(exact_split_residual(field_, contact_decompose_exact(field_)))
            hs.append(1.0 / (N - 1))
        if max(errs) < 1e-13:
            orders[f"n={n},k={k}"] = np.inf        # exact (top degree)
        else:
            orders[f"n={n},k={k}"] = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    finite = [v for v in orders.values() if np.isfinite(v)]
    out.append(Check("2", "contact", "exact split O(h^p) order, worst case", min(finite),
                     tol["contact.min_order"], ">=", {"orders": {k: (v if np.isfinite(v) else "exact")
                                                                 for k, v in orders.items()}}))
    return out


# ----------------------------------------------------------------------------
# 3. Heisenberg metric


def criterion_metric(seed: int, tol: dict) -> list[Check]:
    rng = _rng(seed, 3)
    out = []
    for n in (1, 2):
        D = 2 * n + 1
        P, Q, R = (rng.standard_normal((100_000, D)) * rng.choice([0.01, 1.0, 10.0], (100_000, 1))
                   for _ in range(3))
        dpq, dqp = koranyi_arrays(P, Q), koranyi_arrays(Q, P)
        asym = float(np.abs(dpq - dqp).max())
        dqr, dpr = koranyi_arrays(Q, R), koranyi_arrays(P, R)
        slack = float(((dpr - dpq - dqr) / np.maximum(1.0, dpr)).max())
        r = rng.uniform(0.01, 100.0, (100_000, 1))
        dil = koranyi_arrays(dilate_arrays(P, r), dilate_arrays(Q, r))
        dil_rel = float((np.abs(dil - r[:, 0] * dpq) / np.maximum(r[:, 0] * dpq, 1e-300)).max())
        r2 = 2.0 ** rng.integers(-8, 9, (100_000, 1)).astype(float)
        dil_exact = float(np.abs(koranyi_arrays(dilate_arrays(P, r2), dilate_arrays(Q, r2))
                                 - r2[:, 0] * dpq).max())
        # unit-scale samples: mixed scales put heights in the hundreds, where the
        # cancellation inside the skew term alone costs ~1e-12
        G, P1, Q1 = (rng.standard_normal((100_000, D)) for _ in range(3))
        d1 = koranyi_arrays(P1, Q1)
        inv = float((np.abs(koranyi_arrays(mul_arrays(G, P1), mul_arrays(G, Q1)) - d1)
                     / np.maximum(1.0, d1)).max())
        # q^{-1} p sanity: d(p, q) = d(q^{-1} p, 0)
        ident = float((np.abs(koranyi_arrays(mul_arrays(inv_arrays(Q), P), np.zeros(D)) - dpq)
                       / np.maximum(1.0, dpq)).max())
        out += [
            Check("3", "metric", f"H^{n} symmetry |d(p,q) - d(q,p)| (bitwise)", asym, 0.0, "=="),
            Check("3", "metric", f"H^{n} triangle slack, 1e5 triples", slack,
                  tol["metric.triangle_slack"], "<="),
            Check("3", "metric", f"H^{n} dilation homogeneity, relative", dil_rel,
                  tol["metric.dilation_rel"], "<="),
            Check("3", "metric", f"H^{n} dilation by powers of two (bitwise)", dil_exact, 0.0, "=="),
            Check("3", "metric", f"H^{n} left invariance, relative", inv,
                  tol["metric.left_invariance"], "<="),
            Check("3", "metric", f"H^{n} d(p, q) = |q^-1 p|, relative", ident,
                  tol["metric.left_invariance"], "<="),
        ]
    return out


# ----------------------------------------------------------------------------
# 4. Young integrals


def criterion_young(seed: int, tol: dict) -> list[Check]:
    out = []
    # (a) smooth data: ∫_0^1 sin(3x) d(e^x) against the closed form
    N = 2 ** 14
    f = SampledPath.from_function(lambda x: np.sin(3 * x), 0.0, 1.0, N, 1.0)
    g = SampledPath.from_function(np.exp, 0.0, 1.0, N, 1.0)
    exact = (np.e * (np.sin(3) - 3 * np.cos(3)) + 3) / 10
    rs = young_rs(f, g, richardson=True)
    mo = young_mollified(f, g)
    err = max(abs(rs.value - exact), abs(mo.value - exact))
    out.append(Check("4a", "young", "smooth consistency, both methods", err,
                     tol["young.smooth_abs"], "<=", {"rs": rs.value, "mollified": mo.value,
                                                      "exact": exact}))
    # (b) Weierstrass pairs: independent RS and mollified routes
    gaps = []
    for s in range(5):
        W = weierstrass_path(0.6, 2, 8, 2 ** 14, 2, seed=seed * 1000 + s)
        fx, gy = W.component(0), W.component(1)
        a = young_rs(fx, gy, alpha=0.6, beta=0.6, richardson=True).value
        b = young_mollified(fx, gy, alpha=0.6, beta=0.6).value
        gaps.append(abs(a - b) / max(abs(a), 1e-300))
    out.append(Check("4b", "young", "rs vs mollified, relative, 5 Weierstrass pairs", max(gaps),
                     tol["young.cross_method_rel"], "<=", {"gaps": gaps}))
    # (c) bound |∫ f dg| <= C |b-a|^{α+β}[f]_α[g]_β for f vanishing somewhere
    ratios = []
    for s in range(100):
        W = weierstrass_path(0.6, 2, 10, 2 ** 11, 2, seed=seed * 1000 + 100 + s)
        fv = W.values[:, 0] - W.values[len(W.times) // 3, 0]
        fpath = SampledPath(W.times, fv, 0.6)
        ratios.append(young_bound_check(fpath, W.component(1), 0.6, 0.6).ratio)
    out.append(Check("4c", "young", "corpus constant max |∫f dg| / (|b-a|^{a+b}[f][g]), 100 seeds",
                     max(ratios), tol["young.corpus_constant"], "<=",
                     {"min": min(ratios), "median": float(np.median(ratios))}))
    # (d) dyadic Fourier block energies against [f]² 2^{-2kα}
    worst = 0.0
    for s in range(5):
        W = weierstrass_path(0.6, 2, 12, 2 ** 12, 1, seed=seed * 1000 + 200 + s)
        blocks = [b for b in fourier_block_bounds(W, 0.6) if b.k <= 10]
        worst = max(worst, max(b.ratio for b in blocks))
    out.append(Check("4d", "young", "Fourier block ratio, blocks k <= 10, 5 seeds", worst,
                     tol["young.block_ratio"], "<="))
    return out


# ----------------------------------------------------------------------------
# 5. Green / winding identity


def _perturbed_circle(seed: int, N: int = 2 ** 14, amp: float = 0.1) -> ClosedCurve2D:
    base = circle(N).path
    W = weierstrass_path(0.8, 2, 10, N, 2, seed=seed)
    pts = base.values + amp * (W.values - W.values[:1])
    pts[-1] = pts[0]
    return ClosedCurve2D(SampledPath(base.times, pts, 0.8))


def criterion_green(seed: int, tol: dict) -> list[Check]:
    out = []
    c = circle(2 ** 16)
    c = ClosedCurve2D(c.path.with_gamma(1.0))
    green = oriented_area_green(c, 1.0)
    wf = winding_field(c, 1024)
    err = max(abs(green.value - np.pi), abs(wf.integral() - np.pi))
    out.append(Check("5", "green", "circle: Young area and ∫w dz vs π", err,
                     tol["green.circle_abs"], "<=", {"young": green.value, "winding": wf.integral()}))
    curve = _perturbed_circle(seed)
    green = oriented_area_green(curve, 0.8, method="both")
    wf = winding_field(curve, 2 ** 10)
    lattice = wf.center_integral()
    gap = abs(green.value - lattice) / abs(green.value)
    out.append(Check("5", "green", "perturbed circle (α=0.8): Young area vs winding raster, relative",
                     gap, tol["green.perturbed_rel"], "<=",
                     {"young_rs": green.by_method["rs"][0], "young_mollified": green.by_method["mollified"][0],
                      "winding_centers": lattice, "winding_coverage": wf.integral()}))
    return out


# ----------------------------------------------------------------------------
# 6. change of variables


def _identity_map(X, Y):
    return np.stack([X, Y], -1)


def criterion_jacobian(seed: int, tol: dict) -> list[Check]:
    out = []
    f = polar_gridmap(_identity_map, 2049, 2048, 1.0)
    h = f.spacing().max()
    cov = change_of_variables_check(f, eps_sequence=h * np.array([32.0, 16.0, 8.0]))
    err = max(abs(cov.lhs - np.pi), abs(cov.rhs - np.pi))
    out.append(Check("6", "jacobian", "identity on the disk: both sides vs π (grid 2049x2048)", err,
                     tol["jacobian.identity_abs"], "<=", {"lhs": cov.lhs, "rhs": cov.rhs}))

    def perturbed(X, Y):
        P = np.stack([X, Y], -1)
        return P + 0.05 * weierstrass_field(P, 0.8, 2, 10, 2, seed=seed)

    f = polar_gridmap(perturbed, 513, 512, 0.8)
    cov = change_of_variables_check(f)
    out.append(Check("6", "jacobian", "Weierstrass-perturbed identity, relative gap (grid 512²)",
                     cov.gap, tol["jacobian.perturbed_rel"], "<=", {"lhs": cov.lhs, "rhs": cov.rhs}))
    return out


# ----------------------------------------------------------------------------
# 7. horizontal lifting


def criterion_lift(seed: int, tol: dict) -> list[Check]:
    out = []
    c = circle(2 ** 14).path.with_gamma(1.0)
    hc = height_change(c)
    out.append(Check("7", "lift", "circle height change vs -4π", abs(hc.value + 4 * np.pi),
                     tol["lift.circle_abs"], "<=", {"value": hc.value}))
    worst, details = 0.0, []
    for s in range(10):
        W = weierstrass_path(0.75, 2, 10, 2 ** 12, 2, seed=seed * 1000 + 300 + s)
        young = height_change(W)
        area = enclosed_area_sum(W, 1024)
        field_ = winding_field(close_curve(W), 1024)
        wind_err = abs(field_.integral() - field_.center_integral())
        bound = young.error_estimate + 4 * wind_err
        gap = abs(young.value + 4 * area)
        worst = max(worst, gap / bound if bound > 0 else np.inf)
        details.append({"height": young.value, "area": area, "gap": gap, "bound": bound})
    out.append(Check("7", "lift", "height change vs -4 Σ∫w dz, gap / combined bound, 10 seeds", worst,
                     tol["lift.gap_over_bound"], "<=", {"loops": details}))
    W = weierstrass_path(0.75, 2, 12, 2 ** 12, 4, seed=seed)
    l1, l2 = horizontal_lift_curve(W, 0.0), horizontal_lift_curve(W, 3.7)
    diff = l2.values[:, -1] - l1.values[:, -1]
    out.append(Check("7", "lift", "two lifts differ by a constant (H^2)", float(np.abs(diff - diff[0]).max()),
                     tol["lift.uniqueness"], "<="))
    return out


# ----------------------------------------------------------------------------
# 8. lift obstruction


def criterion_obstruction(seed: int, tol: dict) -> list[Check]:
    out = []
    disk = polar_gridmap(_identity_map, 65, 256, 1.0)
    boundary = [(64, j) for j in range(256)]
    res = lift_map(disk, probe_loops=[boundary])
    area = res.probe_areas[0]
    out.append(Check("8", "obstruction", "disk identity: boundary-loop area vs π", abs(area - np.pi),
                     tol["obstruction.area_abs"], "<=", {"area": area}))
    out.append(Check("8", "obstruction", "disk identity: lift refused", float(res.ok), 0.0, "==",
                     {"kind": res.obstruction.kind if res.obstruction else None}))
    s = np.linspace(0.0, 1.0, 129)
    X, Y = np.meshgrid(s, s, indexing="ij")
    phi = X + Y
    maps = {
        "(x, 0)": np.stack([X, 0 * Y], -1),
        "(cos φ, sin 2φ)": np.stack([np.cos(phi), np.sin(2 * phi)], -1),
        "H^2 (φ, φ², sin φ, e^φ)": np.stack([phi, phi ** 2, np.sin(phi), np.exp(phi)], -1),
    }
    worst, refused = 0.0, 0
    for name, vals in maps.items():
        r = lift_map(GridMap((0.0, 0.0), (1.0, 1.0), vals, 1.0))
        refused += not r.ok
        worst = max(worst, r.tree_deviation)
    out.append(Check("8", "obstruction", "curl-free maps: spanning-tree independence", worst,
                     tol["obstruction.tree_deviation"], "<="))
    out.append(Check("8", "obstruction", "curl-free maps refused", float(refused), 0.0, "=="))
    return out


# ----------------------------------------------------------------------------
# 9. contact decay

DECAY_CONFIG = {"gamma": 0.75, "terms": 14, "N": 2 ** 16, "eps": [2.0 ** -j for j in range(4, 11)]}


def criterion_decay(seed: int, tol: dict) -> list[Check]:
    cfg = DECAY_CONFIG
    W = weierstrass_path(cfg["gamma"], 2, cfg["terms"], cfg["N"], 2, seed=seed)
    lift = horizontal_lift_curve(W)
    f = GridMap((0.0,), (1.0,), lift.values, cfg["gamma"])
    eps = cfg["eps"]
    contact = decay_exponent_fit(f, "contact", eps)
    dy1 = decay_exponent_fit(f, Covector.basis_element(3, 2), eps)
    dx1 = decay_exponent_fit(f, Covector.basis_element(3, 1), eps)
    s = np.linspace(0.0, 1.0, cfg["N"] + 1)
    vertical = GridMap((0.0,), (1.0,), np.stack([0 * s, 0 * s, s], -1), 1.0)
    vert = decay_exponent_fit(vertical, "contact", eps)
    return [
        Check("9", "decay", "lifted Weierstrass γ=0.75: contact slope", contact.fitted_slope,
              tol["decay.contact_min_slope"], ">=", {"sup_norms": contact.sup_norms}),
        Check("9", "decay", "generic 1-form dy1 slope (ceiling -(1-γ) - slack)", dy1.fitted_slope,
              dy1.reference_slope - tol["decay.generic_slack"], ">=",
              {"sup_norms": dy1.sup_norms, "dx1_slope": dx1.fitted_slope}),
        Check("9", "decay", "vertical line control: |contact slope|", abs(vert.fitted_slope),
              tol["decay.vertical_abs"], "<="),
    ]


# ----------------------------------------------------------------------------
# 10. Hodge decomposition on tori


def criterion_hodge(seed: int, tol: dict) -> list[Check]:
    rng = _rng(seed, 10)
    recon = ortho = pyth = side = 0.0
    for k in (2, 3):
        M = hodge.DEFAULT_MODES[k]
        for l in range(k + 1):
            for _ in range(2):
                w = hodge.random_form(k, l, M, rng)
                rep = hodge.split_report(w, hodge.hodge_decompose(w))
                recon = max(recon, rep.reconstruction)
                ortho = max(ortho, rep.orthogonality)
                pyth = max(pyth, rep.pythagoras)
                side = max(side, rep.side_conditions)
    dd = [hodge.nilpotency_defect(k, hodge.DEFAULT_MODES[k]) for k in (2, 3)]
    out = [
        Check("10", "hodge", "reconstruction ‖w - dω₁ - δω₂ - h‖", recon, tol["hodge.reconstruction"], "<="),
        Check("10", "hodge", "pairwise L² orthogonality", ortho, tol["hodge.orthogonality"], "<="),
        Check("10", "hodge", "Pythagoras defect", pyth, tol["hodge.pythagoras"], "<="),
        Check("10", "hodge", "side conditions δω₁ = 0, dω₂ = 0", side, tol["hodge.reconstruction"], "<="),
        Check("10", "hodge", "d² symbol, integer max entry (T², T³)", float(max(a for a, _ in dd)), 0.0, "=="),
        Check("10", "hodge", "δ² symbol, integer max entry (T², T³)", float(max(b for _, b in dd)), 0.0, "=="),
    ]
    reports = []
    for s in range(2):
        r2 = _rng(seed, 100 + s)
        corpus = [hodge.random_form(2, 1, 16, r2, mean_zero=True) for _ in range(100)]
        reports.append(hodge.gaffney_check(corpus))
    finite = all(np.isfinite([r.gaffney_max, r.poincare_max]).all() for r in reports)
    spread = max(abs(reports[0].poincare_max - reports[1].poincare_max) / reports[0].poincare_max,
                 abs(reports[0].gaffney_max - reports[1].gaffney_max) / reports[0].gaffney_max)
    out.append(Check("10", "hodge", "Gaffney–Poincaré ratios, 100 mean-zero forms: seed spread",
                     spread if finite else np.inf, tol["hodge.seed_spread"], "<=",
                     {"reports": [asdict(r) for r in reports]}))
    return out


CRITERIA = {
    1: criterion_exterior, 2: criterion_contact, 3: criterion_metric, 4: criterion_young,
    5: criterion_green, 6: criterion_jacobian, 7: criterion_lift, 8: criterion_obstruction,
    9: criterion_decay, 10: criterion_hodge,
}


def run_criteria(seed: int = 0, tolerances: dict | None = None, only=None, log=None) -> list[Check]:
    """Run criteria 1–10 (or the numbers in ``only``); ``log`` receives each row as it finishes."""
    tol = merged_tolerances(tolerances)
    rows = []
    for num, fn in CRITERIA.items():
        if only is not None and num not in only:
            continue
        for row in fn(seed, tol):
            rows.append(row)
            if log:
                log(row)
    return rows


def manifest_bytes(rows: list[Check], seed: int) -> bytes:
    """Canonical serialization of a suite run (no timings), used for the determinism check."""
    body = {"seed": seed, "checks": [r.to_json() for r in rows]}
    return (json.dumps(body, sort_keys=True, indent=2, default=_jsonable) + "\n").encode()


def _jsonable(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def criterion_determinism(first: bytes, second: bytes) -> Check:
    same = first == second
    return Check("11", "determinism", "two suite runs, same seed: manifests byte-identical",
                 float(same), 1.0, "==", {"bytes": len(first)})


def select(filter_: str | None) -> set[int] | None:
    """Criterion numbers matching a suite name or number; None selects all."""
    if not filter_:
        return None
    keys = {k.strip() for k in filter_.split(",") if k.strip()}
    chosen = {n for n, s in SUITES.items() if s in keys or str(n) in keys}
    if not chosen:
        raise ValueError(f"no criterion matches {filter_!r}; suites are {sorted(SUITES.values())}")
    return chosen
