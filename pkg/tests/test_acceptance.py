"""Acceptance gate: one test per release criterion.

Run ``pytest -s tests/test_acceptance.py`` to get a single PASS/FAIL line
per criterion.  Every numeric tolerance is asserted exactly as stated in
the line that checks it; the three heavyweight suites also assert a wall
clock budget so regressions in speed fail loudly.
"""

import math
import time

import numpy as np
from conftest import (
    bisection_polyline,
    central_difference,
    densify_polyline,
    hausdorff_distance,
    lattice_direct,
    rel_error,
)

from chbez import (
    BasisKind,
    BasisSpace,
    ControlCurve,
    CoordinateFunction,
    CurveSpec,
    Term,
    TermFamily,
    basis_matrix,
    bernstein_value,
    bezier_weights,
    elevate,
    evaluate,
    exact_curve,
    exact_rational_curve,
    exact_rational_surface,
    exact_surface,
    load_figure,
    min_order,
    normalizing_coefficients,
    sample_lattice,
    subdivide,
    transform_matrix,
)

KINDS = (BasisKind.TRIGONOMETRIC, BasisKind.HYPERBOLIC)

# Fixed seven point arch used by the subdivision and elevation checks: a
# smooth polygon whose third order curves (alpha = pi/2, both kinds) stay
# tame, so polygon convergence rates are representative.  A rough random
# polygon excites the top frequency and needs more bisection depth.
ARCH = np.array(
    [
        [0.0, 0.0],
        [1.0, 2.0],
        [2.0, 3.2],
        [3.0, 3.6],
        [4.0, 3.2],
        [5.0, 2.0],
        [6.0, 0.0],
    ]
)


def _report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    tail = f" [{detail}]" if detail else ""
    print(f"criterion {num} ({name}): {status}{tail}")


def _scaled_max(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float((np.abs(a - b) / (1.0 + np.abs(b))).max())


def test_criterion_1_basis_suite():
    """Partition of unity, nonnegativity and symmetry over random spaces."""
    start = time.perf_counter()
    rng = np.random.default_rng(1001)
    worst_partition = 0.0
    smallest_value = math.inf
    worst_coeff_sym = 0.0
    worst_basis_sym = 0.0
    for kind in KINDS:
        top = math.pi - 1e-2 if kind is BasisKind.TRIGONOMETRIC else 6.0
        for n in range(1, 9):
            for alpha in rng.uniform(1e-2, top, 125):
                space = BasisSpace(kind, n, float(alpha))
                us = rng.uniform(0.0, alpha, 8)
                table = basis_matrix(space, us)
                worst_partition = max(
                    worst_partition, float(np.abs(table.sum(axis=1) - 1.0).max())
                )
                smallest_value = min(smallest_value, float(table.min()))
                coeffs = normalizing_coefficients(space).values
                worst_coeff_sym = max(worst_coeff_sym, _scaled_max(coeffs, coeffs[::-1]))
                mirrored = basis_matrix(space, alpha - us)[:, ::-1]
                worst_basis_sym = max(worst_basis_sym, _scaled_max(table, mirrored))
    elapsed = time.perf_counter() - start
    ok = (
        worst_partition <= 1e-12
        and smallest_value >= 0.0
        and worst_coeff_sym <= 1e-12
        and worst_basis_sym <= 1e-12
        and elapsed < 5.0
    )
    _report(
        1,
        "basis suite",
        ok,
        f"partition {worst_partition:.1e}, min value {smallest_value:.1e}, "
        f"coeff sym {worst_coeff_sym:.1e}, basis sym {worst_basis_sym:.1e}, "
        f"{elapsed:.2f}s",
    )
    assert worst_partition <= 1e-12
    assert smallest_value >= 0.0
    assert worst_coeff_sym <= 1e-12
    assert worst_basis_sym <= 1e-12
    assert elapsed < 5.0


def test_criterion_2_bernstein_degeneration():
    """Near alpha = 0 the basis collapses onto the Bernstein polynomials."""
    alpha = 1e-4
    vs = np.linspace(0.0, 1.0, 101)
    worst = 0.0
    for kind in KINDS:
        for n in range(1, 5):
            space = BasisSpace(kind, n, alpha)
            table = basis_matrix(space, alpha * vs)
            bern = np.array(
                [[bernstein_value(2 * n, i, v) for i in range(2 * n + 1)] for v in vs]
            )
            worst = max(worst, float(np.abs(table - bern).max()))
    ok = worst <= 1e-3
    _report(2, "Bernstein degeneration", ok, f"max deviation {worst:.1e}")
    assert worst <= 1e-3


def test_criterion_3_transform_correctness():
    """Transform rows rebuild cos(ku)/sin(ku) (cosh/sinh) from the basis."""
    start = time.perf_counter()
    worst = 0.0
    for kind in KINDS:
        trig = kind is BasisKind.TRIGONOMETRIC
        for alpha in (0.3, 1.0, 2.0, 3.0 if trig else 5.0):
            for n in range(1, 9):
                space = BasisSpace(kind, n, alpha)
                mat = transform_matrix(space)
                us = np.linspace(0.0, alpha, 100)
                table = basis_matrix(space, us)
                for k in range(n + 1):
                    arg = k * us
                    cos_ref = np.cos(arg) if trig else np.cosh(arg)
                    worst = max(worst, _scaled_max(table @ mat.cosine_row(k), cos_ref))
                    if k > 0:
                        sin_ref = np.sin(arg) if trig else np.sinh(arg)
                        worst = max(
                            worst, _scaled_max(table @ mat.sine_row(k), sin_ref)
                        )
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 10.0
    _report(3, "transform correctness", ok, f"max deviation {worst:.1e}, {elapsed:.2f}s")
    assert worst <= 1e-10
    assert elapsed < 10.0


def test_criterion_4_curve_gallery():
    """Bundled plane and space curves reconstruct to machine accuracy."""
    cases = []
    for name, order in (("hypocycloid", 4), ("quadrifolium", 3), ("torus_knot", 5)):
        spec = load_figure(name).spec
        assert min_order(spec) == order
        cases.append((name, spec, order))
    hyperbola = load_figure("equilateral_hyperbola").spec
    assert min_order(hyperbola) == 1
    for n in (1, 2, 3):
        cases.append((f"equilateral_hyperbola n={n}", hyperbola, n))

    worst_recon = 0.0
    worst_fd = 0.0
    for _, spec, n in cases:
        us = np.linspace(0.0, spec.alpha, 1000)
        curve = exact_curve(spec, n)
        worst_recon = max(worst_recon, rel_error(evaluate(curve, us), spec.evaluate(us)))
        sparse = np.linspace(0.0, spec.alpha, 200)
        for r, h in ((1, 1e-5), (2, 5e-5)):
            recon = evaluate(exact_curve(spec, n, r), sparse)
            fd = central_difference(spec.evaluate, sparse, h, r)
            worst_fd = max(worst_fd, rel_error(recon, fd))
    ok = worst_recon <= 1e-9 and worst_fd <= 1e-5
    _report(
        4,
        "curve gallery",
        ok,
        f"reconstruction {worst_recon:.1e}, derivative vs FD {worst_fd:.1e}",
    )
    assert worst_recon <= 1e-9
    assert worst_fd <= 1e-5


def test_criterion_5_rational_curves():
    """Rational descriptions reach positive weights and reconstruct."""

    def cartesian(spec, us):
        hom = spec.evaluate(us)
        return hom[:, :-1] / hom[:, -1:]

    lemniscate = load_figure("lemniscate").spec
    worst_lem = 0.0
    lemniscate_ok = True
    for n in (2, 3, 4):
        result = exact_rational_curve(lemniscate, n)
        lemniscate_ok &= result.elevations == 0 and float(result.weights.min()) > 0.0
        us = np.linspace(0.0, lemniscate.alpha, 1000)
        worst_lem = max(
            worst_lem, rel_error(evaluate(result.curve, us), cartesian(lemniscate, us))
        )

    worst_arc = 0.0
    arcs_ok = True
    arc_steps = []
    for name in ("rational_hyperbolic_arc_a", "rational_hyperbolic_arc_b"):
        spec = load_figure(name).spec
        result = exact_rational_curve(spec)
        arcs_ok &= float(result.weights.min()) > 0.0
        arc_steps.append(result.elevations)
        us = np.linspace(0.0, spec.alpha, 1000)
        worst_arc = max(
            worst_arc, rel_error(evaluate(result.curve, us), cartesian(spec, us))
        )
    ok = lemniscate_ok and worst_lem <= 1e-10 and arcs_ok and worst_arc <= 1e-9
    _report(
        5,
        "rational curves",
        ok,
        f"lemniscate {worst_lem:.1e}, arcs {worst_arc:.1e} "
        f"({arc_steps[0]} and {arc_steps[1]} elevations)",
    )
    assert lemniscate_ok
    assert worst_lem <= 1e-10
    assert arcs_ok
    assert worst_arc <= 1e-9


def test_criterion_6_surface_gallery():
    """All bundled patches and volumes reconstruct on a dense lattice."""
    start = time.perf_counter()
    names = (
        "torus_patch",
        "star_surface",
        "trigonometric_volume_1",
        "trigonometric_volume_2",
        "rational_trigonometric_patch",
        "hyperboloidal_patch",
        "rational_hyperbolic_butterfly",
        "hybrid_rational_volume",
    )
    worst = 0.0
    for name in names:
        doc = load_figure(name)
        spec = doc.spec
        counts = (17,) * spec.delta if spec.delta == 3 else (33,) * spec.delta
        grid = exact_rational_surface(spec) if doc.rational else exact_surface(spec)
        recon = sample_lattice(grid, spec.directions, counts)
        direct = lattice_direct(spec, counts)
        if doc.rational:
            direct = direct[..., :-1] / direct[..., -1:]
        worst = max(worst, rel_error(recon, direct))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 60.0
    _report(6, "surface gallery", ok, f"max error {worst:.1e}, {elapsed:.2f}s")
    assert worst <= 1e-8
    assert elapsed < 60.0


def test_criterion_7_subdivision():
    """Corner cutting splits exactly and the bisection polyline converges."""
    u0 = math.pi / 4
    ratios_exact = True
    worst_piece = 0.0
    worst_ratio = 0.0
    for kind in KINDS:
        space = BasisSpace(kind, 3, math.pi / 2)
        curve = ControlCurve(space, ARCH)
        result = subdivide(curve, u0)
        ratios_exact &= result.split_ratio == 0.5
        left_us = np.linspace(0.0, u0, 50)
        right_us = np.linspace(u0, space.alpha, 50)
        worst_piece = max(
            worst_piece,
            rel_error(result.left.evaluate(left_us), evaluate(curve, left_us)),
            rel_error(result.right.evaluate(right_us), evaluate(curve, right_us)),
        )
        polyline = densify_polyline(
            bisection_polyline(curve.points, bezier_weights(space), 5)
        )
        dense = evaluate(curve, np.linspace(0.0, space.alpha, 4000))
        spread = dense[::8]
        gaps = ((spread[:, None, :] - spread[None, :, :]) ** 2).sum(axis=2)
        diameter = math.sqrt(float(gaps.max()))
        distance = hausdorff_distance(polyline, dense)
        worst_ratio = max(worst_ratio, distance / (1e-3 * diameter))
    ok = ratios_exact and worst_piece <= 1e-10 and worst_ratio <= 1.0
    _report(
        7,
        "subdivision",
        ok,
        f"split ratio exact: {ratios_exact}, pieces {worst_piece:.1e}, "
        f"polyline at {worst_ratio:.2f}x the Hausdorff budget",
    )
    assert ratios_exact
    assert worst_piece <= 1e-10
    assert worst_ratio <= 1.0


def test_criterion_8_order_elevation():
    """Elevation leaves the curve fixed and pulls the polygon toward it."""
    worst_invariance = 0.0
    improvements = []
    for kind in KINDS:
        space = BasisSpace(kind, 3, math.pi / 2)
        curve = ControlCurve(space, ARCH)
        us = np.linspace(0.0, space.alpha, 200)
        base = evaluate(curve, us)
        dense = evaluate(curve, np.linspace(0.0, space.alpha, 4000))

        def vertex_distance(c):
            gaps = ((c.points[:, None, :] - dense[None, :, :]) ** 2).sum(axis=2)
            return float(np.sqrt(gaps.min(axis=1)).max())

        for z in range(1, 11):
            worst_invariance = max(
                worst_invariance, rel_error(evaluate(elevate(curve, z), us), base)
            )
        improvements.append((vertex_distance(curve), vertex_distance(elevate(curve, 10))))
    closer = all(after < before for before, after in improvements)
    ok = worst_invariance <= 1e-12 and closer
    _report(
        8,
        "order elevation",
        ok,
        f"invariance {worst_invariance:.1e}, vertex distance "
        + ", ".join(f"{b:.3f} -> {a:.3f}" for b, a in improvements),
    )
    assert worst_invariance <= 1e-12
    assert closer


def test_criterion_9_oracle_equivalence():
    """Random small specs: description matches direct evaluation and the
    two derivative paths (differentiate the spec, or describe with r)
    agree coordinate by coordinate."""
    rng = np.random.default_rng(90210)
    worst_recon = 0.0
    worst_consistency = 0.0
    for _ in range(100):
        kind = KINDS[int(rng.integers(0, 2))]
        top = 2.9 if kind is BasisKind.TRIGONOMETRIC else 3.5
        alpha = float(rng.uniform(0.3, top))
        coords = []
        for _ in range(int(rng.integers(2, 4))):
            terms = tuple(
                Term(
                    TermFamily.COSINE if rng.integers(0, 2) else TermFamily.SINE,
                    int(rng.integers(0, 4)),
                    float(rng.uniform(-2.0, 2.0)),
                    float(rng.uniform(0.0, 2.0 * math.pi)),
                )
                for _ in range(int(rng.integers(1, 4)))
            )
            coords.append(CoordinateFunction(terms))
        spec = CurveSpec(kind, alpha, tuple(coords))
        n = min_order(spec)
        us = np.linspace(0.0, alpha, 200)
        worst_recon = max(
            worst_recon, rel_error(evaluate(exact_curve(spec, n), us), spec.evaluate(us))
        )
        derived = spec
        for r in (1, 2):
            derived = derived.differentiated()
            via_r = exact_curve(spec, n, r).points
            via_spec = exact_curve(derived, n).points
            worst_consistency = max(worst_consistency, _scaled_max(via_r, via_spec))
    ok = worst_recon <= 1e-10 and worst_consistency <= 1e-12
    _report(
        9,
        "oracle equivalence",
        ok,
        f"reconstruction {worst_recon:.1e}, derivative paths {worst_consistency:.1e}",
    )
    assert worst_recon <= 1e-10
    assert worst_consistency <= 1e-12
