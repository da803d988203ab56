"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py`` (or this file directly); the
terminal summary prints one PASS/FAIL line per criterion.
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from numrange.closed_forms import (circle_at, CircleFamily, critical_constant, envelope_arrays,
                                   radial_profile_g, radius_upper_bound)
from numrange.dualities import (adjoint_dual_check, affine_covariance_check,
                                nonconvexity_witness, transpose_dual_check,
                                transpose_mirror_check)
from numrange.geometry import (Polygon, convex_hull, convexity_verdict, minkowski_containment,
                               polygon_hausdorff)
from numrange.regions import region_for
from numrange.sampler import numerical_radius, sample_range
from numrange.sip import PNorm, sip_axiom_report

CRITERIA = {
    1: "nilpotent radius equals c_p",
    2: "circle-family exactness",
    3: "envelope tangency",
    4: "Hilbert-case ellipse boundary",
    5: "convexity verdicts and witness",
    6: "radius upper bound",
    7: "transpose mirror image",
    8: "cross-exponent dualities",
    9: "semi-inner-product axioms",
    10: "diagonal hull and single-entry radius",
    11: "affine covariance and Minkowski sum",
    12: "concavity of the radial profile",
}


def test_criterion_01_nilpotent_radius():
    N = np.array([[0, 1], [0, 0]])
    for p in (1.25, 1.5, 2.0, 3.0, 5.0):
        v = numerical_radius(N, p).value
        assert abs(v - critical_constant(p)) <= 1e-4, p
    assert abs(numerical_radius(N, 2.0).value - 0.5) <= 1e-12
    assert abs(numerical_radius(N, 3.0).value - 0.529134) <= 1e-6


def test_criterion_02_circle_family_exactness():
    for b in (1, 2, 1 + 1j):
        for p in (1.5, 3.0):
            T = np.array([[1, b], [0, -1]], dtype=complex)
            cloud = sample_range(T, p, (64, 256))
            theta = cloud.params[:, 0]
            assert len(np.unique(theta)) == 64
            center, radius = CircleFamily(b, p).center(theta), CircleFamily(b, p).radius(theta)
            z = cloud.points[:, 0] + 1j * cloud.points[:, 1]
            residual = np.abs(np.abs(z - center) - radius)
            assert residual.max() <= 1e-12, (b, p, residual.max())
            assert circle_at(CircleFamily(b, p), theta[0]) == (center[0], radius[0])


def _admissible_thetas(b, p, count):
    theta = np.linspace(0, np.pi / 2, 200_001)[1:-1]
    ok = envelope_arrays(b, p, theta)[3]
    picked = theta[ok]
    return picked[np.linspace(0, len(picked) - 1, count).round().astype(int)]


def test_criterion_03_envelope_tangency():
    b, p = 2.0, 3.0
    q = PNorm(p).q
    theta = _admissible_thetas(b, p, 500)
    assert len(np.unique(theta)) == 500
    x, y2, _, ok = envelope_arrays(b, p, theta)
    assert ok.all()
    c = np.cos(2 * theta)
    R2 = b ** 2 * np.sin(theta) ** (4 / p) * np.cos(theta) ** (4 / q)
    m = (x - c) ** 2 + y2 - R2
    # d/dtheta at fixed (x, y): 4 (x - cos 2t) sin 2t - (R^2)'
    dR2 = 4 * R2 * (1 / (p * np.tan(theta)) - np.tan(theta) / q)
    dm = 4 * (x - c) * np.sin(2 * theta) - dR2
    assert np.abs(m).max() <= 1e-8
    assert np.abs(dm).max() <= 1e-6


def test_criterion_04_hilbert_case_ellipse():
    theta = np.linspace(0, np.pi / 2, 4001)[1:-1]
    x, y2, _, ok = envelope_arrays(2.0, 2.0, theta)
    assert ok.sum() > 1000
    residual = np.abs(x[ok] ** 2 / 2 + y2[ok] - 1)
    assert residual.max() <= 1e-10


def _oracle_g0():
    t = brentq(lambda t: 1 - 2 * t - 2 * t ** 3 + t ** 4, 0.0, 1.0, xtol=1e-15)
    return t * (1 - t) / (1 + t ** 3)


def test_criterion_05_convexity_verdicts():
    for b in (1, 2):
        for p in (1.5, 3.0):
            T = np.array([[1, b], [0, -1]], dtype=complex)
            verdict = convexity_verdict(sample_range(T, p), region_for(T, p))
            assert verdict.verdict == "convex", (b, p, verdict.lines())
    for T in ([[1, 1], [1, -1]], [[1, 1 + 1j], [1 - 1j, -1]]):
        T = np.array(T, dtype=complex)
        verdict = convexity_verdict(sample_range(T, 3.0), region_for(T, 3.0))
        assert verdict.verdict == "nonconvex"
        report = nonconvexity_witness(T, 3.0)
        assert report.passed and report.metric > 1 + 1e-6
        assert verdict.witness == pytest.approx((0.0, report.witness_data["y"]), abs=1e-9)
        if T[0, 1] == 1:
            g0 = report.witness_data["y"]
            assert abs(g0 - 0.2272) <= 1e-3
            assert abs(g0 - _oracle_g0()) <= 1e-3


def test_criterion_06_radius_bound():
    for b in (0.5, 1.0, 2.0):
        for p in (1.5, 2.0, 3.0):
            v = numerical_radius(np.array([[1, b], [0, -1]]), p).value
            assert v <= radius_upper_bound(b, p) + 1e-9, (b, p, v)


def test_criterion_07_transpose_mirror():
    for T in ([[1, 2], [0, -1]], [[2, 1], [3, -2]]):
        report = transpose_mirror_check(np.array(T, dtype=float), 3.0, (1024, 512))
        assert report.metric <= 5e-3 and report.passed


def test_criterion_08_cross_exponent_dualities():
    for T in ([[1, 2], [3, 4]], [[1j, 1], [2, -1j]]):
        T = np.array(T, dtype=complex)
        for check in (transpose_dual_check, adjoint_dual_check):
            report = check(T, 3.0, samples=10_000)
            assert report.metric <= 5e-3
            assert report.extra["correspondence_residual"] <= 1e-12
            assert report.passed


def test_criterion_09_sip_axioms():
    for p in (1.5, 2.5, 4.0):
        for n in (2, 4):
            report = sip_axiom_report(p, n, sample_count=10_000, seed=2024)
            worst = max(report.violations.values())
            assert worst <= 1e-10, (p, n, report.violations)


def test_criterion_10_diagonal_and_higher_dimension():
    D = np.diag([1, 1j, -1])
    hull = convex_hull(sample_range(D, 3.0).points)
    triangle = Polygon(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]))
    assert polygon_hausdorff(hull, triangle) <= 5e-3
    T = np.zeros((3, 3))
    T[0, 2] = 1
    assert abs(numerical_radius(T, 3.0).value - 0.529134) <= 1e-3


def test_criterion_11_algebraic_covariance():
    p = 2.5
    for seed in (11, 12):
        rng = np.random.default_rng(seed)
        T1, T2 = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        affine = affine_covariance_check(T1, alpha, beta, p)
        assert affine.metric <= 1e-12
        mink = minkowski_containment(sample_range(T1 + T2, p), sample_range(T1, p),
                                     sample_range(T2, p))
        assert mink.max_residual <= 1e-12


def test_criterion_12_radial_profile_concavity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for p in (1.25, 1.5, 2.0, 3.0, 5.0):
        for b in (0.5, 1.0, 2.0, 1 + 1j):
            z1, z3 = np.sort(rng.uniform(-1, 1, size=(2, 1000)), axis=0)
            lam = rng.uniform(0, 1, size=1000)
            z2 = lam * z1 + (1 - lam) * z3
            chord = lam * radial_profile_g(z1, b, p) + (1 - lam) * radial_profile_g(z3, b, p)
            worst = max(worst, float(np.max(chord - radial_profile_g(z2, b, p))))
    assert worst <= 1e-12


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
