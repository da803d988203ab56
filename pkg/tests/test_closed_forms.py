import math
import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numrange.closed_forms import (CircleFamily, circle_at, check_nonconvex_hypotheses,
                                   corollary_decomposition, critical_constant, disc_form,
                                   envelope_arrays, envelope_point, nonconvex_ellipse_at,
                                   radial_profile_g, radius_upper_bound, real_ellipse_at)
from numrange.errors import DegenerateParameterError, DomainError, HypothesisError
from numrange.sampler import range_values, sample_range
from numrange.sip import PNorm


def test_critical_constant_values():
    assert critical_constant(2.0) == 0.5
    assert critical_constant(3.0) == pytest.approx(0.5291336839893998, abs=1e-15)
    assert critical_constant(1.25) == pytest.approx(critical_constant(5.0), abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(p=st.floats(1.01, 50.0))
def test_critical_constant_is_symmetric_and_bounded(p):
    c = critical_constant(p)
    assert c == pytest.approx(critical_constant(PNorm(p).q), rel=1e-12)
    assert 0.5 - 1e-15 <= c < 1.0


def test_disc_and_bound():
    d = disc_form(2 - 1j, 3, 3.0)
    assert d.center == 2 - 1j
    assert d.radius == pytest.approx(3 * critical_constant(3.0))
    assert radius_upper_bound(1 + 1j, 2.0) == pytest.approx(1 + math.sqrt(2) / 2)


def test_nilpotent_cloud_fills_the_disc():
    cloud = sample_range([[0, 1], [0, 0]], 3.0, (64, 32))
    r = np.hypot(*cloud.points.T)
    assert r.max() <= critical_constant(3.0) + 1e-15
    assert r.max() == pytest.approx(critical_constant(3.0), abs=1e-3)


def test_corollary_decomposition():
    alpha, beta, b = corollary_decomposition(3, 2j, 1)
    assert (alpha, beta, b) == (2, 1, 2j)
    with pytest.raises(DomainError):
        corollary_decomposition(1, 1, 1)


def test_circle_family_at_quarter_turn():
    cf = CircleFamily(2, 3.0)
    center, radius = circle_at(cf, math.pi / 4)
    assert center == pytest.approx(0.0, abs=1e-15)
    assert radius == pytest.approx(2 * 0.5 ** (1 / 3) * 0.5 ** (2 / 3))


def test_envelope_point_example():
    bp = envelope_point(1, 3.0, math.pi / 4)
    assert bp.x == pytest.approx(-1 / 12, abs=1e-14)
    assert bp.y_squared == pytest.approx(1 / 4 - 1 / 144, abs=1e-14)
    assert bp.y == pytest.approx(math.sqrt(1 / 4 - 1 / 144))
    assert bp.admissible


@pytest.mark.parametrize("theta", [0.0, math.pi / 2, math.pi, 2 * math.pi])
def test_envelope_excluded_angles(theta):
    with pytest.raises(DomainError):
        envelope_point(1, 3.0, theta)
    x, y2, f, ok = envelope_arrays(1, 3.0, np.array([theta]))
    assert np.isnan(x[0]) and not ok[0]


def test_inadmissible_envelope_point_is_reported():
    # near theta = 0 with p > 2 the envelope leaves the circle
    bp = envelope_point(2, 3.0, 0.01)
    assert not bp.admissible
    assert bp.y_squared < 0


@settings(max_examples=60, deadline=None)
@given(b=st.floats(0.1, 5.0), p=st.floats(1.1, 6.0), theta=st.floats(0.01, math.pi / 2 - 0.01))
def test_radial_profile_matches_radius(b, p, theta):
    cf = CircleFamily(b, p)
    assert radial_profile_g(math.cos(2 * theta), b, p) == pytest.approx(float(cf.radius(theta)),
                                                                        rel=1e-11, abs=1e-14)


def test_radial_profile_domain():
    with pytest.raises(DomainError):
        radial_profile_g(1.5, 1, 3.0)
    assert radial_profile_g(1.0, 1, 3.0) == 0.0


@pytest.mark.parametrize("T", [[[1, 2], [3, 4]], [[2, 1], [3, -2]], [[0.5, -1], [2, 0]]])
def test_real_ellipse_contains_its_slice(T):
    T = np.array(T, dtype=float)
    p = 3.0
    for theta in (0.3, 0.9, 1.3):
        e = real_ellipse_at(T, p, theta)
        pn = PNorm(p)
        phi = np.linspace(0, 2 * np.pi, 50)
        x = np.stack([np.full_like(phi, abs(math.cos(theta)) ** (2 / p)),
                      abs(math.sin(theta)) ** (2 / p) * np.exp(1j * phi)], axis=-1)
        z = range_values(T, x, pn)
        lhs = ((z.real - e.center_x) / e.semi_axis_x) ** 2 + (z.imag / e.semi_axis_y) ** 2
        assert np.allclose(lhs, 1.0, atol=1e-11)


def test_real_ellipse_needs_real_entries():
    with pytest.raises(HypothesisError):
        real_ellipse_at([[1, 1j], [0, 1]], 3.0, 0.5)


@pytest.mark.parametrize("T,message", [
    ([[1, 1], [1, -1]], None),
    ([[1, 1], [1, -2]], "condition (i)"),
    ([[1, 2], [1, -1]], "condition (ii)"),
    ([[1, 1j], [1, -1]], "condition (iii)"),
    ([[1j, 1], [1, -1j]], "must be real"),
])
def test_nonconvex_hypotheses(T, message):
    if message is None:
        check_nonconvex_hypotheses(np.array(T, dtype=complex), 3.0)
        return
    with pytest.raises(HypothesisError, match=re.escape(message)):
        check_nonconvex_hypotheses(np.array(T, dtype=complex), 3.0)


def test_nonconvex_rejects_hilbert_exponent():
    with pytest.raises(HypothesisError, match="p"):
        check_nonconvex_hypotheses(np.array([[1, 1], [1, -1]], dtype=complex), 2.0)


@pytest.mark.parametrize("T", [[[1, 1], [1, -1]], [[1, 1 + 1j], [1 - 1j, -1]], [[2, -1j], [1j, -2]]])
def test_nonconvex_ellipse_contains_its_slice(T):
    T = np.array(T, dtype=complex)
    p = 3.0
    for t in (0.4, 0.7, 1.2):
        r, s = abs(math.cos(t)) ** (2 / p), abs(math.sin(t)) ** (2 / p)
        e = nonconvex_ellipse_at(T, p, r, s)
        phi1 = np.linspace(0, 2 * np.pi, 40)
        x = np.stack([r * np.exp(1j * phi1), np.full_like(phi1, s)], axis=-1)
        z = range_values(T, x, p)
        lhs = ((z.real - e.center_x) / e.semi_axis_x) ** 2 + (z.imag / e.semi_axis_y) ** 2
        assert np.allclose(lhs, 1.0, atol=1e-10)


def test_nonconvex_degenerate_cases():
    T = np.array([[1, 1], [1, -1]], dtype=complex)
    e = nonconvex_ellipse_at(T, 3.0, 1.0, 0.0)
    assert (e.center_x, e.semi_axis_x, e.semi_axis_y) == (1.0, 0.0, 0.0)
    r = 0.5 ** (1 / 3)
    with pytest.raises(DegenerateParameterError):
        # c = -b: the G denominator is |r^(p-2) - s^(p-2)|, zero at r = s
        nonconvex_ellipse_at(np.array([[1, 1], [-1, -1]], dtype=complex), 3.0, r, r)
    with pytest.raises(DomainError):
        nonconvex_ellipse_at(T, 3.0, 0.5, 0.5)
