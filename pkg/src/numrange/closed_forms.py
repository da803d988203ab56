"""Closed-form descriptions of numerical ranges on l_p^2.

Covers the constant ``c_p = (1/p)^(1/p) (1/q)^(1/q)``, the discs of
nilpotent and shifted nilpotent operators, the circle family of
``[[1, b], [0, -1]]`` with its envelope, the ellipse family of real 2x2
matrices and the ellipse family of the non-convex class.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, HypothesisError, DegenerateParameterError
from .sip import as_pnorm
from .sampler import as_matrix

__all__ = [
    "critical_constant", "Disc", "disc_form", "CircleFamily", "circle_at",
    "BoundaryPoint", "envelope_point", "envelope_arrays", "Ellipse",
    "real_ellipse_at", "real_ellipse_arrays", "check_nonconvex_hypotheses",
    "nonconvex_ellipse_at", "nonconvex_ellipse_arrays", "radius_upper_bound",
    "radial_profile_g", "corollary_decomposition", "EXCLUDED_THETAS",
]

EXCLUDED_THETAS = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi)
HYPOTHESIS_TOL = 1e-12
TAN2_FLOOR = 1e-300


def critical_constant(pn):
    pn = as_pnorm(pn)
    # log form: exact 0.5 at p = 2 and exactly symmetric in p <-> q
    return math.exp(-math.log(pn.p) / pn.p - math.log(pn.q) / pn.q)


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float


def disc_form(alpha, beta, pn):
    """Range of ``[[alpha, beta], [0, alpha]]`` (and of any single off-diagonal unit entry)."""
    return Disc(complex(alpha), abs(beta) * critical_constant(pn))


def radius_upper_bound(b, pn):
    """Upper bound ``1 + |b| c_p`` on the numerical radius of ``[[1, b], [0, -1]]``."""
    return 1.0 + abs(b) * critical_constant(pn)


def corollary_decomposition(a, b, d):
    """Write ``[[a, b], [0, d]]`` as ``alpha I + beta T'`` with ``T' = [[1, b'], [0, -1]]``.

    Returns ``(alpha, beta, b')``.  Requires ``a != d``.
    """
    if a == d:
        raise DomainError("decomposition needs distinct diagonal entries")
    return (a + d) / 2, (a - d) / 2, 2 * b / (a - d)


@dataclass(frozen=True)
class CircleFamily:
    """Circles ``C(theta)`` with center ``cos 2 theta`` and radius ``R(theta)``."""

    b: complex
    pn: object

    def __post_init__(self):
        object.__setattr__(self, "pn", as_pnorm(self.pn))

    def center(self, theta):
        return np.cos(2 * np.asarray(theta, dtype=float))

    def radius(self, theta):
        theta = np.asarray(theta, dtype=float)
        return (abs(self.b) * (np.sin(theta) ** 2) ** (1 / self.pn.p)
                * (np.cos(theta) ** 2) ** (1 / self.pn.q))


def circle_at(cf, theta):
    return float(cf.center(theta)), float(cf.radius(theta))


def radial_profile_g(z, b, pn):
    """``g(z) = |b|/2 (1-z)^(1/p) (1+z)^(1/q)``; ``g(cos 2 theta) = R(theta)``."""
    pn = as_pnorm(pn)
    z = np.asarray(z, dtype=float)
    if np.any((z < -1.0) | (z > 1.0)):
        raise DomainError("radial profile is defined on [-1, 1]")
    out = abs(b) / 2 * (1 - z) ** (1 / pn.p) * (1 + z) ** (1 / pn.q)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class BoundaryPoint:
    theta: float
    x: float
    y_squared: float
    f_value: float
    admissible: bool
    # x'(theta) = f'(theta) - 2 sin 2 theta, expected nonzero on the boundary
    x_slope: float

    @property
    def y(self):
        return math.sqrt(max(self.y_squared, 0.0))


def envelope_arrays(b, pn, theta):
    """Vectorized envelope data ``(x, y_squared, f, admissible)``.

    Entries at the excluded angles are NaN with ``admissible`` False.
    """
    pn = as_pnorm(pn)
    theta = np.asarray(theta, dtype=float)
    p, q = pn.p, pn.q
    b2 = abs(b) ** 2
    s2, c2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        tan2 = np.maximum(s2 / c2, TAN2_FLOOR)
        f = b2 / 2 * np.exp((2 - p) / p * np.log(tan2)) * (c2 / p - s2 / q)
        radius2 = b2 * s2 ** (2 / p) * c2 ** (2 / q)
        x = np.cos(2 * theta) + f
        y2 = radius2 - f ** 2
        admissible = tan2 ** (2 / q) >= b2 / 4 * (1 / p - tan2 / q) ** 2
    bad = _excluded_mask(theta) | ~np.isfinite(tan2)
    x, y2, f = (np.where(bad, np.nan, v) for v in (x, y2, f))
    return x, y2, f, admissible & ~bad


def _excluded_mask(theta):
    k = np.round(theta / (np.pi / 2))
    return np.abs(theta - k * (np.pi / 2)) < 1e-12


def envelope_point(b, pn, theta):
    """Envelope point of the circle family at ``theta``.

    ``x = cos 2 theta + f(theta)``, ``y^2 = R^2 - f^2``; ``y_squared`` is kept
    even when negative, with ``admissible`` False.
    """
    theta = float(theta)
    if _excluded_mask(np.array(theta)):
        raise DomainError("envelope is undefined at theta in {0, pi/2, pi, 3pi/2, 2pi}")
    x, y2, f, ok = envelope_arrays(b, pn, theta)
    h = 1e-6
    fp = (envelope_arrays(b, pn, theta + h)[2] - envelope_arrays(b, pn, theta - h)[2]) / (2 * h)
    return BoundaryPoint(theta, float(x), float(y2), float(f), bool(ok),
                         float(fp - 2 * math.sin(2 * theta)))


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned ellipse centered on the real axis."""

    center_x: float
    semi_axis_x: float
    semi_axis_y: float


def _require_real(T):
    if np.any(np.abs(T.imag) > HYPOTHESIS_TOL * max(1.0, np.abs(T).max())):
        raise HypothesisError("matrix entries must be real")


def real_ellipse_arrays(T, pn, theta):
    """Signed ``(h, F, G)`` of the real-entry ellipse family."""
    pn = as_pnorm(pn)
    a, b, c, d = T.real.ravel()
    theta = np.asarray(theta, dtype=float)
    cs, sn = np.abs(np.cos(theta)), np.abs(np.sin(theta))
    h = a * cs ** 2 + d * sn ** 2
    u = cs ** (2 / pn.q) * sn ** (2 / pn.p)
    v = cs ** (2 / pn.p) * sn ** (2 / pn.q)
    return h, b * u + c * v, b * u - c * v


def real_ellipse_at(T, pn, theta):
    T = as_matrix(T)
    if T.shape != (2, 2):
        raise HypothesisError("real-entry ellipse family needs a 2x2 matrix")
    _require_real(T)
    h, F, G = real_ellipse_arrays(T, pn, theta)
    return Ellipse(float(h), abs(float(F)), abs(float(G)))


def check_nonconvex_hypotheses(T, pn):
    """Raise :class:`HypothesisError` naming the first violated condition."""
    pn = as_pnorm(pn)
    T = as_matrix(T)
    if T.shape != (2, 2):
        raise HypothesisError("a 2x2 matrix is required")
    if abs(pn.p - 2.0) <= HYPOTHESIS_TOL:
        raise HypothesisError("p ∉ {1,2,∞} required")
    (a, b), (c, d) = T
    scale = max(1.0, np.abs(T).max())
    tol = HYPOTHESIS_TOL * scale
    if abs(a.imag) > tol or abs(d.imag) > tol:
        raise HypothesisError("diagonal entries a, d must be real")
    if abs(a) <= tol or abs(d) <= tol:
        raise HypothesisError("diagonal entries a, d must be nonzero")
    if abs(a + d) > tol:
        raise HypothesisError("condition (i) a + d = 0 violated")
    if abs(b) <= tol or abs(c) <= tol:
        raise HypothesisError("off-diagonal entries b, c must be nonzero")
    if abs(abs(b) - abs(c)) > tol:
        raise HypothesisError("condition (ii) |b| = |c| violated")
    if abs(b.real * c.imag + b.imag * c.real) > tol * scale:
        raise HypothesisError("condition (iii) Re(b)Im(c) + Re(c)Im(b) = 0 violated")


def nonconvex_ellipse_arrays(T, pn, r, s):
    """Signed ``(H, F, G, denominator_F, denominator_G)`` on arrays ``r, s > 0``."""
    pn = as_pnorm(pn)
    (a, b), (c, _) = T
    a = a.real
    lam = abs(b)
    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        rp, sp = r ** (pn.p - 2), s ** (pn.p - 2)
        num = lam ** 2 * r * s * (rp ** 2 - sp ** 2)
        den_f = np.hypot(b.real * rp - c.real * sp, b.imag * rp + c.imag * sp)
        den_g = np.hypot(b.real * rp + c.real * sp, -b.imag * rp + c.imag * sp)
        F, G = num / den_f, num / den_g
    return a * (r ** pn.p - s ** pn.p), F, G, den_f, den_g


def nonconvex_ellipse_at(T, pn, r, s):
    pn = as_pnorm(pn)
    T = as_matrix(T)
    check_nonconvex_hypotheses(T, pn)
    if r < 0 or s < 0 or abs(r ** pn.p + s ** pn.p - 1) > 1e-12:
        raise DomainError("need r, s >= 0 with r^p + s^p = 1")
    if r * s == 0:
        return Ellipse(float(T[0, 0].real * (r ** pn.p - s ** pn.p)), 0.0, 0.0)
    H, F, G, den_f, den_g = nonconvex_ellipse_arrays(T, pn, r, s)
    if den_f < 1e-12 or den_g < 1e-12:
        raise DegenerateParameterError(f"vanishing denominator at r={r!r}, s={s!r}")
    return Ellipse(float(H), abs(float(F)), abs(float(G)))
