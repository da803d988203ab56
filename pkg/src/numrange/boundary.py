"""Boundary polylines for the 2x2 classes with a closed form."""

import numpy as np

from .closed_forms import envelope_arrays
from .errors import HypothesisError
from .regions import AffineRegion, CircleRegion, DiscRegion, region_for

__all__ = ["boundary_polyline", "family_envelope"]


def _circle_envelope(b, pn, steps):
    theta = np.linspace(0.0, np.pi / 2, steps + 2)[1:-1]
    x, y2, _, ok = envelope_arrays(b, pn, theta)
    ok &= y2 >= 0
    x, y = x[ok], np.sqrt(y2[ok])
    # upper arc left to right in theta, then lower arc back
    return np.concatenate([x + 1j * y, (x - 1j * y)[::-1]])


def family_envelope(region, steps):
    """Envelope of a parametric ellipse family, filtered to boundary points.

    With ``P(t, phi) = (cx + ax cos phi, ay sin phi)`` the envelope condition
    ``det [P_t, P_phi] = 0`` is a quadratic in ``cos phi``.  Roots whose
    point, pushed slightly outward, leaves the region are kept.
    """
    t = np.linspace(*region.t_range, steps + 2)[1:-1]
    h = 1e-7
    cx, ax, ay, valid = region.axes(t)
    ax, ay = np.abs(ax), np.abs(ay)
    cxp, axp, ayp, _ = region.axes(t + h)
    cxm, axm, aym, _ = region.axes(t - h)
    dcx = (cxp - cxm) / (2 * h)
    dax = (np.abs(axp) - np.abs(axm)) / (2 * h)
    day = (np.abs(ayp) - np.abs(aym)) / (2 * h)
    A, B, C = dax * ay - ax * day, ay * dcx, ax * day
    pts = []
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = np.sqrt(B ** 2 - 4 * A * C)
        roots = [(-B + disc) / (2 * A), (-B - disc) / (2 * A)]
        linear = np.abs(A) < 1e-14 * (np.abs(B) + np.abs(C) + 1)
        roots[0] = np.where(linear, -C / B, roots[0])
        for c in roots:
            ok = valid & np.isfinite(c) & (np.abs(c) <= 1) & (ax > 0) & (ay > 0)
            s = np.sqrt(1 - c[ok] ** 2)
            for sign in (1.0, -1.0):
                pts.append(np.stack([cx[ok] + ax[ok] * c[ok], sign * ay[ok] * s,
                                     ax[ok], ay[ok], c[ok], sign * s], axis=-1))
    cand = np.concatenate(pts)
    x, y, a_, b_, c, s = cand.T
    normal = np.stack([c / a_, s / b_], axis=-1)
    normal /= np.linalg.norm(normal, axis=1, keepdims=True)
    scale = 1e-6 * max(1.0, float(np.abs(cand[:, :2]).max()))
    outer = ~region.membership(cand[:, :2] + scale * normal)[0]
    z = x[outer] + 1j * y[outer]
    if len(z) == 0:
        return z
    center = z.mean()
    return z[np.argsort(np.angle(z - center), kind="stable")]


def boundary_polyline(T, pn, steps=2048):
    """Boundary of ``V(T)`` as a complex array, for 2x2 classes with a closed form."""
    region = region_for(T, pn)
    if region is None:
        raise HypothesisError("no closed-form boundary for this matrix")
    if isinstance(region, DiscRegion):
        phi = 2 * np.pi * np.arange(steps) / steps
        return region.center + region.radius * np.exp(1j * phi)
    if isinstance(region, AffineRegion) and isinstance(region.base, CircleRegion):
        z = _circle_envelope(region.base.family.b, region.base.family.pn, steps)
        z = region.alpha + region.beta * z
    else:
        z = family_envelope(region, steps)
    return z
