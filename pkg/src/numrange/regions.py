"""Numerical ranges described as unions of parametrized curves.

Every 2x2 class with a closed form is a one-parameter family of
axis-aligned ellipses (circles included) centered on the real axis,
possibly followed by an affine map ``z -> alpha + beta z``.  A point lies in
the union of the curves iff

    m(t) = ((x - cx(t)) / ax(t))^2 + (y / ay(t))^2 - 1

has a zero on ``[0, pi/2]``.  Each family degenerates to single points at
the ends of the parameter interval, where ``m >= 0``, so membership reduces
to ``min_t m(t) <= 0``; the union of the curves equals the union of the
filled ellipses.
"""

import numpy as np

from .closed_forms import (CircleFamily, check_nonconvex_hypotheses,
                           critical_constant, nonconvex_ellipse_arrays,
                           real_ellipse_arrays)
from .errors import HypothesisError
from .optimize import bisect_root, golden_max, golden_min
from .sampler import as_matrix
from .sip import as_pnorm

__all__ = ["ParametricRegion", "CircleRegion", "RealEllipseRegion",
           "NonconvexEllipseRegion", "DiscRegion", "AffineRegion",
           "region_for", "region_membership", "ellipse_distance",
           "maximize_nonconvex_g", "DEFAULT_SCAN"]

DEFAULT_SCAN = 512
DEGENERATE_DENOMINATOR = 1e-12
_CHUNK = 4096


def _default_tol(x, y):
    return 1e-9 * (1.0 + x ** 2 + y ** 2)


def _scaled_square(num, den):
    # (num/den)^2 with the conventions 0/0 -> 0 and num/0 -> inf
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (num / den) ** 2
    out = np.where(den > 0, out, np.where(num == 0, 0.0, np.inf))
    return out


def ellipse_distance(u, v, ax, ay, iters=64):
    """Distance from ``(u, v)`` to the filled ellipse ``(x/ax)^2 + (y/ay)^2 <= 1``.

    Outside points are projected by bisection on the Lagrange multiplier
    ``s >= 0`` of ``(ax u/(s+ax^2))^2 + (ay v/(s+ay^2))^2 = 1``.  Semi-axes may
    vanish (segments and points).
    """
    u, v, ax, ay = np.broadcast_arrays(np.abs(u), np.abs(v), np.abs(ax), np.abs(ay))
    u, v, ax, ay = (np.array(w, dtype=float) for w in (u, v, ax, ay))
    out = np.full(u.shape, np.nan)
    seg_x = ay == 0
    seg_y = (ax == 0) & ~seg_x
    out[seg_x] = np.hypot(np.maximum(u[seg_x] - ax[seg_x], 0.0), v[seg_x])
    out[seg_y] = np.hypot(u[seg_y], np.maximum(v[seg_y] - ay[seg_y], 0.0))
    full = ~(seg_x | seg_y)
    if np.any(full):
        uf, vf, af, bf = u[full], v[full], ax[full], ay[full]
        inside = (uf / af) ** 2 + (vf / bf) ** 2 <= 1.0
        lo = np.zeros_like(uf)
        hi = np.sqrt(2.0) * np.maximum(af * uf, bf * vf) + 1e-300

        def g(s):
            return (af * uf / (s + af ** 2)) ** 2 + (bf * vf / (s + bf ** 2)) ** 2 - 1.0

        s = bisect_root(g, lo, hi, iters)
        x0 = af ** 2 * uf / (s + af ** 2)
        y0 = bf ** 2 * vf / (s + bf ** 2)
        out[full] = np.where(inside, 0.0, np.hypot(uf - x0, vf - y0))
    return out


class ParametricRegion:
    """Union over ``t in [0, pi/2]`` of axis-aligned ellipses on the real axis."""

    t_range = (0.0, np.pi / 2)
    name = "region"

    def axes(self, t):
        """Return ``(cx, ax, ay, valid)`` arrays for parameters ``t``."""
        raise NotImplementedError

    def curve(self, t, phi):
        cx, ax, ay, _ = self.axes(t)
        return cx + ax * np.cos(phi) + 1j * ay * np.sin(phi)

    def witness_candidates(self):
        """Candidate non-members as ``(point, supports)`` with ``point`` the mean of ``supports``."""
        return []

    def m(self, x, y, t):
        cx, ax, ay, valid = self.axes(t)
        val = _scaled_square(x - cx, ax) + _scaled_square(y, ay) - 1.0
        return np.where(valid, val, np.inf)

    def _distance_at(self, x, y, t):
        cx, ax, ay, valid = self.axes(t)
        return np.where(valid, ellipse_distance(x - cx, y, ax, ay), np.inf)

    def _scan(self, fn, x, y, scan_resolution):
        t = np.linspace(*self.t_range, scan_resolution + 1)
        vals = np.empty((len(x), len(t)))
        for start in range(0, len(x), _CHUNK):
            sl = slice(start, start + _CHUNK)
            vals[sl] = fn(x[sl, None], y[sl, None], t[None, :])
        return t, vals

    def _refine_min(self, fn, x, y, t, vals):
        j = np.argmin(vals, axis=1)
        step = t[1] - t[0]
        lo = np.clip(t[j] - step, *self.t_range)
        hi = np.clip(t[j] + step, *self.t_range)
        tt, best = golden_min(lambda s: fn(x, y, s), lo, hi, iters=60)
        scan_best = vals[np.arange(len(x)), j]
        better = best < scan_best
        return np.where(better, tt, t[j]), np.where(better, best, scan_best)

    def membership(self, points, scan_resolution=DEFAULT_SCAN, tol=None):
        """Vectorized membership of planar ``points`` (shape ``(N, 2)``).

        Returns ``(member, parameter, min_m)``.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        tol = _default_tol(x, y) if tol is None else np.broadcast_to(tol, x.shape)
        t, vals = self._scan(self.m, x, y, scan_resolution)
        tt, best = self._refine_min(self.m, x, y, t, vals)
        return best <= tol, tt, best

    def distance(self, points, scan_resolution=DEFAULT_SCAN):
        """Euclidean distance from each point to the region.

        The distance is smooth in ``t``, so the scan is capped at 128 cells
        before golden-section polishing.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        t, vals = self._scan(self._distance_at, x, y, min(scan_resolution, 128))
        return self._refine_min(self._distance_at, x, y, t, vals)[1]


class CircleRegion(ParametricRegion):
    """Range of ``[[1, b], [0, -1]]``: the union of the circles ``C(theta)``."""

    name = "circles"

    def __init__(self, b, pn):
        self.family = CircleFamily(complex(b), as_pnorm(pn))

    def axes(self, t):
        r = self.family.radius(t)
        return self.family.center(t), r, r, np.ones(np.shape(r), dtype=bool)

    def m(self, x, y, t):
        # distance form (x - cos 2t)^2 + y^2 - R(t)^2
        return (x - self.family.center(t)) ** 2 + y ** 2 - self.family.radius(t) ** 2

    def _distance_at(self, x, y, t):
        return np.maximum(np.hypot(x - self.family.center(t), y) - self.family.radius(t), 0.0)


class RealEllipseRegion(ParametricRegion):
    """Range of a real 2x2 matrix as the union of the ellipses ``E_theta``."""

    name = "ellipses"

    def __init__(self, T, pn):
        self.T = as_matrix(T)
        self.pn = as_pnorm(pn)

    def axes(self, t):
        h, F, G = real_ellipse_arrays(self.T, self.pn, t)
        return h, np.abs(F), np.abs(G), np.ones(np.shape(h), dtype=bool)


class NonconvexEllipseRegion(ParametricRegion):
    """Union of the ellipses ``E(r, s)`` with ``r = |cos t|^(2/p)``, ``s = |sin t|^(2/p)``."""

    name = "ellipses"

    def __init__(self, T, pn):
        self.T = as_matrix(T)
        self.pn = as_pnorm(pn)
        check_nonconvex_hypotheses(self.T, self.pn)
        self._witness = None

    def rs(self, t):
        t = np.asarray(t, dtype=float)
        return (np.abs(np.cos(t)) ** (2 / self.pn.p), np.abs(np.sin(t)) ** (2 / self.pn.p))

    def axes(self, t):
        r, s = self.rs(t)
        H, F, G, den_f, den_g = nonconvex_ellipse_arrays(self.T, self.pn, r, s)
        point = r * s == 0
        valid = point | ((den_f >= DEGENERATE_DENOMINATOR) & (den_g >= DEGENERATE_DENOMINATOR))
        F = np.where(point, 0.0, np.abs(F))
        G = np.where(point, 0.0, np.abs(G))
        return H, np.nan_to_num(F), np.nan_to_num(G), valid

    def semi_axis_y(self, t):
        _, _, G, valid = self.axes(t)
        return np.where(valid, G, 0.0)

    def witness_candidates(self):
        if self._witness is None:
            self._witness = maximize_nonconvex_g(self)
        _, h0, g0 = self._witness
        return [((0.0, g0), [(h0, g0), (-h0, g0)])]


def maximize_nonconvex_g(region, resolution=4096, refine_tol=1e-12):
    """Maximize ``|G|`` over ``t``; returns ``(t0, H0, G0)``."""
    t = np.linspace(*region.t_range, resolution + 1)
    g = region.semi_axis_y(t)
    j = int(np.argmax(g))
    step = t[1] - t[0]
    lo, hi = max(t[j] - step, t[0]), min(t[j] + step, t[-1])
    iters = int(np.ceil(np.log(refine_tol / (hi - lo)) / np.log(0.618))) + 1
    t0, g0 = golden_max(region.semi_axis_y, np.array([lo]), np.array([hi]), iters=max(iters, 1))
    t0, g0 = float(t0[0]), float(g0[0])
    if g[j] > g0:
        t0, g0 = float(t[j]), float(g[j])
    cx, _, _, _ = region.axes(t0)
    return t0, float(cx), g0


class DiscRegion(ParametricRegion):
    """Closed disc, e.g. the range of ``[[alpha, beta], [0, alpha]]``."""

    name = "disc"

    def __init__(self, center, radius):
        self.center = complex(center)
        self.radius = float(radius)

    def curve(self, t, phi):
        return self.center + self.radius * (2 * np.asarray(t) / np.pi) * np.exp(1j * np.asarray(phi))

    def membership(self, points, scan_resolution=DEFAULT_SCAN, tol=None):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        d = np.hypot(pts[:, 0] - self.center.real, pts[:, 1] - self.center.imag)
        tol = _default_tol(pts[:, 0], pts[:, 1]) if tol is None else tol
        m = d ** 2 - self.radius ** 2
        t = np.pi / 2 * np.minimum(d / self.radius, 1.0) if self.radius > 0 else np.zeros_like(d)
        return m <= tol, t, m

    def distance(self, points, scan_resolution=DEFAULT_SCAN):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        d = np.hypot(pts[:, 0] - self.center.real, pts[:, 1] - self.center.imag)
        return np.maximum(d - self.radius, 0.0)


class AffineRegion(ParametricRegion):
    """Image ``alpha + beta * base`` of another region."""

    def __init__(self, base, alpha, beta):
        self.base = base
        self.alpha = complex(alpha)
        self.beta = complex(beta)
        self.name = base.name

    def _pull(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = (pts[:, 0] + 1j * pts[:, 1] - self.alpha) / self.beta
        return np.stack([w.real, w.imag], axis=-1)

    def curve(self, t, phi):
        return self.alpha + self.beta * self.base.curve(t, phi)

    def witness_candidates(self):
        return [(self._push(c), [self._push(s) for s in sup])
                for c, sup in self.base.witness_candidates()]

    def _push(self, c):
        z = self.alpha + self.beta * complex(*c)
        return (z.real, z.imag)

    def membership(self, points, scan_resolution=DEFAULT_SCAN, tol=None):
        if tol is not None:
            tol = np.asarray(tol) / abs(self.beta) ** 2
        return self.base.membership(self._pull(points), scan_resolution, tol)

    def distance(self, points, scan_resolution=DEFAULT_SCAN):
        return abs(self.beta) * self.base.distance(self._pull(points), scan_resolution)


def region_for(T, pn):
    """Closed-form region of a 2x2 matrix, or ``None`` outside the known classes."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    if T.shape != (2, 2):
        return None
    (a, b), (c, d) = T
    if c == 0 or b == 0:
        if c != 0:
            # swapping coordinates is an isometry of l_p^2
            a, b, d = d, c, a
        if a == d:
            return DiscRegion(a, abs(b) * critical_constant(pn))
        return AffineRegion(CircleRegion(2 * b / (a - d), pn), (a + d) / 2, (a - d) / 2)
    try:
        return NonconvexEllipseRegion(T, pn)
    except HypothesisError:
        pass
    if np.all(T.imag == 0):
        return RealEllipseRegion(T, pn)
    return None


def region_membership(family, point, scan_resolution=DEFAULT_SCAN, tol=None):
    """Membership of one planar point in a parametric region.

    Scans ``m(t)``; a sign change is refined by bisection, otherwise the
    smallest scanned value is polished by golden-section search.  Returns
    ``(member, t)`` with ``t`` the located parameter (``None`` when no
    parameter is meaningful).
    """
    if scan_resolution < 16:
        raise ValueError("scan_resolution must be >= 16")
    x, y = (float(v) for v in point)
    if tol is None:
        tol = float(_default_tol(x, y))
    if isinstance(family, AffineRegion):
        w = family._pull([x, y])[0]
        return region_membership(family.base, w, scan_resolution, tol / abs(family.beta) ** 2)
    if isinstance(family, DiscRegion):
        member, t, _ = family.membership([[x, y]], tol=tol)
        return bool(member[0]), float(t[0])
    t = np.linspace(*family.t_range, scan_resolution + 1)
    m = family.m(x, y, t)
    near = np.flatnonzero(np.abs(m) <= tol)
    neg = np.flatnonzero(m < 0)
    if len(neg):
        k = neg[0]
        if k == 0 or np.abs(m[k - 1]) <= tol:
            return True, float(t[max(k - 1, 0)])
        root = bisect_root(lambda s: family.m(x, y, s), t[k - 1], t[k], iters=60)
        return True, float(root)
    if len(near):
        return True, float(t[near[0]])
    member, tt, _ = family.membership([[x, y]], scan_resolution, tol)
    return bool(member[0]), float(tt[0])
