"""Brute-force numerical ranges and numerical radii.

``sample_range`` evaluates ``[Tx, x]`` on the deterministic sphere grid;
every point of the resulting cloud is attained by an explicit unit vector.
``numerical_radius`` takes the best grid cell and polishes it by
coordinate-wise golden-section search in windows that halve every round.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .optimize import golden_max
from .sip import (as_pnorm, grid_shape, iter_sphere_grid, norm_lp, sip_lp,
                  vectors_from_params)

__all__ = ["as_matrix", "PointCloud", "RadiusResult", "sample_range",
           "numerical_radius", "operator_norm_estimate", "range_values"]

REFINE_ROUNDS = 40


def as_matrix(T):
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionError(f"operator must be a square matrix, got shape {T.shape}")
    if T.shape[0] < 2:
        raise DimensionError("operator order must be >= 2")
    if not np.all(np.isfinite(T)):
        raise ValueError("matrix entries must be finite")
    return T


def range_values(T, vectors, pn):
    """``[Tx, x]_p`` for each row ``x`` of ``vectors``."""
    vectors = np.asarray(vectors, dtype=complex)
    if vectors.shape[-1] != T.shape[0]:
        raise DimensionError(f"vectors have length {vectors.shape[-1]}, operator has order {T.shape[0]}")
    return sip_lp(vectors @ T.T, vectors, pn)


@dataclass
class PointCloud:
    """Sampled points of V(T) with the grid parameters that generated them.

    ``params`` follows the layout of :func:`numrange.sip.vectors_from_params`.
    ``label`` records any transformation applied after sampling.
    """

    points: np.ndarray
    params: np.ndarray
    p: float
    matrix: np.ndarray
    resolution: tuple
    label: str = "V(T)"
    boundary: np.ndarray = field(default=None, repr=False)

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def values(self):
        return self.points[:, 0] + 1j * self.points[:, 1]

    def vectors(self):
        return vectors_from_params(self.params, self.n, self.p)

    def recompute(self):
        """Re-evaluate ``[Tx, x]`` from the stored parameters."""
        z = range_values(self.matrix, self.vectors(), self.p)
        return np.stack([z.real, z.imag], axis=-1)

    def __len__(self):
        return len(self.points)


def sample_range(T, pn, resolution=None):
    T = as_matrix(T)
    pn = as_pnorm(pn)
    shape = grid_shape(T.shape[0], resolution)
    pts, prm = [], []
    for params, vectors in iter_sphere_grid(T.shape[0], pn, shape):
        z = range_values(T, vectors, pn)
        pts.append(np.stack([z.real, z.imag], axis=-1))
        prm.append(params)
    return PointCloud(np.concatenate(pts), np.concatenate(prm), pn.p, T, shape)


@dataclass
class RadiusResult:
    value: float
    argmax: dict
    refinement_residual: float
    coarse_value: float

    def params(self):
        """Argmax in the layout accepted by ``vectors_from_params``."""
        if "theta" in self.argmax:
            return np.array([[self.argmax["theta"], self.argmax["phi"]]])
        return np.concatenate([self.argmax["weights"], self.argmax["phases"]])[None, :]


# Refinement works in smooth coordinates: for n >= 3 the weights |x_k|^p are
# written with hyperspherical angles so every coordinate ranges over an interval.

def _weights_from_angles(angles):
    angles = np.atleast_2d(angles)
    c2, s2 = np.cos(angles) ** 2, np.sin(angles) ** 2
    tail = np.cumprod(np.concatenate([np.ones((len(angles), 1)), s2], axis=1), axis=1)
    return np.concatenate([tail[:, :-1] * c2, tail[:, -1:]], axis=1)


def _angles_from_weights(w):
    angles, rest = [], 1.0
    for wk in w[:-1]:
        ratio = wk / rest if rest > 0 else 1.0
        angles.append(np.arccos(np.sqrt(np.clip(ratio, 0.0, 1.0))))
        rest -= wk
    return np.array(angles)


class _Coordinates:
    def __init__(self, n, shape):
        self.n = n
        k_mag, k_phase = shape
        if n == 2:
            self.widths = np.array([np.pi / 2 / (k_mag - 1), 2 * np.pi / k_phase])
        else:
            self.widths = np.concatenate([np.full(n - 1, np.pi / (k_mag - 1)),
                                          np.full(n - 1, 2 * np.pi / k_phase)])

    def from_params(self, params):
        if self.n == 2:
            return np.array(params, dtype=float)
        return np.concatenate([_angles_from_weights(params[:self.n]), params[self.n:]])

    def to_params(self, u):
        u = np.atleast_2d(u)
        if self.n == 2:
            return u
        return np.concatenate([_weights_from_angles(u[:, :self.n - 1]), u[:, self.n - 1:]], axis=1)

    def argmax_dict(self, params):
        if self.n == 2:
            return {"theta": float(params[0]), "phi": float(params[1])}
        return {"weights": params[:self.n].copy(), "phases": params[self.n:].copy()}


def _grid_argmax(T, pn, shape, score):
    best, best_params = -np.inf, None
    for params, vectors in iter_sphere_grid(T.shape[0], pn, shape):
        s = score(vectors)
        i = int(np.argmax(s))
        if s[i] > best:
            best, best_params = float(s[i]), params[i].copy()
    return best, best_params


def _refine(score, coords, u0, best, refine_tol):
    u = u0.copy()
    h = coords.widths.copy()
    residual = 0.0
    for _ in range(REFINE_ROUNDS):
        if h.max() < refine_tol:
            break
        before = best
        for i in range(len(u)):
            def along(t, i=i):
                t = np.atleast_1d(t)
                trial = np.repeat(u[None, :], len(t), axis=0)
                trial[:, i] = t
                return score(coords.to_params(trial))
            t, val = golden_max(along, u[i] - h[i], u[i] + h[i], iters=48)
            val = float(np.atleast_1d(val)[0])
            if val > best:
                best, u[i] = val, float(np.atleast_1d(t)[0])
        residual = best - before
        h /= 2.0
    return u, best, residual


def numerical_radius(T, pn, resolution=None, refine_tol=1e-12):
    """Numerical radius ``sup |[Tx, x]|`` as a certified lower bound.

    The stored argmax reproduces ``value`` exactly since ``value`` is always
    an evaluation of the objective.
    """
    T = as_matrix(T)
    pn = as_pnorm(pn)
    if refine_tol <= 0:
        raise ValueError("refine_tol must be positive")
    n = T.shape[0]
    shape = grid_shape(n, resolution)
    coords = _Coordinates(n, shape)

    def score(params):
        return np.abs(range_values(T, vectors_from_params(params, n, pn), pn))

    coarse, params = _grid_argmax(T, pn, shape, lambda v: np.abs(range_values(T, v, pn)))
    u, best, residual = _refine(score, coords, coords.from_params(params), coarse, refine_tol)
    final = coords.to_params(u)[0] if best > coarse else params
    value = float(score(final[None, :])[0])
    return RadiusResult(value, coords.argmax_dict(final), float(residual), coarse)


def operator_norm_estimate(T, pn, resolution=None, refine_tol=1e-12):
    """Lower bound on the l_p operator norm: ``max ||Tx||_p`` over the sphere."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    n = T.shape[0]
    shape = grid_shape(n, resolution)
    coords = _Coordinates(n, shape)

    def score(params):
        return norm_lp(vectors_from_params(params, n, pn) @ T.T, pn)

    coarse, params = _grid_argmax(T, pn, shape, lambda v: norm_lp(v @ T.T, pn))
    u, best, _ = _refine(score, coords, coords.from_params(params), coarse, refine_tol)
    return float(max(best, coarse))
