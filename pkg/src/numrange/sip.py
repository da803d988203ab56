"""Semi-inner-product on the finite dimensional spaces l_p^n.

Vectors are numpy arrays whose last axis indexes coordinates, so every
function here broadcasts over stacks of vectors.  The two-dimensional unit
sphere is parametrized by an angle ``theta`` and phases, the magnitudes being
``|cos theta|**(2/p)`` and ``|sin theta|**(2/p)``.
"""

from dataclasses import dataclass, field
from itertools import combinations
import math

import numpy as np

from .errors import ConfigurationError, DimensionError

__all__ = [
    "PNorm", "as_pnorm", "norm_lp", "sip_lp", "SphereParam2", "sphere_point",
    "sphere_grid", "iter_sphere_grid", "vectors_from_params", "grid_shape",
    "grid_size", "AxiomReport", "sip_axiom_report", "DEFAULT_RESOLUTION_2D",
    "DEFAULT_RESOLUTION_ND", "MAX_DIMENSION", "MAX_GRID_POINTS",
]

DEFAULT_RESOLUTION_2D = (1024, 512)
DEFAULT_RESOLUTION_ND = (64, 64)
MAX_DIMENSION = 8
MAX_GRID_POINTS = 20_000_000


@dataclass(frozen=True)
class PNorm:
    """Exponent ``p`` of l_p together with its conjugate ``q``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not (math.isfinite(p) and p > 1.0):
            raise ConfigurationError(f"exponent must satisfy 1 < p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))

    def conjugate(self):
        return PNorm(self.q)

    def __str__(self):
        return f"p={self.p:g}"


def as_pnorm(pn):
    if isinstance(pn, PNorm):
        return pn
    return PNorm(pn)


def _as_vectors(x):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0:
        raise DimensionError("expected a vector, got a scalar")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    return x


def norm_lp(x, pn):
    """l_p norm along the last axis."""
    pn = as_pnorm(pn)
    x = _as_vectors(x)
    return np.sum(np.abs(x) ** pn.p, axis=-1) ** (1.0 / pn.p)


def sip_lp(x, y, pn):
    """Semi-inner-product ``[x, y]`` compatible with the l_p norm.

    ``sum_k x_k conj(y_k) |y_k|**(p-2) / ||y||_p**(p-2)``, with zero
    coordinates of ``y`` contributing nothing (also for ``p < 2``) and the
    value 0 when ``y`` is the zero vector.
    """
    pn = as_pnorm(pn)
    x = _as_vectors(x)
    y = _as_vectors(y)
    if x.shape[-1] != y.shape[-1]:
        raise DimensionError(f"length mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    ay = np.abs(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        weight = np.where(ay > 0, ay ** (pn.p - 2.0), 0.0)
        num = np.sum(x * np.conj(y) * weight, axis=-1)
        ny = np.sum(ay ** pn.p, axis=-1) ** (1.0 / pn.p)
        out = np.where(ny > 0, num / ny ** (pn.p - 2.0), 0.0)
    if out.ndim == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class SphereParam2:
    theta: float
    phi1: float = 0.0
    phi2: float = 0.0


def _magnitudes2(theta, pn):
    theta = np.asarray(theta, dtype=float)
    return (np.abs(np.cos(theta)) ** (2.0 / pn.p),
            np.abs(np.sin(theta)) ** (2.0 / pn.p))


def sphere_point(sp, pn):
    """Unit vector ``(|cos t|^(2/p) e^(i phi1), |sin t|^(2/p) e^(i phi2))``."""
    pn = as_pnorm(pn)
    m1, m2 = _magnitudes2(sp.theta, pn)
    return np.array([m1 * np.exp(1j * sp.phi1), m2 * np.exp(1j * sp.phi2)])


def grid_shape(n, resolution=None):
    """Normalize ``resolution`` into ``(magnitude_count, phase_count)``."""
    if n < 2:
        raise ConfigurationError(f"dimension must be >= 2, got {n}")
    if n > MAX_DIMENSION:
        raise ConfigurationError(f"dimension {n} exceeds the supported maximum {MAX_DIMENSION}")
    if resolution is None:
        resolution = DEFAULT_RESOLUTION_2D if n == 2 else DEFAULT_RESOLUTION_ND
    if np.isscalar(resolution):
        resolution = (int(resolution), int(resolution))
    k_mag, k_phase = (int(r) for r in resolution)
    if k_mag < 2:
        raise ConfigurationError(f"magnitude resolution must be >= 2, got {k_mag}")
    if k_phase < 1:
        raise ConfigurationError(f"phase resolution must be >= 1, got {k_phase}")
    return k_mag, k_phase


def grid_size(n, resolution=None):
    k_mag, k_phase = grid_shape(n, resolution)
    if n == 2:
        return k_mag * k_phase
    return math.comb(k_mag - 1 + n - 1, n - 1) * k_phase ** (n - 1)


def _simplex_weights(n, k):
    """All weight vectors ``c / (k-1)`` with ``c`` a composition of ``k-1``."""
    total = k - 1
    rows = []
    for bars in combinations(range(total + n - 1), n - 1):
        edges = (-1,) + bars + (total + n - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(n)])
    return np.array(rows, dtype=float) / total


def _phase_grid(n, k_phase):
    base = 2.0 * np.pi * np.arange(k_phase) / k_phase
    mesh = np.meshgrid(*([base] * (n - 1)), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def vectors_from_params(params, n, pn):
    """Rebuild unit vectors from stored grid parameters.

    For ``n == 2`` the columns are ``(theta, phi)`` with ``phi = phi2 - phi1``
    and ``phi1 = 0``.  For ``n >= 3`` they are the weights ``|x_k|**p``
    followed by the phases of coordinates 2..n (coordinate 1 has phase 0).
    """
    pn = as_pnorm(pn)
    params = np.atleast_2d(np.asarray(params, dtype=float))
    if n == 2:
        m1, m2 = _magnitudes2(params[:, 0], pn)
        return np.stack([m1.astype(complex), m2 * np.exp(1j * params[:, 1])], axis=-1)
    w = params[:, :n]
    phases = np.concatenate([np.zeros((len(params), 1)), params[:, n:]], axis=1)
    return w ** (1.0 / pn.p) * np.exp(1j * phases)


def iter_sphere_grid(n, pn, resolution=None, chunk_size=1 << 20):
    """Yield ``(params, vectors)`` chunks of the deterministic sphere grid.

    The enumeration is magnitude-major: for ``n == 2`` theta runs over
    ``linspace(0, pi/2, K1)`` and the phase difference over ``2 pi j / K2``;
    for larger ``n`` the weights run over the simplex lattice with ``K1``
    points per edge and every phase of coordinates 2..n over ``2 pi j / K2``.
    """
    pn = as_pnorm(pn)
    k_mag, k_phase = grid_shape(n, resolution)
    size = grid_size(n, (k_mag, k_phase))
    if size > MAX_GRID_POINTS:
        raise ConfigurationError(
            f"grid of {size} points for n={n} exceeds {MAX_GRID_POINTS}; lower the resolution")
    if n == 2:
        theta = np.linspace(0.0, np.pi / 2, k_mag)
        phi = 2.0 * np.pi * np.arange(k_phase) / k_phase
        rows = max(1, chunk_size // k_phase)
        for start in range(0, k_mag, rows):
            t = np.repeat(theta[start:start + rows], k_phase)
            f = np.tile(phi, len(t) // k_phase)
            params = np.stack([t, f], axis=-1)
            yield params, vectors_from_params(params, 2, pn)
        return
    weights = _simplex_weights(n, k_mag)
    phases = _phase_grid(n, k_phase)
    rows = max(1, chunk_size // len(phases))
    for start in range(0, len(weights), rows):
        w = np.repeat(weights[start:start + rows], len(phases), axis=0)
        f = np.tile(phases, (len(w) // len(phases), 1))
        params = np.concatenate([w, f], axis=1)
        yield params, vectors_from_params(params, n, pn)


def sphere_grid(n, pn, resolution=None):
    """Whole sphere grid as ``(params, vectors)`` arrays."""
    chunks = list(iter_sphere_grid(n, pn, resolution))
    return (np.concatenate([c[0] for c in chunks]),
            np.concatenate([c[1] for c in chunks]))


@dataclass
class AxiomReport:
    """Maximum relative violation of each semi-inner-product axiom."""

    p: float
    n: int
    sample_count: int
    seed: int
    violations: dict
    # [x, y+z] = [x,y] + [x,z] is not an axiom; kept as a diagnostic.
    second_slot_additivity: float

    def passed(self, tol=1e-10):
        return all(v <= tol for v in self.violations.values())

    def lines(self):
        out = [f"sip-axioms p={self.p:.17g} n={self.n} samples={self.sample_count} seed={self.seed}"]
        for name, v in self.violations.items():
            out.append(f"{name}: {v:.3e}")
        out.append(f"second_slot_additivity (diagnostic): {self.second_slot_additivity:.3e}")
        return out


def _random_vectors(rng, count, n):
    return rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))


def sip_axiom_report(pn, n=2, sample_count=1000, seed=0):
    """Check the semi-inner-product axioms on seeded random data.

    Uses ``numpy.random.default_rng(seed)`` (PCG64).  Violations are scaled
    by ``max(1, natural magnitude of the terms)``.
    """
    pn = as_pnorm(pn)
    if sample_count < 1:
        raise ConfigurationError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    x, y, z = (_random_vectors(rng, sample_count, n) for _ in range(3))
    lam = rng.standard_normal(sample_count) + 1j * rng.standard_normal(sample_count)
    nx, ny, nz = norm_lp(x, pn), norm_lp(y, pn), norm_lp(z, pn)

    xz, yz = sip_lp(x, z, pn), sip_lp(y, z, pn)
    xy = sip_lp(x, y, pn)
    xx, yy = sip_lp(x, x, pn), sip_lp(y, y, pn)

    def worst(residual, scale):
        return float(np.max(np.abs(residual) / np.maximum(1.0, scale)))

    violations = {
        "additivity": worst(sip_lp(x + y, z, pn) - xz - yz, (nx + ny) * nz),
        "homogeneity": worst(sip_lp(lam[:, None] * x, y, pn) - lam * xy,
                             np.abs(lam) * nx * ny),
        "conjugate_homogeneity": worst(sip_lp(x, lam[:, None] * y, pn) - np.conj(lam) * xy,
                                       np.abs(lam) * nx * ny),
        "positivity": worst(np.maximum(0.0, -xx.real) + np.abs(xx.imag), nx ** 2),
        "norm_compatibility": worst(xx - nx ** 2, nx ** 2),
        "cauchy_schwarz": worst(np.maximum(0.0, np.abs(xy) ** 2 - (xx * yy).real),
                                (xx * yy).real),
    }
    second = worst(sip_lp(x, y + z, pn) - xy - sip_lp(x, z, pn), nx * (ny + nz))
    return AxiomReport(pn.p, n, sample_count, seed, violations, second)
