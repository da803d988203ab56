"""Executable checks of the relations between numerical ranges.

Each check returns a :class:`CheckReport`; reports render to a stable
``key: value`` text so identical inputs give byte-identical output.
"""

from dataclasses import dataclass, field

import numpy as np

from .closed_forms import nonconvex_ellipse_arrays
from .errors import DimensionError, HypothesisError
from .geometry import Affine, Conjugate, MirrorVertical, hausdorff, transform_cloud
from .regions import NonconvexEllipseRegion, maximize_nonconvex_g, region_membership
from .sampler import as_matrix, range_values, sample_range
from .sip import as_pnorm, norm_lp, sip_lp

__all__ = ["CheckReport", "affine_covariance_check", "transpose_mirror_check",
           "transpose_dual_check", "adjoint_dual_check", "nonconvexity_witness",
           "transpose_correspondence_residual", "adjoint_correspondence_residual",
           "format_matrix", "DUALITY_TOL", "EXACT_TOL"]

DUALITY_TOL = 5e-3
EXACT_TOL = 1e-12
MARGIN_SLACK = 1e-6


def _fmt_number(x):
    x = complex(x)
    re, im = f"{x.real:.17g}", f"{abs(x.imag):.17g}"
    if x.imag == 0:
        return re
    sign = "-" if x.imag < 0 or (x.imag == 0 and np.signbit(x.imag)) else "+"
    if x.real == 0:
        return f"{'-' if sign == '-' else ''}{im}i"
    return f"{re}{sign}{im}i"


def format_matrix(T):
    """Render a matrix in the ``a,b;c,d`` text form accepted by the CLI."""
    return ";".join(",".join(_fmt_number(v) for v in row) for row in np.asarray(T))


@dataclass
class CheckReport:
    """Outcome of one check.

    ``comparison`` is ``"<="`` when the metric must not exceed the
    threshold and ``">"`` when it must exceed it.
    """

    name: str
    inputs: dict
    metric_name: str
    metric: float
    threshold: float
    comparison: str
    passed: bool
    extra: dict = field(default_factory=dict)
    witness_data: dict = None

    def lines(self):
        out = [f"check: {self.name}"]
        out += [f"input.{k}: {v}" for k, v in self.inputs.items()]
        out.append(f"metric.{self.metric_name}: {self.metric:.10e}")
        out.append(f"threshold: {self.comparison} {self.threshold:.3e}")
        for k, v in self.extra.items():
            out.append(f"{k}: {v:.10e}" if isinstance(v, float) else f"{k}: {v}")
        for k, v in (self.witness_data or {}).items():
            out.append(f"witness.{k}: {v:.12g}" if isinstance(v, float) else f"witness.{k}: {v}")
        out.append(f"status: {'PASS' if self.passed else 'FAIL'}")
        return out

    def to_text(self):
        return "\n".join(self.lines()) + "\n"


def _inputs(T, pn, resolution=None, **more):
    d = {"matrix": format_matrix(T), "p": f"{pn.p:.17g}"}
    if resolution is not None:
        d["grid"] = "x".join(str(r) for r in resolution)
    d.update({k: str(v) for k, v in more.items()})
    return d


def _require_2x2(T):
    if T.shape != (2, 2):
        raise DimensionError("duality checks are implemented for 2x2 matrices only")


def affine_covariance_check(T, alpha, beta, pn, resolution=None):
    """Compare the range of ``alpha I + beta T`` with ``alpha + beta V(T)`` pointwise."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    n = T.shape[0]
    base = sample_range(T, pn, resolution)
    shifted = sample_range(alpha * np.eye(n) + beta * T, pn, resolution)
    mapped = transform_cloud(base, Affine(alpha, beta))
    metric = float(np.hypot(*(shifted.points - mapped.points).T).max())
    op_norm = float(norm_lp(base.vectors() @ T.T, pn).max())
    threshold = EXACT_TOL * (1 + abs(alpha) + abs(beta) * op_norm)
    return CheckReport("affine", _inputs(T, pn, base.resolution, alpha=complex(alpha),
                                         beta=complex(beta)),
                       "max_pointwise_distance", metric, threshold, "<=", metric <= threshold)


def transpose_mirror_check(T, pn, resolution=None, tol=DUALITY_TOL):
    """``V(T^t)`` against the mirror image of ``V(T)`` in ``x = (a+d)/2``; real ``T``."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    _require_2x2(T)
    if np.any(T.imag != 0):
        raise HypothesisError("transpose mirror check needs real entries")
    x0 = float((T[0, 0].real + T[1, 1].real) / 2)
    cloud = sample_range(T, pn, resolution)
    cloud_t = sample_range(T.T, pn, resolution)
    metric = hausdorff(cloud_t, transform_cloud(cloud, MirrorVertical(x0)))
    return CheckReport("mirror", _inputs(T, pn, cloud.resolution, axis=x0),
                       "hausdorff", metric, tol, "<=", metric <= tol)


def _correspondence_params(samples, seed):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2 * np.pi, size=(3, samples))


def transpose_correspondence_residual(T, pn, samples=10_000, seed=0):
    """Max of ``|[Tz,z]_p - [T^t w,w]_q|`` over random ``(theta, theta1, theta2)``.

    ``z = (c^(2/p) e^(i theta1), s^(2/p) e^(i theta2))`` and
    ``w = (c^(2/q) e^(i theta2), s^(2/q) e^(i theta1))`` with ``c = |cos theta|``,
    ``s = |sin theta|``.
    """
    T = as_matrix(T)
    pn = as_pnorm(pn)
    th, t1, t2 = _correspondence_params(samples, seed)
    c, s = np.abs(np.cos(th)), np.abs(np.sin(th))
    z = np.stack([c ** (2 / pn.p) * np.exp(1j * t1), s ** (2 / pn.p) * np.exp(1j * t2)], axis=-1)
    w = np.stack([c ** (2 / pn.q) * np.exp(1j * t2), s ** (2 / pn.q) * np.exp(1j * t1)], axis=-1)
    lhs = range_values(T, z, pn)
    rhs = sip_lp(w @ T, w, pn.conjugate())  # rows of w @ T are T^t w
    return float(np.abs(lhs - rhs).max())


def adjoint_correspondence_residual(T, pn, samples=10_000, seed=0):
    """Max of ``|[Tx,x]_p - conj([T* y,y]_q)|``; ``y`` keeps the phases of ``x``."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    th, t1, t2 = _correspondence_params(samples, seed)
    c, s = np.abs(np.cos(th)), np.abs(np.sin(th))
    x = np.stack([c ** (2 / pn.p) * np.exp(1j * t1), s ** (2 / pn.p) * np.exp(1j * t2)], axis=-1)
    y = np.stack([c ** (2 / pn.q) * np.exp(1j * t1), s ** (2 / pn.q) * np.exp(1j * t2)], axis=-1)
    lhs = range_values(T, x, pn)
    rhs = np.conj(range_values(T.conj().T, y, pn.conjugate()))
    return float(np.abs(lhs - rhs).max())


def transpose_dual_check(T, pn, resolution=None, tol=DUALITY_TOL, samples=10_000, seed=0):
    """``V(T)`` on l_p^2 against ``V(T^t)`` on l_q^2."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    _require_2x2(T)
    cloud = sample_range(T, pn, resolution)
    cloud_t = sample_range(T.T, pn.conjugate(), resolution)
    metric = hausdorff(cloud, cloud_t)
    residual = transpose_correspondence_residual(T, pn, samples, seed)
    passed = metric <= tol and residual <= EXACT_TOL
    return CheckReport("transpose-dual", _inputs(T, pn, cloud.resolution, q=f"{pn.q:.17g}", seed=seed),
                       "hausdorff", metric, tol, "<=", passed,
                       {"correspondence_residual": residual})


def adjoint_dual_check(T, pn, resolution=None, tol=DUALITY_TOL, samples=10_000, seed=0):
    """``V(T)`` on l_p^2 against the conjugate of ``V(T*)`` on l_q^2."""
    T = as_matrix(T)
    pn = as_pnorm(pn)
    _require_2x2(T)
    cloud = sample_range(T, pn, resolution)
    cloud_adj = sample_range(T.conj().T, pn.conjugate(), resolution)
    metric = hausdorff(cloud, transform_cloud(cloud_adj, Conjugate()))
    residual = adjoint_correspondence_residual(T, pn, samples, seed)
    passed = metric <= tol and residual <= EXACT_TOL
    return CheckReport("adjoint-dual", _inputs(T, pn, cloud.resolution, q=f"{pn.q:.17g}", seed=seed),
                       "hausdorff", metric, tol, "<=", passed,
                       {"correspondence_residual": residual})


def nonconvexity_witness(T, pn, rs_resolution=4096, refine_tol=1e-12):
    """Certify that ``(0, G0)`` lies in the hull of ``V(T)`` but not in ``V(T)``.

    ``G0`` maximizes the vertical semi-axis over the family; ``(H0, G0)`` and
    ``(-H0, G0)`` are checked for membership, and the margin
    ``min ((0 - H)/F)^2 + (G0/G)^2`` over the parameter grid must exceed 1.
    """
    T = as_matrix(T)
    pn = as_pnorm(pn)
    region = NonconvexEllipseRegion(T, pn)
    t0, h0, g0 = maximize_nonconvex_g(region, rs_resolution, refine_tol)
    r0, s0 = (float(v) for v in region.rs(t0))
    left = region_membership(region, (h0, g0))[0]
    right = region_membership(region, (-h0, g0))[0]

    t = np.linspace(*region.t_range, rs_resolution + 1)
    r, s = region.rs(t)
    H, F, G, den_f, den_g = nonconvex_ellipse_arrays(T, pn, r, s)
    ok = (r * s > 0) & (den_f >= 1e-12) & (den_g >= 1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(F != 0, (H / F) ** 2, np.where(H == 0, 0.0, np.inf))
        q = q + np.where(G != 0, (g0 / G) ** 2, np.inf)
    margin = float(np.min(q[ok]))
    threshold = 1 + MARGIN_SLACK
    passed = bool(left and right and margin > threshold)
    flags = []
    if r0 * s0 < 1e-6:
        flags.append("r0*s0 near 0")
    if abs(r0 - s0) < 1e-6:
        flags.append("r0 near s0")
    witness = {"x": 0.0, "y": g0, "H0": h0, "r0": r0, "s0": s0, "t0": t0,
               "member(H0,G0)": bool(left), "member(-H0,G0)": bool(right),
               "flags": ",".join(flags) or "none"}
    return CheckReport("nonconvexity", _inputs(T, pn, rs_resolution=rs_resolution),
                       "margin", margin, threshold, ">", passed, witness_data=witness)
