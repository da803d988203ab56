"""Registry of the named checks exposed by ``numrange check``."""

import numpy as np

from .closed_forms import radius_upper_bound
from .dualities import (CheckReport, _inputs, adjoint_dual_check,
                        affine_covariance_check, format_matrix, nonconvexity_witness,
                        transpose_dual_check, transpose_mirror_check, DUALITY_TOL)
from .errors import ConfigurationError, HypothesisError
from .geometry import convexity_verdict, minkowski_containment
from .regions import region_for
from .sampler import numerical_radius, sample_range
from .sip import sip_axiom_report

__all__ = ["CHECKS", "run_check"]


def _sip_axioms(T, pn, opts):
    n = T.shape[0] if T is not None else opts.get("n", 2)
    tol = opts.get("tol") or 1e-10
    rep = sip_axiom_report(pn, n, opts.get("samples") or 10_000, opts.get("seed", 0))
    worst = max(rep.violations.values())
    extra = {f"violation.{k}": v for k, v in rep.violations.items()}
    extra["diagnostic.second_slot_additivity"] = rep.second_slot_additivity
    inputs = {"p": f"{pn.p:.17g}", "n": str(n), "samples": str(rep.sample_count), "seed": str(rep.seed)}
    return CheckReport("sip-axioms", inputs, "max_violation", worst, tol, "<=", worst <= tol, extra), None


def _convexity(T, pn, opts):
    cloud = sample_range(T, pn, opts.get("grid"))
    region = region_for(T, pn)
    verdict = convexity_verdict(cloud, region, tol=opts.get("tol"))
    extra = {"verdict": verdict.verdict, "method": verdict.method,
             "probes": verdict.probe_count, "tol": verdict.tol}
    witness = None
    if verdict.witness is not None:
        witness = {"x": verdict.witness[0], "y": verdict.witness[1]}
    rep = CheckReport("convexity", _inputs(T, pn, cloud.resolution), "defect", verdict.defect,
                      10 * verdict.tol, "<=", verdict.verdict == "convex", extra, witness)
    return rep, {"cloud": cloud, "region": region, "witness": verdict.witness}


def _nonconvexity(T, pn, opts):
    rep = nonconvexity_witness(T, pn)
    w = rep.witness_data
    return rep, {"witness": (w["x"], w["y"]), "region": region_for(T, pn)}


def _mirror(T, pn, opts):
    return transpose_mirror_check(T, pn, opts.get("grid"), opts.get("tol") or DUALITY_TOL), None


def _transpose_dual(T, pn, opts):
    return transpose_dual_check(T, pn, opts.get("grid"), opts.get("tol") or DUALITY_TOL,
                                seed=opts.get("seed", 0)), None


def _adjoint_dual(T, pn, opts):
    return adjoint_dual_check(T, pn, opts.get("grid"), opts.get("tol") or DUALITY_TOL,
                              seed=opts.get("seed", 0)), None


def _affine(T, pn, opts):
    return affine_covariance_check(T, opts.get("alpha", 1.0), opts.get("beta", 2.0), pn,
                                   opts.get("grid")), None


def _minkowski(T, pn, opts):
    T2 = opts.get("matrix2")
    if T2 is None:
        rng = np.random.default_rng(opts.get("seed", 0))
        T2 = rng.standard_normal(T.shape) + 1j * rng.standard_normal(T.shape)
    if T2.shape != T.shape:
        raise ConfigurationError("second matrix must have the same order")
    grid = opts.get("grid")
    rep = minkowski_containment(sample_range(T + T2, pn, grid), sample_range(T, pn, grid),
                                sample_range(T2, pn, grid), opts.get("tol") or 1e-12)
    inputs = _inputs(T, pn, seed=opts.get("seed", 0))
    inputs["matrix2"] = format_matrix(T2)
    return CheckReport("minkowski", inputs, "max_residual", rep.max_residual, rep.tol, "<=",
                       rep.passed, {"points": rep.count}), None


def _bound(T, pn, opts):
    if T.shape != (2, 2) or T[0, 0] != 1 or T[1, 0] != 0 or T[1, 1] != -1:
        raise HypothesisError("bound check needs a matrix of the form [[1, b], [0, -1]]")
    b = T[0, 1]
    res = numerical_radius(T, pn, opts.get("grid"))
    bound = radius_upper_bound(b, pn)
    slack = opts.get("tol") or 1e-9
    rep = CheckReport("bound", _inputs(T, pn), "numerical_radius", res.value, bound + slack, "<=",
                      res.value <= bound + slack, {"upper_bound": bound})
    return rep, None


CHECKS = {
    "sip-axioms": (_sip_axioms, "semi-inner-product axioms on seeded random vectors"),
    "convexity": (_convexity, "probe the hull of V(T) for points outside V(T)"),
    "nonconvexity": (_nonconvexity, "witness (0, G0) for the non-convex class"),
    "mirror": (_mirror, "V(T^t) is the mirror image of V(T) in x=(a+d)/2 (real T)"),
    "transpose-dual": (_transpose_dual, "V(T) on l_p equals V(T^t) on l_q"),
    "adjoint-dual": (_adjoint_dual, "V(T) on l_p equals conj V(T*) on l_q"),
    "affine": (_affine, "V(alpha I + beta T) = alpha + beta V(T)"),
    "minkowski": (_minkowski, "V(T1+T2) within V(T1)+V(T2), pointwise on a shared grid"),
    "bound": (_bound, "v(T) <= 1 + |b| c_p for T=[[1,b],[0,-1]]"),
}


def run_check(name, T, pn, **opts):
    """Run a registered check; returns ``(CheckReport, figure_context or None)``."""
    if name not in CHECKS:
        raise ConfigurationError(f"unknown check {name!r}")
    if T is None and name != "sip-axioms":
        raise ConfigurationError(f"check {name!r} needs --matrix")
    return CHECKS[name][0](T, pn, opts)
