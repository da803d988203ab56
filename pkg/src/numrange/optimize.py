"""Derivative-free 1-D search helpers shared by the sampler and the regions."""

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, iters=60):
    """Golden-section maximization of ``f`` on ``[lo, hi]``.

    ``f`` must be vectorized: ``lo`` and ``hi`` may be arrays of independent
    brackets, searched in lockstep.  Returns ``(argmax, max)`` evaluated at
    the final midpoint, assuming ``f`` is unimodal in each bracket.
    """
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    for _ in range(iters):
        c = b - INV_PHI * (b - a)
        d = a + INV_PHI * (b - a)
        left = f(c) >= f(d)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    x = 0.5 * (a + b)
    return x, f(x)


def golden_min(f, lo, hi, iters=60):
    x, v = golden_max(lambda t: -f(t), lo, hi, iters)
    return x, -v


def bisect_root(f, lo, hi, iters=60):
    """Bisection for a sign change of ``f`` between ``lo`` and ``hi``."""
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = f(m)
        same = np.sign(fm) == np.sign(fa)
        a = np.where(same, m, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, m)
    return 0.5 * (a + b)
