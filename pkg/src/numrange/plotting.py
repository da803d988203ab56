"""Figures of sampled ranges: a dependency-free SVG writer and matplotlib rendering."""

import numpy as np

from .boundary import boundary_polyline
from .errors import ConfigurationError, HypothesisError
from .geometry import convex_hull
from .regions import (AffineRegion, CircleRegion, DiscRegion, NonconvexEllipseRegion,
                      RealEllipseRegion, region_for)

__all__ = ["OVERLAYS", "overlay_polylines", "render_svg", "render_figure"]

OVERLAYS = ("circles", "ellipses", "envelope", "hull")
SIZE = 800
MARGIN = 0.05
_COLORS = {"circles": "#1f77b4", "ellipses": "#2ca02c", "envelope": "#d62728", "hull": "#9467bd"}


def _family_curves(region, count=16, samples=181):
    t = np.linspace(*region.t_range, count + 2)[1:-1]
    phi = np.linspace(0.0, 2 * np.pi, samples)
    return [region.curve(np.full_like(phi, tk), phi) for tk in t]


def overlay_polylines(kind, T, pn, cloud):
    """Polylines (complex arrays) for one overlay kind."""
    if kind == "hull":
        v = convex_hull(cloud.points).vertices
        z = v[:, 0] + 1j * v[:, 1]
        return [np.append(z, z[:1])]
    if kind not in OVERLAYS:
        raise ConfigurationError(f"unknown overlay {kind!r}")
    region = region_for(T, pn)
    if kind == "envelope":
        return [boundary_polyline(T, pn)]
    base = region.base if isinstance(region, AffineRegion) else region
    if kind == "circles":
        if isinstance(region, DiscRegion):
            return [boundary_polyline(T, pn)]
        if isinstance(base, CircleRegion):
            return _family_curves(region)
        raise HypothesisError("circle overlay needs a triangular 2x2 matrix")
    if isinstance(base, (RealEllipseRegion, NonconvexEllipseRegion)):
        return _family_curves(region)
    raise HypothesisError("ellipse overlay needs a real 2x2 matrix or the non-convex class")


def _transform(points):
    lo, hi = points.min(axis=0), points.max(axis=0)
    span = float(max((hi - lo).max(), 1e-12))
    inner = SIZE * (1 - 2 * MARGIN)
    scale = inner / span
    mid = (lo + hi) / 2

    def to_px(z):
        x = SIZE / 2 + (np.real(z) - mid[0]) * scale
        y = SIZE / 2 - (np.imag(z) - mid[1]) * scale
        return x, y

    return to_px


def render_svg(cloud, overlays=(), witness=None, title=None):
    """SVG 1.1 text; identical inputs give byte-identical output."""
    pts = cloud.points
    to_px = _transform(pts)
    x, y = to_px(pts[:, 0] + 1j * pts[:, 1])
    marks = np.unique(np.round(np.stack([x, y], axis=-1), 2), axis=0)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
           f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<g fill="black" fill-opacity="0.35">')
    out += [f'<circle cx="{a:.2f}" cy="{b:.2f}" r="1"/>' for a, b in marks]
    out.append("</g>")
    for kind, lines in overlays:
        color = _COLORS.get(kind, "#ff7f0e")
        for z in lines:
            px, py = to_px(np.asarray(z))
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
            out.append(f'<polyline class="{kind}" fill="none" stroke="{color}" '
                       f'stroke-width="1" points="{coords}"/>')
    if witness is not None:
        wx, wy = to_px(complex(*witness))
        out.append(f'<path class="witness" stroke="#ff7f0e" stroke-width="2" '
                   f'd="M{wx - 6:.2f},{wy:.2f}H{wx + 6:.2f}M{wx:.2f},{wy - 6:.2f}V{wy + 6:.2f}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_figure(path, cloud, overlays=(), witness=None, title=None):
    """Write a matplotlib rendering; the format follows the file extension."""
    from matplotlib.figure import Figure

    fig = Figure(figsize=(6, 6), dpi=120)
    ax = fig.add_subplot()
    ax.scatter(cloud.points[:, 0], cloud.points[:, 1], s=0.3, c="black", alpha=0.35,
               linewidths=0, rasterized=True, label=cloud.label)
    for kind, lines in overlays:
        for k, z in enumerate(lines):
            z = np.asarray(z)
            ax.plot(z.real, z.imag, lw=0.8, color=_COLORS.get(kind),
                    label=kind if k == 0 else None)
    if witness is not None:
        ax.plot([witness[0]], [witness[1]], marker="x", ms=9, color="#ff7f0e",
                ls="none", label="witness")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(loc="upper right", fontsize=8)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fmt = str(path).rsplit(".", 1)[-1].lower()
    meta = {"png": {"Software": None}, "svg": {"Date": None},
            "pdf": {"CreationDate": None}}.get(fmt, {})
    fig.savefig(path, metadata=meta)
