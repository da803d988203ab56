"""``numrange`` command line.

Exit status: 0 on success or a passing check, 1 on a failing check, 2 on
usage errors (bad flags, unparsable matrices, hypotheses not met).
"""

import argparse
import sys

import numpy as np

from .boundary import boundary_polyline
from .checks import CHECKS, run_check
from .documents import (CloudDocument, cloud_document, format_matrix, parse_entry,
                        parse_matrix)
from .errors import NumRangeError
from .plotting import OVERLAYS, overlay_polylines, render_figure, render_svg
from .sampler import numerical_radius, sample_range
from .sip import PNorm

__all__ = ["main", "build_parser"]

P_MIN, P_MAX = 1.0001, 1000.0
PLOT_GRID_2D = (256, 128)
PLOT_GRID_ND = (32, 16)


class UsageError(Exception):
    pass


def _p_value(text):
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not P_MIN < p < P_MAX:
        raise argparse.ArgumentTypeError(f"p must satisfy {P_MIN} < p < {P_MAX:g}, got {text}")
    return p


def _grid(text):
    parts = text.lower().split("x")
    try:
        vals = tuple(int(v) for v in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like K1xK2, got {text!r}") from None
    if len(vals) == 1:
        vals = vals * 2
    if len(vals) != 2 or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"grid must look like K1xK2, got {text!r}")
    return vals


def _matrix(text):
    try:
        return parse_matrix(text)
    except NumRangeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex(text):
    try:
        return parse_entry(text)
    except NumRangeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


class _ListChecks(argparse.Action):
    def __init__(self, option_strings, dest, **kw):
        super().__init__(option_strings, dest, nargs=0, **kw)

    def __call__(self, parser, namespace, values, option_string=None):
        for name, (_, doc) in CHECKS.items():
            print(f"{name:15s} {doc}")
        parser.exit(0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="numrange",
        description="Numerical ranges of matrices on l_p spaces via the semi-inner-product.")
    parser.add_argument("--list-checks", action=_ListChecks, help="list check names and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", type=_matrix, required=True, help='matrix spec, e.g. "0,1;0,0"')
    common.add_argument("--p", type=_p_value, required=True, help="exponent, 1.0001 < p < 1000")
    common.add_argument("--grid", type=_grid, help="sphere grid K1xK2")

    s = sub.add_parser("sample", parents=[common], help="sample V(T) on the sphere grid")
    s.add_argument("--out", help="write the cloud document here instead of stdout")
    s.add_argument("--boundary", action="store_true", help="append the closed-form boundary")
    s.add_argument("--figure", help="also render a matplotlib figure (png, svg, pdf)")

    r = sub.add_parser("radius", parents=[common], help="numerical radius with argmax")
    r.add_argument("--refine-tol", type=_positive, default=1e-12)

    b = sub.add_parser("boundary", parents=[common], help="boundary polyline of a 2x2 class")
    b.add_argument("--theta-steps", type=int, default=2048)
    b.add_argument("--out")

    c = sub.add_parser("check", help="run a named check; exit status reflects the verdict")
    c.add_argument("name", choices=list(CHECKS))
    c.add_argument("--matrix", type=_matrix, help="required by every check except sip-axioms")
    c.add_argument("--p", type=_p_value, required=True)
    c.add_argument("--grid", type=_grid)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=_positive)
    c.add_argument("--alpha", type=_complex, default=1.0, help="affine: shift (default 1)")
    c.add_argument("--beta", type=_complex, default=2.0, help="affine: scale (default 2)")
    c.add_argument("--matrix2", type=_matrix, help="minkowski: second summand (default: seeded random)")
    c.add_argument("--samples", type=int, help="sip-axioms: trial count (default 10000)")
    c.add_argument("--n", type=int, default=2, help="sip-axioms: dimension without --matrix")
    c.add_argument("--figure", help="render the sampled range with the verdict overlay")

    pl = sub.add_parser("plot", parents=[common], help="SVG scatter of V(T) with overlays")
    pl.add_argument("--svg", help="SVG output file (default stdout)")
    pl.add_argument("--overlay", action="append", choices=OVERLAYS, default=[])
    pl.add_argument("--png", help="also render a matplotlib PNG")
    pl.add_argument("--figure", help="also render a matplotlib figure in any supported format")
    return parser


def _emit(text, path, stdout):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _title(T, pn):
    return f"V(T), T = [{format_matrix(T)}], p = {pn.p:g}"


def _cmd_sample(args, out):
    pn = PNorm(args.p)
    cloud = sample_range(args.matrix, pn, args.grid)
    boundary = None
    if args.boundary:
        z = boundary_polyline(args.matrix, pn)
        boundary = np.stack([z.real, z.imag], axis=-1)
    _emit(cloud_document(cloud, boundary).to_text(), args.out, out)
    if args.figure:
        overlays = [("envelope", [boundary[:, 0] + 1j * boundary[:, 1]])] if args.boundary else []
        render_figure(args.figure, cloud, overlays, title=_title(args.matrix, pn))
    return 0


def _cmd_radius(args, out):
    res = numerical_radius(args.matrix, PNorm(args.p), args.grid, args.refine_tol)
    out.write(f"radius: {res.value:.12f}\n")
    for k, v in res.argmax.items():
        v = np.atleast_1d(v)
        out.write(f"argmax.{k}: {' '.join(f'{x:.12f}' for x in v)}\n")
    out.write(f"coarse_value: {res.coarse_value:.12f}\n")
    out.write(f"refinement_residual: {res.refinement_residual:.3e}\n")
    return 0


def _cmd_boundary(args, out):
    if args.theta_steps < 8:
        raise UsageError("--theta-steps must be at least 8")
    z = boundary_polyline(args.matrix, PNorm(args.p), args.theta_steps)
    doc = CloudDocument(args.p, 2, (args.theta_steps, 1), args.matrix, np.empty((0, 2)),
                        np.stack([z.real, z.imag], axis=-1))
    _emit(doc.to_text(), args.out, out)
    return 0


def _cmd_check(args, out):
    pn = PNorm(args.p)
    opts = {"seed": args.seed, "tol": args.tol, "grid": args.grid, "alpha": args.alpha,
            "beta": args.beta, "matrix2": args.matrix2, "samples": args.samples, "n": args.n}
    report, ctx = run_check(args.name, args.matrix, pn, **opts)
    out.write(report.to_text())
    if args.figure and args.matrix is not None:
        ctx = ctx or {}
        cloud = ctx.get("cloud")
        if cloud is None:
            cloud = sample_range(args.matrix, pn, args.grid or _plot_grid(args.matrix))
        overlays = [("hull", overlay_polylines("hull", args.matrix, pn, cloud))]
        render_figure(args.figure, cloud, overlays, ctx.get("witness"),
                      title=f"{args.name}: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def _plot_grid(T):
    return PLOT_GRID_2D if np.shape(T)[0] == 2 else PLOT_GRID_ND


def _cmd_plot(args, out):
    pn = PNorm(args.p)
    cloud = sample_range(args.matrix, pn, args.grid or _plot_grid(args.matrix))
    overlays = [(k, overlay_polylines(k, args.matrix, pn, cloud)) for k in args.overlay]
    _emit(render_svg(cloud, overlays, title=_title(args.matrix, pn)), args.svg, out)
    for path in (args.png, args.figure):
        if path:
            render_figure(path, cloud, overlays, title=_title(args.matrix, pn))
    return 0


_COMMANDS = {"sample": _cmd_sample, "radius": _cmd_radius, "boundary": _cmd_boundary,
             "check": _cmd_check, "plot": _cmd_plot}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, stdout)
    except (NumRangeError, UsageError, ValueError) as exc:
        print(f"numrange {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
