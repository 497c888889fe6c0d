"""Command-line front end.

JSON for single evaluations, CSV for traces and grids. Exit status is 0 on
success, 1 when a verified residual exceeds its tolerance and 2 on usage or
domain errors. Vectors are given as ``a,b``; write negative leading values
as ``--x=-0.3,0.1``.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import curvature, diagnostics, disc, geodesics, klein, models, zermelo
from .core import MetricField, in_disc
from .errors import FinslerError

DIGITS = 15
VERIFY_TOL = 1e-6


def fmt(value) -> str:
    return f"{value:.{DIGITS}g}"


def _num(value):
    # JSON number rounded to the output precision; None stays null
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(fmt(value))


def _vec(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two components, got {text!r}")
    return np.array(parts)


def _ints(text):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'nx,ny', got {text!r}")
    if len(parts) != 2 or min(parts) < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 cells per axis")
    return parts


def _box(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'xmin,xmax,ymin,ymax', got {text!r}")
    if len(parts) != 4 or parts[0] >= parts[1] or parts[2] >= parts[3]:
        raise argparse.ArgumentTypeError("grid box must be xmin,xmax,ymin,ymax with min < max")
    return parts


# -- metric registry ----------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    field: MetricField
    parts: Optional[Callable] = None
    distance: Optional[Callable] = None
    # straight segments are geodesics, so the length integral verifies the distance
    projective: bool = False
    radius: Optional[float] = None


def _disc_parts(d):
    def parts(x, xi):
        p = x - np.asarray(d.center)
        gap = d.radius**2 - float(p @ p)
        px = float(p @ xi)
        return math.sqrt(gap * float(xi @ xi) + px * px) / gap, px / gap

    return parts


def build_entry(name: str, radius: float = 1.0) -> Entry:
    if name == "klein-funk":
        return Entry(klein.FUNK, klein.alpha_beta, klein.funk_distance, True, klein.R)
    if name == "klein":
        return Entry(klein.KLEIN, lambda x, xi: (klein.klein_norm(x, xi), 0.0), klein.klein_distance, True, 1.0)
    if name == "poincare-funk":
        return Entry(
            models.FUNK_POINCARE,
            models.funk_poincare_parts,
            lambda x, y: klein.funk_distance(models.POINCARE_TO_KLEIN(x), models.POINCARE_TO_KLEIN(y)),
        )
    if name == "upper-funk":
        return Entry(
            models.FUNK_UPPER,
            models.funk_upper_pullback_parts,
            lambda x, y: klein.funk_distance(models.UPPER_TO_KLEIN(x), models.UPPER_TO_KLEIN(y)),
        )
    if name == "upper-funk-printed":
        return Entry(models.FUNK_UPPER_PRINTED, models.funk_upper_parts)
    if name in ("disc-funk", "disc-hilbert"):
        d = disc.EuclideanDisc(radius)
        if name == "disc-funk":
            return Entry(disc.disc_funk_field(d), _disc_parts(d), lambda x, y: disc.funk_distance_disc(d, x, y), True, radius)
        return Entry(disc.disc_hilbert_field(d), None, lambda x, y: disc.hilbert_distance_disc(d, x, y), True, radius)
    raise KeyError(name)


METRICS = ("klein-funk", "klein", "poincare-funk", "upper-funk", "upper-funk-printed", "disc-funk", "disc-hilbert")


# -- commands -----------------------------------------------------------------


def _check_domain(entry: Entry, *points):
    for p in points:
        if not bool(np.all(entry.field.domain(p))):
            raise FinslerError(f"point {p.tolist()} is outside the domain of {entry.field.name}")


def cmd_eval(args, out):
    entry = build_entry(args.metric, args.radius)
    _check_domain(entry, args.x)
    F = float(entry.field(args.x, args.xi))
    alpha = beta = None
    if entry.parts is not None:
        alpha, beta = (float(v) for v in entry.parts(args.x, args.xi))
    record = {
        "metric": args.metric,
        "x": [_num(v) for v in args.x],
        "xi": [_num(v) for v in args.xi],
        "F": _num(F),
        "alpha": _num(alpha),
        "beta": _num(beta),
    }
    out.write(json.dumps(record) + "\n")
    return 0


def cmd_distance(args, out):
    entry = build_entry(args.metric, args.radius)
    if entry.distance is None:
        raise FinslerError(f"no distance function for {args.metric}")
    _check_domain(entry, args.x, args.y)
    d = float(entry.distance(args.x, args.y))
    record = {"metric": args.metric, "x": [_num(v) for v in args.x], "y": [_num(v) for v in args.y], "d": _num(d)}
    status = 0
    if args.verify:
        if not entry.projective:
            raise FinslerError(f"--verify needs straight geodesics; {args.metric} does not have them")
        length = geodesics.segment_length(entry.field, args.x, args.y)
        record.update(length=_num(length), difference=_num(abs(length - d)), tol=VERIFY_TOL)
        status = 0 if abs(length - d) <= VERIFY_TOL else 1
    out.write(json.dumps(record) + "\n")
    return status


def cmd_geodesic(args, out):
    entry = build_entry(args.metric, args.radius)
    if entry.radius is None:
        raise FinslerError(f"geodesic tracing is available for disc-shaped metrics, not {args.metric}")
    _check_domain(entry, args.x0)
    spray = None
    if args.metric == "klein-funk" and not args.numeric_spray:
        spray = geodesics.spray_closed
    elif args.metric == "klein" and not args.numeric_spray:
        spray = geodesics.klein_spray
    trace = geodesics.integrate_geodesic(
        entry.field, args.x0, args.v0, args.t_end, args.step, spray=spray, stop_radius=entry.radius - args.margin
    )
    speeds = np.asarray(entry.field(trace.x, trace.v))
    out.write("t,x1,x2,v1,v2,F\n")
    for t, x, v, f in zip(trace.t, trace.x, trace.v, speeds):
        out.write(",".join(fmt(c) for c in (t, x[0], x[1], v[0], v[1], f)) + "\n")
    out.write(
        f"# terminated_reason={trace.terminated_reason},"
        f"collinearity_residual={fmt(geodesics.collinearity_residual(trace))},"
        f"speed_drift={fmt(geodesics.speed_drift(entry.field, trace))},"
        f"samples={len(trace)}\n"
    )
    return 0


def grid_points(box, counts):
    xs = np.linspace(box[0], box[1], counts[0])
    ys = np.linspace(box[2], box[3], counts[1])
    # row-major in y, then x: output order is fixed
    return np.array([(x, y) for y in ys for x in xs])


def grid_directions(points, mode, fixed):
    r = np.linalg.norm(points, axis=-1)
    if mode == "fixed":
        return np.broadcast_to(fixed, points.shape).copy()
    safe = np.where(r > 0, r, 1.0)[:, None]
    radial = points / safe
    dirs = radial if mode == "radial" else np.stack([-radial[:, 1], radial[:, 0]], axis=-1)
    # the origin has no radial direction; K(0, .) does not depend on it
    return np.where((r > 0)[:, None], dirs, fixed)


def cmd_curvature_grid(args, out):
    points = grid_points(args.grid, args.n)
    inside = in_disc(points, klein.R)
    dirs = grid_directions(points, args.xi_mode, args.xi)
    out.write("x1,x2,S,Ric,K\n")
    rows = {}
    if np.any(inside):
        rep = curvature.riemann_closed(points[inside], dirs[inside])
        for i, s, ric, k in zip(np.flatnonzero(inside), np.atleast_1d(rep.S), np.atleast_1d(rep.Ric), np.atleast_1d(rep.K)):
            rows[i] = (s, ric, k)
    for i, p in enumerate(points):
        vals = ",".join(fmt(v) for v in rows[i]) if i in rows else "null,null,null"
        out.write(f"{fmt(p[0])},{fmt(p[1])},{vals}\n")
    return 0


def cmd_check(args, out):
    if args.suite == "typo-ledger":
        out.write(diagnostics.format_ledger(diagnostics.typo_ledger(min(args.samples, 200), args.seed)) + "\n")
        return 0
    results = diagnostics.run_suite(args.suite, args.samples, args.seed)
    ok = True
    for suite in results:
        for row in suite.rows:
            out.write(f"{'PASS' if row.passed else 'FAIL'} {suite.name}: {row.label}: {fmt(row.value)} (tol {row.tol:g})\n")
        ok &= suite.passed
    return 0 if ok else 1


def cmd_zermelo(args, out):
    nav = zermelo.to_navigation(args.x, verify=True)
    record = {
        "x": [_num(v) for v in args.x],
        "eps": _num(nav.eps),
        "h": [[_num(v) for v in row] for row in nav.h],
        "W": [_num(v) for v in nav.W],
        "wind_norm_sq": _num(nav.wind_norm_sq),
    }
    if args.xi is not None:
        record["xi"] = [_num(v) for v in args.xi]
        record["F"] = _num(zermelo.from_navigation(nav, args.xi))
    out.write(json.dumps(record) + "\n")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="funkfinsler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    def metric_opts(p, default="klein-funk"):
        p.add_argument("--metric", choices=METRICS, default=default)
        p.add_argument("--radius", type=float, default=1.0, help="disc radius for disc-funk and disc-hilbert")

    p = command("eval", cmd_eval, "evaluate F(x, xi) with its Randers parts")
    metric_opts(p)
    p.add_argument("--x", type=_vec, required=True)
    p.add_argument("--xi", type=_vec, required=True)

    p = command("distance", cmd_distance, "distance from x to y")
    metric_opts(p)
    p.add_argument("--x", type=_vec, required=True)
    p.add_argument("--y", type=_vec, required=True)
    p.add_argument("--verify", action="store_true", help="compare with the length of the segment")

    p = command("geodesic", cmd_geodesic, "RK4 geodesic trace as CSV")
    metric_opts(p)
    p.add_argument("--x0", type=_vec, required=True)
    p.add_argument("--v0", type=_vec, required=True)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--margin", type=float, default=1e-3, help="stop this far inside the boundary circle")
    p.add_argument("--numeric-spray", action="store_true", help="use the finite-difference spray")

    p = command("curvature-grid", cmd_curvature_grid, "S, Ric and K of the Funk metric on a grid (CSV)")
    p.add_argument("--grid", type=_box, default=[-0.75, 0.75, -0.75, 0.75], help="xmin,xmax,ymin,ymax")
    p.add_argument("--n", type=_ints, default=[21, 21], help="nx,ny")
    p.add_argument("--xi-mode", choices=("fixed", "radial", "tangential"), default="fixed")
    p.add_argument("--xi", type=_vec, default=np.array([1.0, 0.0]), help="direction for fixed mode")

    p = command("check", cmd_check, "run an invariant suite")
    p.add_argument("suite", choices=sorted(diagnostics.SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=1000)

    p = command("zermelo", cmd_zermelo, "Zermelo navigation data (h, W) at x")
    p.add_argument("--x", type=_vec, required=True)
    p.add_argument("--xi", type=_vec, help="also recover F(x, xi) from the navigation data")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.out:
            with open(args.out, "w") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except FinslerError as exc:
        print(f"funkfinsler {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
