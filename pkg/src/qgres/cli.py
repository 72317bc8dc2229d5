"""Command-line interface: resonance scans, secular evaluation, orbit dumps,
trajectory Taylor data and tracing, and high-energy window scans.

Output is machine-readable: CSV with a header row, floats printed as 12
significant digits, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .asymptotics import _window_median, run_asymptotics
from .errors import QgresError
from .fermi import fermi_expansion, trace_trajectory
from .fixtures import fixture_names, load_fixture
from .graph import EdgeLengthSchedule, load_graph, load_schedule
from .orbits import enumerate_simple_cycles, format_term, graph_terms
from .rootfind import SearchRegion, find_roots
from .secular import Evaluator, secular


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _parse_range(text: str) -> tuple[float, float]:
    lo, _, hi = text.partition(":")
    return float(lo), float(hi)


def _load_problem(args, need_schedule=False):
    if getattr(args, "fixture", None):
        fx = load_fixture(args.fixture)
        return fx.graph, fx.schedule, fx.k0
    if not getattr(args, "graph", None):
        raise QgresError("either --graph or --fixture is required")
    g = load_graph(args.graph)
    schedule = None
    if need_schedule:
        if not getattr(args, "schedule", None):
            raise QgresError("--schedule is required with --graph")
        schedule = load_schedule(args.schedule, g)
    return g, schedule, None


def _cmd_fixtures(args, out):
    if args.action != "list":
        raise QgresError(f"unknown fixtures action {args.action!r}")
    for name in fixture_names(all_names=args.all):
        fx = load_fixture(name)
        print(f"{name}: {fx.description}", file=out)
    return 0


def _cmd_secular(args, out):
    if args.action != "eval":
        raise QgresError(f"unknown secular action {args.action!r}")
    g, _, _ = _load_problem(args)
    re, _, im = args.k.partition(",")
    k = complex(float(re), float(im or "0"))
    value = secular(g, args.variant)(k)
    print(f"{_fmt(value.real)} {_fmt(value.imag)}", file=out)
    return 0


def _cmd_orbits(args, out):
    g, _, _ = _load_problem(args)
    ev = Evaluator(g)
    terms = graph_terms(ev.bonds)
    for term in terms:
        print(format_term(term, g.n_edges), file=out)
    return 0


def _cmd_resonances(args, out):
    g, _, _ = _load_problem(args)
    re_lo, re_hi = _parse_range(args.re)
    im_lo, im_hi = _parse_range(args.im)
    f = secular(g, args.variant)
    roots = find_roots(f, SearchRegion(re_lo, re_hi, im_lo, im_hi), abs_tol=args.tol)
    print("re_k,im_k,residual,winding,suspect", file=out)
    for r in roots:
        print(
            f"{_fmt(r.k.real)},{_fmt(r.k.imag)},{_fmt(r.residual)},"
            f"{r.winding},{int(r.suspect)}",
            file=out,
        )
    return 0


def _cmd_fermi(args, out):
    g, schedule, k0_default = _load_problem(args, need_schedule=True)
    k0 = args.k0 if args.k0 is not None else k0_default
    if k0 is None:
        raise QgresError("no k0 given and the fixture has none")
    fe = fermi_expansion(g, schedule, k0)
    print(
        f"kdot={_fmt(fe.kdot.real)}, re_kddot={_fmt(fe.kddot.real)}, "
        f"im_kddot={_fmt(fe.kddot.imag)}",
        file=out,
    )
    return 0


def _cmd_trajectory(args, out):
    g, schedule, k0_default = _load_problem(args, need_schedule=True)
    k0 = args.k0 if args.k0 is not None else k0_default
    if k0 is None:
        raise QgresError("no k0 given and the fixture has none")
    t_lo, t_hi = _parse_range(args.t)
    points = trace_trajectory(g, schedule, k0, (t_lo, t_hi), args.steps)
    print("t,re_k,im_k,residual", file=out)
    for p in points:
        print(
            f"{_fmt(p.t)},{_fmt(p.k.real)},{_fmt(p.k.imag)},{_fmt(p.residual)}",
            file=out,
        )
    return 0


def _cmd_asymptotics(args, out):
    g, _, _ = _load_problem(args)
    n_values = range(args.n_min, args.n_max + 1)
    scans, fits = run_asymptotics(g, args.mode, n_values, im_depth=args.im_depth)
    print(
        "window_lo,window_hi,count,median_imag,median_pair_distance,median_real_offset",
        file=out,
    )
    for scan in scans:
        meds = [
            _window_median(scan, q)
            for q in ("imag", "pair_distance", "real_offset")
        ]
        cells = [_fmt(m) if m is not None else "" for m in meds]
        print(
            f"{_fmt(scan.window[0])},{_fmt(scan.window[1])},"
            f"{len(scan.resonances)},{','.join(cells)}",
            file=out,
        )
    print("quantity,slope,intercept,r2", file=out)
    for quantity in ("imag", "pair_distance", "real_offset"):
        fit = fits[quantity]
        if fit is None:
            print(f"{quantity},,,", file=out)
        else:
            print(
                f"{quantity},{_fmt(fit.slope)},{_fmt(fit.intercept)},{_fmt(fit.r2)}",
                file=out,
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgres",
        description="Resonances of quantum graphs with general vertex couplings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_opts(p, schedule=False):
        p.add_argument("--graph", help="graph description file (JSON)")
        p.add_argument("--fixture", help="named fixture instead of --graph")
        if schedule:
            p.add_argument("--schedule", help="edge-length schedule file (JSON)")

    p = sub.add_parser("fixtures", help="list named fixtures")
    p.add_argument("action", choices=["list"])
    p.add_argument("--all", action="store_true", help="include auxiliary fixtures")
    p.set_defaults(fn=_cmd_fixtures)

    p = sub.add_parser("secular", help="evaluate the secular function")
    p.add_argument("action", choices=["eval"])
    add_graph_opts(p)
    p.add_argument("--k", required=True, help="complex k as re,im")
    p.add_argument("--variant", choices=["det", "cleared", "po"], default="det")
    p.set_defaults(fn=_cmd_secular)

    p = sub.add_parser("orbits", help="dump irreducible pseudo-orbit terms")
    add_graph_opts(p)
    p.set_defaults(fn=_cmd_orbits)

    p = sub.add_parser("resonances", help="find all zeros in a rectangle")
    add_graph_opts(p)
    p.add_argument("--re", required=True, help="real range lo:hi")
    p.add_argument("--im", required=True, help="imaginary range lo:hi")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--variant", choices=["det", "cleared", "po"], default="cleared")
    p.set_defaults(fn=_cmd_resonances)

    p = sub.add_parser("fermi", help="Taylor data (kdot, kddot) at an eigenvalue")
    add_graph_opts(p, schedule=True)
    p.add_argument("--k0", type=float, default=None)
    p.set_defaults(fn=_cmd_fermi)

    p = sub.add_parser("trajectory", help="trace a pole trajectory over t")
    add_graph_opts(p, schedule=True)
    p.add_argument("--k0", type=float, default=None)
    p.add_argument("--t", required=True, help="t range lo:hi")
    p.add_argument("--steps", type=int, default=400)
    p.set_defaults(fn=_cmd_trajectory)

    p = sub.add_parser("asymptotics", help="windowed high-energy scan and fits")
    add_graph_opts(p)
    p.add_argument("--mode", choices=["delta", "deltaprime", "mixed"], required=True)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--im-depth", type=float, default=-2.5)
    p.set_defaults(fn=_cmd_asymptotics)

    return parser


_MODE_MAP = {"delta": "standard", "deltaprime": "neumann", "mixed": "mixed"}

_RANGE_FLAGS = ("--re", "--im", "--t", "--k", "--k0", "--im-depth", "--tol")


def _merge_range_flags(argv):
    """Join `--im -3:0.05` into `--im=-3:0.05` so argparse does not read the
    negative value as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_range_flags(list(argv)))
    if getattr(args, "mode", None) in _MODE_MAP:
        args.mode = _MODE_MAP[args.mode]
    try:
        return args.fn(args, sys.stdout)
    except QgresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
