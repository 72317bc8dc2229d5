#!/usr/bin/env python3
"""Trace a resonance-pole trajectory and compare it with its second-order
Taylor model.

Writes CSV to stdout: t, re_k, im_k, re_model, im_model, deviation.
"""

import argparse
import sys

from qgres import fermi_expansion, load_fixture, trace_trajectory


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="fig1", help="fig1 or fig9")
    ap.add_argument("--t-max", type=float, default=0.2)
    ap.add_argument("--steps", type=int, default=400)
    args = ap.parse_args()

    fx = load_fixture(args.fixture)
    if fx.k0 is None:
        print(f"fixture {args.fixture} has no eigenvalue to start from", file=sys.stderr)
        return 1
    fe = fermi_expansion(fx.graph, fx.schedule, fx.k0)
    print(
        f"# {args.fixture}: k0={fx.k0:.12g} kdot={fe.kdot.real:.12g} "
        f"kddot={fe.kddot.real:.6g}{fe.kddot.imag:+.6g}j",
        file=sys.stderr,
    )
    points = trace_trajectory(
        fx.graph, fx.schedule, fx.k0, (-args.t_max, args.t_max), args.steps
    )
    print("t,re_k,im_k,re_model,im_model,deviation")
    for p in points:
        model = fx.k0 + fe.kdot * p.t + 0.5 * fe.kddot * p.t**2
        print(
            f"{p.t:.6g},{p.k.real:.12g},{p.k.imag:.12g},"
            f"{model.real:.12g},{model.imag:.12g},{abs(p.k - model):.6g}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
