#!/usr/bin/env python3
"""Scan a fixture's resonances over a band of the complex plane, together
with the resonances of its replaced-coupling reference graph.

Writes CSV to stdout: set (found|reference), re_k, im_k.
"""

import argparse
import sys

import numpy as np

from qgres import (
    SearchRegion,
    find_roots,
    load_fixture,
    replace_couplings,
    secular,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="loop_deltaprime")
    ap.add_argument("--mode", default="mixed", choices=["standard", "neumann", "mixed"])
    ap.add_argument("--re-max", type=float, default=40.0)
    ap.add_argument("--im-min", type=float, default=-2.0)
    args = ap.parse_args()

    fx = load_fixture(args.fixture)
    region = SearchRegion(0.5, args.re_max, args.im_min, 0.05)
    print("set,re_k,im_k")
    for r in find_roots(secular(fx.graph, "cleared"), region):
        if not r.suspect:
            print(f"found,{r.k.real:.12g},{r.k.imag:.12g}")
    ref_graph = replace_couplings(fx.graph, args.mode)
    for r in find_roots(secular(ref_graph, "cleared"), region):
        if not r.suspect:
            print(f"reference,{r.k.real:.12g},{r.k.imag:.12g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
