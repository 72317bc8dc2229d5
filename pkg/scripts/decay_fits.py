#!/usr/bin/env python3
"""High-energy decay fits for the loop fixtures: how fast the resonances
approach their reference spectra as Re k grows.

Prints one fit line per (fixture, quantity).
"""

import argparse
import sys

from qgres import load_fixture, run_asymptotics

RUNS = [
    ("loop_delta_2", "standard", range(3, 31)),
    ("loop_deltaprime", "neumann", range(5, 41)),
    ("fig7", "mixed", range(3, 31)),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--im-depth", type=float, default=-2.5)
    args = ap.parse_args()

    print("fixture,quantity,slope,intercept,r2,windows")
    for name, mode, n_values in RUNS:
        fx = load_fixture(name)
        _, fits = run_asymptotics(fx.graph, mode, n_values, im_depth=args.im_depth)
        for quantity, fit in fits.items():
            if fit is None:
                print(f"{name},{quantity},,,")
            else:
                print(
                    f"{name},{quantity},{fit.slope:.6g},{fit.intercept:.6g},"
                    f"{fit.r2:.6g},{fit.n_windows}"
                )
    return 0


if __name__ == "__main__":
    sys.exit(main())
