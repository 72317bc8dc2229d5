"""High-energy behavior of resonances for delta / delta'_s attached leads.

Resonances are scanned window by window along the real axis and paired to a
reference spectrum: the same graph with delta couplings replaced by standard
ones, delta'_s replaced by Neumann, or both.  Per-window medians of the
imaginary parts, pairing distances and real offsets feed log-log decay fits.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import FitDataError
from .graph import Delta, DeltaPrimeS, MetricGraph, Neumann, Standard
from .rootfind import Resonance, SearchRegion, find_roots
from .secular import secular


@dataclass
class WindowScan:
    window: tuple[float, float]
    resonances: list[Resonance]
    reference: list[complex]
    pairs: list[tuple[complex, complex]] = field(default_factory=list)
    pair_distances: list[float] = field(default_factory=list)
    unmatched: int = 0


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r2: float
    n_windows: int


def replace_couplings(g: MetricGraph, mode: str) -> MetricGraph:
    def swap(c):
        if mode in ("standard", "mixed") and isinstance(c, Delta):
            return Standard()
        if mode in ("neumann", "mixed") and isinstance(c, DeltaPrimeS):
            return Neumann()
        return c

    if mode not in ("standard", "neumann", "mixed"):
        raise ValueError(f"unknown replacement mode {mode!r}")
    return g.with_couplings(swap)


def _all_neumann(g: MetricGraph) -> bool:
    return all(isinstance(v.coupling, Neumann) for v in g.vertices)


def reference_spectrum(
    g: MetricGraph, mode: str, window: tuple[float, float], im_depth: float = -2.5
) -> list[complex]:
    """Reference values in the window for the replaced-coupling graph.

    A fully Neumann graph decouples, so its spectrum is analytic: every edge
    of length l contributes k = n pi / l.  Anything else is scanned.
    """
    replaced = replace_couplings(g, mode)
    a, b = window
    if _all_neumann(replaced):
        out = []
        for length in replaced.lengths:
            n_lo = max(1, math.ceil(a * length / math.pi))
            n_hi = math.floor(b * length / math.pi)
            out.extend(n * math.pi / length for n in range(n_lo, n_hi + 1))
        return sorted(out)
    f = secular(replaced, "cleared")
    roots = find_roots(f, SearchRegion(a, b, im_depth))
    return sorted((r.k for r in roots if not r.suspect), key=lambda z: (z.real, z.imag))


def pair_nearest(found: list[complex], refs: list[complex]):
    """Greedy nearest-first injective matching; returns (pairs, unmatched)."""
    order = sorted(
        ((abs(f - r), i, j) for i, f in enumerate(found) for j, r in enumerate(refs)),
        key=lambda x: x[0],
    )
    used_f, used_r, pairs = set(), set(), []
    for dist, i, j in order:
        if i in used_f or j in used_r:
            continue
        used_f.add(i)
        used_r.add(j)
        pairs.append((found[i], refs[j]))
    return pairs, len(found) - len(pairs)


def _threads() -> int:
    raw = os.environ.get("QGRAPH_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def scan_windows(
    g: MetricGraph,
    windows: list[tuple[float, float]],
    im_depth: float = -2.5,
    mode: str = "mixed",
    reference=None,
) -> list[WindowScan]:
    """find_roots per window plus pairing against the reference spectrum.

    `reference` may override the replaced-graph spectrum with a callable
    window -> list of complex.
    """
    f = secular(g, "cleared")

    def one(window):
        a, b = window
        roots = find_roots(f, SearchRegion(a, b, im_depth))
        roots = [r for r in roots if not r.suspect]
        refs = (
            reference(window)
            if reference is not None
            else reference_spectrum(g, mode, window, im_depth)
        )
        scan = WindowScan(tuple(window), roots, list(refs))
        if roots and refs:
            pairs, unmatched = pair_nearest([r.k for r in roots], list(refs))
            scan.pairs = pairs
            scan.pair_distances = [abs(a_ - b_) for a_, b_ in pairs]
            scan.unmatched = unmatched
        else:
            scan.unmatched = len(roots)
        return scan

    n_threads = _threads()
    if n_threads > 1 and len(windows) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            return list(pool.map(one, windows))
    return [one(w) for w in windows]


def _window_median(scan: WindowScan, quantity: str) -> float | None:
    if not scan.resonances:
        return None
    if quantity == "imag":
        return float(np.median([abs(r.k.imag) for r in scan.resonances]))
    if quantity == "pair_distance":
        if not scan.pair_distances:
            return None
        return float(np.median(scan.pair_distances))
    if quantity == "real_offset":
        if not scan.pairs:
            return None
        return float(np.median([abs(a.real - b.real) for a, b in scan.pairs]))
    raise ValueError(f"unknown quantity {quantity!r}")


def fit_decay(scans: list[WindowScan], quantity: str) -> DecayFit:
    """Least-squares fit of log(median quantity) against log(median Re k)."""
    xs, ys = [], []
    for scan in scans:
        med = _window_median(scan, quantity)
        if med is None or med <= 1e-13:
            continue
        re_med = float(np.median([r.k.real for r in scan.resonances]))
        xs.append(math.log(re_med))
        ys.append(math.log(med))
    if len(xs) < 6:
        raise FitDataError(
            f"only {len(xs)} usable windows for quantity {quantity!r}; need >= 6"
        )
    x = np.array(xs)
    y = np.array(ys)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(float(slope), float(intercept), r2, len(xs))


def default_windows(g: MetricGraph, n_values, width: float | None = None):
    """Windows of width pi/(2 max l) centered at n pi / max l."""
    l0 = float(np.max(g.lengths))
    if width is None:
        width = math.pi / (2 * l0)
    return [
        (n * math.pi / l0 - width / 2, n * math.pi / l0 + width / 2) for n in n_values
    ]


def run_asymptotics(
    g: MetricGraph,
    mode: str,
    n_values,
    im_depth: float = -2.5,
    width: float | None = None,
):
    """Window scan plus decay fits for the three tracked quantities."""
    windows = default_windows(g, n_values, width)
    scans = scan_windows(g, windows, im_depth=im_depth, mode=mode)
    fits = {}
    for quantity in ("imag", "pair_distance", "real_offset"):
        try:
            fits[quantity] = fit_decay(scans, quantity)
        except FitDataError:
            fits[quantity] = None
    return scans, fits
