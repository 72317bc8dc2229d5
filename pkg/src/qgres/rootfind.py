"""Zeros of an analytic function in a rectangle of the complex plane.

Counting is by the argument principle: the winding of f along the boundary
is accumulated from phase differences of boundary samples, doubling the
sampling until the count stabilizes to an integer.  Rectangles holding more
than one zero are quadrisected along lines chosen away from zeros; isolated
zeros are polished by Newton steps whose derivative comes from a Cauchy
integral over a small circle (robust for oscillatory exponential sums where
finite differences cancel badly).

Residuals are reported relative to the local scale of f (the maximum of
|f| on the derivative circle), since secular determinants grow by orders of
magnitude across a search region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryZeroError,
    CountMismatchError,
    NewtonDivergenceError,
    WindingError,
)

REAL_AXIS_TOL = 1e-9
_SUSPECT_RATIO = 1e-6


@dataclass(frozen=True)
class SearchRegion:
    """Rectangle re_min..re_max x im_min..im_max.  The default top edge sits
    slightly above the real axis so embedded eigenvalues are interior."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float = 0.05

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"empty search region {self}")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex(
            0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max)
        )

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, k: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min - margin <= k.real <= self.re_max + margin
            and self.im_min - margin <= k.imag <= self.im_max + margin
        )

    def expanded(self, frac: float) -> "SearchRegion":
        dw, dh = frac * self.width, frac * self.height
        return SearchRegion(
            self.re_min - dw, self.re_max + dw, self.im_min - dh, self.im_max + dh
        )


@dataclass
class Resonance:
    k: complex
    residual: float
    winding: int
    suspect: bool = False
    real_axis: bool = False


def cauchy_derivatives(f, k: complex, orders=(1,), radius=None, nodes: int = 32):
    """Derivatives of analytic f at k from trapezoid sums on a circle.

    Returns ({order: value}, samples); max |sample| is a natural local scale.
    """
    r = radius if radius is not None else max(1e-4, 1e-6 * abs(k))
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = k + r * np.exp(1j * theta)
    vals = np.asarray(f(z), dtype=complex)
    out = {}
    for m in orders:
        out[m] = (
            math.factorial(m)
            / (nodes * r**m)
            * np.sum(vals * np.exp(-1j * m * theta))
        )
    return out, vals


def _boundary_points(region: SearchRegion, per_side: int) -> np.ndarray:
    a, b = region.re_min, region.re_max
    c, d = region.im_min, region.im_max
    ts = np.arange(per_side) / per_side
    bottom = a + ts * (b - a) + 1j * c
    right = b + 1j * (c + ts * (d - c))
    top = b - ts * (b - a) + 1j * d
    left = a + 1j * (d - ts * (d - c))
    return np.concatenate([bottom, right, top, left])


def _phase_winding(f, region: SearchRegion, per_side: int):
    pts = _boundary_points(region, per_side)
    vals = np.asarray(f(pts), dtype=complex)
    absv = np.abs(vals)
    if not np.all(np.isfinite(absv)):
        raise WindingError("non-finite boundary value")
    scale = float(np.median(absv))
    min_ratio = float(absv.min() / scale) if scale > 0 else 0.0
    steps = np.angle(np.roll(vals, -1) / vals)
    return float(steps.sum() / (2 * np.pi)), min_ratio, float(np.abs(steps).max())


def _count_once(
    f,
    region: SearchRegion,
    init_per_side: int = 64,
    max_doublings: int = 8,
    boundary_rel_tol: float = 1e-9,
):
    """Winding count for a fixed rectangle; raises BoundaryZeroError if a
    zero appears to sit on the contour."""
    per_side = init_per_side
    prev = None
    for _ in range(max_doublings + 1):
        w, min_ratio, max_step = _phase_winding(f, region, per_side)
        if min_ratio < boundary_rel_tol:
            raise BoundaryZeroError(f"|f| vanishes on the boundary of {region}")
        stable = abs(w - round(w)) <= 0.25 and max_step < 2.0
        if stable and prev == round(w):
            return int(round(w))
        prev = round(w) if stable else None
        per_side *= 2
    raise WindingError(f"winding failed to stabilize on {region}")


def _count_nudged(f, region: SearchRegion, max_nudges: int = 8):
    """Count zeros, expanding the rectangle slightly while a zero blocks the
    contour.  Returns (count, rectangle actually used)."""
    rect = region
    for _ in range(max_nudges + 1):
        try:
            return _count_once(f, rect), rect
        except WindingError:
            # a zero on (or numerically indistinguishable from) the contour
            rect = rect.expanded(0.009)
    raise BoundaryZeroError(
        f"zero on boundary of {region} persisted after {max_nudges} nudges"
    )


def count_zeros(f, region: SearchRegion) -> int:
    """Number of zeros of f inside the region, counted with multiplicity."""
    count, _ = _count_nudged(f, region)
    return count


def newton_refine(
    f,
    k0: complex,
    abs_tol: float = 1e-10,
    max_iter: int = 100,
    divergence_radius: float | None = None,
    nodes: int = 32,
) -> complex:
    """Newton iteration from k0; the derivative comes from a Cauchy circle.

    Converges when the step stalls at rounding level or the residual
    (relative to the circle scale) drops below abs_tol; raises
    NewtonDivergenceError when the iterate leaves the basin radius.
    """
    k = complex(k0)
    radius_limit = divergence_radius if divergence_radius is not None else max(
        0.5, 0.05 * abs(k0)
    )
    polished = False
    for _ in range(max_iter):
        derivs, samples = cauchy_derivatives(f, k, orders=(1,), nodes=nodes)
        d1 = derivs[1]
        scale = float(np.abs(samples).max())
        f0 = complex(np.asarray(f(np.array([k])))[0])
        if scale == 0.0:
            return k  # identically zero locally; nothing to refine
        if not np.isfinite(abs(d1)) or abs(d1) == 0.0:
            raise NewtonDivergenceError(f"vanishing derivative near {k}")
        step = f0 / d1
        k_next = k - step
        if abs(k_next - k0) > radius_limit:
            raise NewtonDivergenceError(
                f"iterate left the basin: {k0} -> {k_next}"
            )
        k = k_next
        if abs(step) <= 1e-13 * max(1.0, abs(k)):
            if polished:
                break
            polished = True
    else:
        if not polished:
            raise NewtonDivergenceError(f"no convergence from {k0}")
    resid = _relative_residual(f, k)
    if resid > abs_tol:
        raise NewtonDivergenceError(
            f"converged point {k} has residual {resid:.3e} > {abs_tol:.3e}"
        )
    return k


def _relative_residual(f, k: complex) -> float:
    _, samples = cauchy_derivatives(f, k, orders=(), nodes=16)
    scale = float(np.abs(samples).max())
    f0 = abs(complex(np.asarray(f(np.array([k])))[0]))
    return f0 / scale if scale > 0 else f0


_SPLIT_FRACTIONS = (0.5, 0.46, 0.54, 0.41, 0.59, 0.36, 0.64, 0.31, 0.69)


def _line_clearance(f, p0: complex, p1: complex, nodes: int = 129) -> float:
    """Estimated distance from the segment p0-p1 to the nearest zero of f,
    via the first-order estimate |f| / |f'| at the sample closest to it."""
    ts = np.linspace(0.0, 1.0, nodes)
    pts = p0 + ts * (p1 - p0)
    vals = np.asarray(f(pts), dtype=complex)
    h = abs(p1 - p0) / (nodes - 1)
    df = np.abs(vals[2:] - vals[:-2]) / (2 * h)
    dist = np.abs(vals[1:-1]) / np.maximum(df, 1e-300)
    return float(dist.min())


def _split_candidates(f, region: SearchRegion, axis: str) -> list[float]:
    """Candidate split coordinates, ones clear of zeros first."""
    line_length = region.height if axis == "x" else region.width
    clear_limit = 0.02 * line_length
    good, rest = [], []
    for fr in _SPLIT_FRACTIONS:
        if axis == "x":
            c = region.re_min + fr * region.width
            p0 = complex(c, region.im_min)
            p1 = complex(c, region.im_max)
        else:
            c = region.im_min + fr * region.height
            p0 = complex(region.re_min, c)
            p1 = complex(region.re_max, c)
        clearance = _line_clearance(f, p0, p1)
        (good if clearance > clear_limit else rest).append((clearance, c))
    rest.sort(key=lambda t: -t[0])
    return [c for _, c in good] + [c for _, c in rest]


def _split_region(f, region: SearchRegion, count: int, max_attempts: int = 8):
    """Quadrisect so that no zero sits on the new lines and the child
    windings account exactly for the parent's count."""
    xs = _split_candidates(f, region, "x")
    ys = _split_candidates(f, region, "y")
    pairs = sorted(
        ((i + j, i, j) for i in range(len(xs)) for j in range(len(ys)))
    )[:max_attempts]
    for _, i, j in pairs:
        cx, cy = xs[i], ys[j]
        children = [
            SearchRegion(region.re_min, cx, region.im_min, cy),
            SearchRegion(cx, region.re_max, region.im_min, cy),
            SearchRegion(region.re_min, cx, cy, region.im_max),
            SearchRegion(cx, region.re_max, cy, region.im_max),
        ]
        try:
            counts = [_count_once(f, child, max_doublings=6) for child in children]
        except WindingError:
            continue
        if sum(counts) == count:
            return children, counts
    raise CountMismatchError(
        f"could not split {region} into cells matching its count {count}"
    )


def _make_resonance(f, k: complex, winding: int, clearing=None) -> Resonance:
    resid = _relative_residual(f, k)
    suspect = False
    if clearing is not None:
        _, csamp = cauchy_derivatives(clearing, k, orders=(), nodes=16)
        cscale = float(np.abs(csamp).max())
        c0 = abs(complex(np.asarray(clearing(np.array([k])))[0]))
        suspect = cscale > 0 and c0 < _SUSPECT_RATIO * cscale
    return Resonance(
        k=k,
        residual=resid,
        winding=winding,
        suspect=suspect,
        real_axis=abs(k.imag) < REAL_AXIS_TOL,
    )


def find_roots(
    f,
    region: SearchRegion,
    abs_tol: float = 1e-10,
    dedupe_tol: float = 1e-7,
    min_cell: float = 1e-8,
) -> list[Resonance]:
    """All zeros of f in the region, deduplicated and sorted by Re k.

    Recursive quadrisection until each cell holds at most one zero, then
    Newton refinement from the cell center.  The sum of returned windings
    must match the winding of the whole region.
    """
    clearing = getattr(f, "clearing", None)
    total, rect0 = _count_nudged(f, region)
    if total == 0:
        return []
    found: list[Resonance] = []
    work = [(rect0, total)]
    while work:
        rect, cnt = work.pop()
        if cnt == 0:
            continue
        if max(rect.width, rect.height) < min_cell:
            k = rect.center
            try:
                k = newton_refine(
                    f, k, abs_tol=abs_tol, divergence_radius=4.0 * rect.diameter
                )
            except NewtonDivergenceError:
                pass  # multiple zero stalling at rounding level; keep the center
            found.append(_make_resonance(f, k, cnt, clearing))
            continue
        if cnt == 1:
            try:
                k = newton_refine(
                    f,
                    rect.center,
                    abs_tol=abs_tol,
                    divergence_radius=2.0 * rect.diameter,
                )
                if rect.contains(k, margin=1e-12 * (1 + abs(k))):
                    found.append(_make_resonance(f, k, 1, clearing))
                    continue
            except NewtonDivergenceError:
                pass
        children, counts = _split_region(f, rect, cnt)
        work.extend(
            (child, c) for child, c in zip(children, counts) if c > 0
        )
    found.sort(key=lambda r: (r.k.real, r.k.imag))
    merged: list[Resonance] = []
    for res in found:
        twin = next((m for m in merged if abs(res.k - m.k) < dedupe_tol), None)
        if twin is not None:
            keep = min(twin, res, key=lambda r: r.residual)
            keep.winding = max(twin.winding, res.winding)
            merged[merged.index(twin)] = keep
        else:
            merged.append(res)
    if sum(r.winding for r in merged) != total:
        raise CountMismatchError(
            f"refined roots account for {sum(r.winding for r in merged)} zeros, "
            f"region holds {total}"
        )
    return merged
