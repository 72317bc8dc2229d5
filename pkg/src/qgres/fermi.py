"""Taylor data of resonance-pole trajectories under edge-length variation.

At an embedded eigenvalue k0 of the unperturbed graph, the first and second
t-derivatives of the pole position solve two linear identities built from
pseudo-orbit sums; both share the leading coefficient
sum over terms of (l A - i dA/dk) (-1)^m e^{i k l}.  Amplitude derivatives
are taken by Cauchy integration on a small circle, where the orbit
amplitudes are analytic.  A numerical continuation tracer reproduces whole
trajectories for cross-checking against the Taylor model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CorollaryInapplicableError,
    DegenerateExpansionError,
    NewtonDivergenceError,
    TrajectoryLostError,
)
from .graph import EdgeLengthSchedule, MetricGraph
from .orbits import graph_terms
from .rootfind import newton_refine, _relative_residual
from .secular import Evaluator

_ROOT_TOL = 1e-9
_IM_K0_TOL = 1e-9
_AMP_NODES = 64


@dataclass(frozen=True)
class FermiExpansion:
    """Second-order Taylor data (k0, kdot, kddot) of a pole trajectory."""

    k0: complex
    kdot: complex
    kddot: complex


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    k: complex
    residual: float


class _TermSums:
    """Pseudo-orbit amplitudes and their k-derivatives at k0, plus the
    length data of each term under the schedule."""

    def __init__(self, graph: MetricGraph, schedule: EdgeLengthSchedule, k0: complex):
        self.ev = Evaluator(graph)
        self.terms = graph_terms(self.ev.bonds)
        r = 1e-4 * max(1.0, abs(k0))
        theta = 2 * np.pi * np.arange(_AMP_NODES) / _AMP_NODES
        circle = k0 + r * np.exp(1j * theta)
        s_circle = self.ev.s_matrix(circle)
        s_center = self.ev.s_matrix(np.array([complex(k0)]))[0]
        t_count = len(self.terms)
        self.a0 = np.empty(t_count, dtype=complex)
        self.a1 = np.empty(t_count, dtype=complex)
        self.a2 = np.empty(t_count, dtype=complex)
        for i, term in enumerate(self.terms):
            vals = term.amplitude(s_circle)
            self.a0[i] = term.amplitude(s_center)
            self.a1[i] = np.sum(vals * np.exp(-1j * theta)) / (_AMP_NODES * r)
            self.a2[i] = 2 * np.sum(vals * np.exp(-2j * theta)) / (_AMP_NODES * r**2)
        counts = np.array([t.edge_counts for t in self.terms], dtype=float)
        self.l = counts @ schedule.l0
        self.ldot = counts @ schedule.ldot
        self.lddot = counts @ schedule.lddot
        self.sign = np.array([(-1) ** t.m for t in self.terms], dtype=float)
        self.e = self.sign * np.exp(1j * k0 * self.l)
        self.k0 = complex(k0)

    @property
    def f0(self) -> complex:
        return complex(np.sum(self.a0 * self.e))

    @property
    def scale(self) -> float:
        return float(np.sum(np.abs(self.a0)) + 1.0)

    @property
    def lead_coef(self) -> complex:
        """Coefficient of kdot (and of kddot) in both derivative identities."""
        return complex(np.sum((self.l * self.a0 - 1j * self.a1) * self.e))


def _checked_sums(graph, schedule, k0, tol=_ROOT_TOL) -> _TermSums:
    if abs(complex(k0).imag) > _IM_K0_TOL:
        raise DegenerateExpansionError(
            f"k0={k0} is not on the real axis; Taylor data needs an embedded eigenvalue"
        )
    ts = _TermSums(graph, schedule, complex(k0))
    if abs(ts.f0) > tol * ts.scale:
        raise DegenerateExpansionError(
            f"k0={k0} is not a root: |F|={abs(ts.f0):.3e} vs scale {ts.scale:.3e}"
        )
    if abs(ts.lead_coef) < 1e-12 * ts.scale:
        raise DegenerateExpansionError(
            f"leading coefficient vanishes at k0={k0}; derivative undefined"
        )
    return ts


def kdot(graph: MetricGraph, schedule: EdgeLengthSchedule, k0) -> complex:
    """First derivative of the pole position at t=0."""
    ts = _checked_sums(graph, schedule, k0)
    num = np.sum(ts.ldot * ts.a0 * ts.e)
    return complex(-ts.k0 * num / ts.lead_coef)


def kddot(graph: MetricGraph, schedule: EdgeLengthSchedule, k0, kdot_value=None) -> complex:
    """Second derivative of the pole position at t=0."""
    ts = _checked_sums(graph, schedule, k0)
    if kdot_value is None:
        kdot_value = -ts.k0 * np.sum(ts.ldot * ts.a0 * ts.e) / ts.lead_coef
    kd = complex(kdot_value)
    k0c = ts.k0
    s2 = np.sum(
        (1j * k0c * ts.l * ts.ldot * ts.a0 + ts.ldot * ts.a0 + k0c * ts.ldot * ts.a1)
        * ts.e
    )
    s3 = np.sum(
        (2 * ts.l * ts.a1 - 1j * ts.a2 + 1j * ts.l**2 * ts.a0) * ts.e
    )
    s4 = np.sum((ts.lddot + 1j * k0c * ts.ldot**2) * ts.a0 * ts.e)
    return complex(-(2 * kd * s2 + kd**2 * s3 + k0c * s4) / ts.lead_coef)


def fermi_expansion(graph: MetricGraph, schedule: EdgeLengthSchedule, k0) -> FermiExpansion:
    kd = kdot(graph, schedule, k0)
    return FermiExpansion(complex(k0), kd, kddot(graph, schedule, k0, kd))


def fermi_corollary(graph: MetricGraph, schedule: EdgeLengthSchedule, k0):
    """Closed-form (kdot, Re kddot, Im kddot) valid when every orbit
    amplitude is real and k-independent; raises otherwise."""
    ts = _checked_sums(graph, schedule, k0)
    if np.max(np.abs(ts.a1)) > 1e-10:
        raise CorollaryInapplicableError("amplitudes depend on k")
    if np.max(np.abs(ts.a0.imag)) > 1e-12:
        raise CorollaryInapplicableError("amplitudes are not real")
    k = float(ts.k0.real)
    a = ts.a0.real * ts.sign
    c = np.cos(k * ts.l)
    s = np.sin(k * ts.l)
    sc = float(np.sum(ts.l * a * c))
    ss = float(np.sum(ts.l * a * s))
    d = sc**2 + ss**2
    kd = -k * float(np.sum(ts.ldot * a * c)) / sc
    t1c = float(np.sum((k * ts.ldot * ts.l * c + ts.ldot * s) * a))
    t2c = float(np.sum(ts.l**2 * a * c))
    t3c = float(np.sum((k * ts.ldot**2 * c + ts.lddot * s) * a))
    t1s = float(np.sum((-k * ts.ldot * ts.l * s + ts.ldot * c) * a))
    t2s = float(np.sum(ts.l**2 * a * s))
    t3s = float(np.sum((ts.lddot * c - k * ts.ldot**2 * s) * a))
    im_kdd = -(sc / d) * (2 * kd * t1c + kd**2 * t2c + k * t3c) + (ss / d) * (
        2 * kd * t1s - kd**2 * t2s + k * t3s
    )
    re_kdd = -(ss / d) * (2 * kd * t1c + kd**2 * t2c + k * t3c) - (sc / d) * (
        2 * kd * t1s - kd**2 * t2s + k * t3s
    )
    return kd, re_kdd, im_kdd


# ---------------------------------------------------------------------------
# implicit differentiation of the cleared determinant (cross-check route)


def implicit_expansion(
    graph: MetricGraph,
    schedule: EdgeLengthSchedule,
    k0,
    nodes: int = 64,
) -> FermiExpansion:
    """kdot and kddot from partial derivatives of the cleared secular
    function F(k, t), taken by Cauchy circles in k and in (complex) t."""
    ev = Evaluator(graph)
    k0 = complex(k0)
    rk = 1e-4 * max(1.0, abs(k0))
    rt = 1e-4
    theta = 2 * np.pi * np.arange(nodes) / nodes
    kc = k0 + rk * np.exp(1j * theta)
    tc = rt * np.exp(1j * theta)

    f_k = ev.cleared(kc)  # t = 0
    fk = np.sum(f_k * np.exp(-1j * theta)) / (nodes * rk)
    fkk = 2 * np.sum(f_k * np.exp(-2j * theta)) / (nodes * rk**2)

    lengths_t = np.stack([schedule.lengths(t) for t in tc])
    f_t = ev.cleared(np.full(nodes, k0), lengths=lengths_t)
    ft = np.sum(f_t * np.exp(-1j * theta)) / (nodes * rt)
    ftt = 2 * np.sum(f_t * np.exp(-2j * theta)) / (nodes * rt**2)

    kk, tt = np.meshgrid(kc, tc)  # rows: t nodes, cols: k nodes
    lengths_grid = np.stack(
        [np.broadcast_to(schedule.lengths(t), (nodes, len(schedule.l0))) for t in tc]
    ).reshape(nodes * nodes, -1)
    f_grid = ev.cleared(kk.ravel(), lengths=lengths_grid).reshape(nodes, nodes)
    fk_of_t = f_grid @ np.exp(-1j * theta) / (nodes * rk)
    fkt = np.sum(fk_of_t * np.exp(-1j * theta)) / (nodes * rt)

    kd = -ft / fk
    kdd = -(fkk * kd**2 + 2 * fkt * kd + ftt) / fk
    return FermiExpansion(k0, complex(kd), complex(kdd))


# ---------------------------------------------------------------------------
# numerical continuation of a trajectory


def trace_trajectory(
    graph: MetricGraph,
    schedule: EdgeLengthSchedule,
    k0,
    t_range: tuple[float, float],
    steps: int,
    trace_tol: float = 1e-10,
    min_step: float = 1e-6,
) -> list[TrajectoryPoint]:
    """Predictor-corrector continuation of the root of F(k, t) from (k0, 0).

    Points are returned at steps+1 equally spaced t values covering t_range
    (a width-0 range gives the single point k0).  Each point is polished to
    convergence, so finite differences of the output resolve second
    derivatives.
    """
    t0, t1 = float(t_range[0]), float(t_range[1])
    ev = Evaluator(graph)

    def f_at(t):
        lengths = schedule.lengths(t)

        def fn(k):
            return ev.cleared(k, lengths=lengths)

        return fn

    if t0 == t1:
        resid = _relative_residual(f_at(t0), complex(k0))
        return [TrajectoryPoint(t0, complex(k0), resid)]
    grid = np.linspace(t0, t1, steps + 1)

    def correct(t, guess):
        return newton_refine(
            f_at(t), guess, abs_tol=trace_tol, divergence_radius=0.5 + abs(guess)
        )

    def walk(targets):
        """March from (0, k0) through the given t values (monotone)."""
        out = []
        t_prev, k_prev = 0.0, complex(k0)
        t_prev2 = k_prev2 = None
        for t in targets:
            target = float(t)
            while t_prev != target:
                remaining = target - t_prev
                if t_prev2 is not None and t_prev != t_prev2:
                    slope = (k_prev - k_prev2) / (t_prev - t_prev2)
                else:
                    slope = 0.0
                dt = remaining
                while True:
                    t_next = target if dt == remaining else t_prev + dt
                    try:
                        k_next = correct(t_next, k_prev + slope * dt)
                        break
                    except NewtonDivergenceError:
                        dt /= 2
                        if abs(dt) < min_step:
                            raise TrajectoryLostError(
                                f"continuation step underflow near t={t_prev}"
                            ) from None
                t_prev2, k_prev2 = t_prev, k_prev
                t_prev, k_prev = t_next, k_next
            out.append(
                TrajectoryPoint(target, k_prev, _relative_residual(f_at(target), k_prev))
            )
        return out

    points = []
    points.extend(reversed(walk([t for t in grid if t < 0][::-1])))
    nonneg = [t for t in grid if t >= 0]
    points.extend(walk(nonneg))
    return points
