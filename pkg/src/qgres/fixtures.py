"""Named example graphs with their schedules and closed-form conditions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownFixtureError
from .graph import (
    Delta,
    DeltaPrimeS,
    Dirichlet,
    Edge,
    EdgeLengthSchedule,
    MetricGraph,
    Robin,
    Standard,
    Vertex,
)
from .secular import SecularFunction, closed_form_condition, cross_eigenvalue_length


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    graph: MetricGraph
    schedule: EdgeLengthSchedule
    k0: float | None
    closed_form: SecularFunction


def loop_graph(c1, c2, l1: float, l2: float) -> MetricGraph:
    """Two vertices joined by two edges, one lead at each vertex."""
    return MetricGraph(
        vertices=(Vertex("v1", c1), Vertex("v2", c2)),
        edges=(Edge("v1", "v2", l1), Edge("v1", "v2", l2)),
        leads=("v1", "v2"),
    )


def cross_graph(alpha: float, l1: float, l2: float) -> MetricGraph:
    """Two edges and two leads at a standard central vertex; Dirichlet end
    on the first edge, Robin end (f' = alpha f) on the second."""
    return MetricGraph(
        vertices=(
            Vertex("c", Standard()),
            Vertex("d", Dirichlet()),
            Vertex("r", Robin(alpha)),
        ),
        edges=(Edge("c", "d", l1), Edge("c", "r", l2)),
        leads=("c", "c"),
    )


def _schedule(graph, ldot=None, lddot=None) -> EdgeLengthSchedule:
    return EdgeLengthSchedule.from_rates(graph, ldot, lddot)


def _fig1() -> Fixture:
    g = loop_graph(Delta(10.0), Delta(10.0), 1.0, 1.0)
    return Fixture(
        "fig1",
        "loop with two leads, delta(10) at both vertices, l1=1-t, l2=1+2t, k0=2pi",
        g,
        _schedule(g, ldot=[-1.0, 2.0]),
        2 * math.pi,
        closed_form_condition("loop_delta_sym", alpha=10.0, l1=1.0, l2=1.0),
    )


def _fig9() -> Fixture:
    l2 = cross_eigenvalue_length(1, 3.0, 1.0)
    g = cross_graph(3.0, 1.0, l2)
    return Fixture(
        "fig9",
        "cross resonator, standard center, Dirichlet and Robin(3) ends, "
        f"l1=1-t, l2={l2:.5f}+t, k0=pi",
        g,
        _schedule(g, ldot=[-1.0, 1.0]),
        math.pi,
        closed_form_condition("cross_robin", alpha=3.0, l1=1.0, l2=l2),
    )


def _loop_delta_2() -> Fixture:
    g = loop_graph(Delta(1.0), Delta(1.0), 1.0, 1.0)
    return Fixture(
        "loop_delta_2",
        "loop with two leads, delta(1) at both vertices, l1=l2=1",
        g,
        _schedule(g),
        math.pi,
        closed_form_condition("loop_delta_2", alpha1=1.0, alpha2=1.0, l1=1.0, l2=1.0),
    )


def _loop_deltaprime() -> Fixture:
    g = loop_graph(DeltaPrimeS(1.0), DeltaPrimeS(1.0), 1.0, 1.0)
    return Fixture(
        "loop_deltaprime",
        "loop with two leads, delta'_s(1) at both vertices, l1=l2=1",
        g,
        _schedule(g),
        math.pi,
        closed_form_condition("loop_deltaprime", beta1=1.0, beta2=1.0, l1=1.0, l2=1.0),
    )


def _loop_mixed() -> Fixture:
    g = loop_graph(Delta(1.0), DeltaPrimeS(1.0), 1.0, 1.2137)
    return Fixture(
        "loop_mixed",
        "loop with two leads, delta(1) left, delta'_s(1) right, l1=1, l2=1.2137",
        g,
        _schedule(g),
        None,
        closed_form_condition("loop_mixed", alpha=1.0, beta=1.0, l1=1.0, l2=1.2137),
    )


def _fig3() -> Fixture:
    g = loop_graph(Delta(1.0), Delta(1.0), 1.0, 1.2137)
    return Fixture(
        "fig3",
        "loop with two leads, delta(1) at both vertices, l1=1, l2=1.2137",
        g,
        _schedule(g),
        None,
        closed_form_condition("loop_delta_2", alpha1=1.0, alpha2=1.0, l1=1.0, l2=1.2137),
    )


def _fig5() -> Fixture:
    g = loop_graph(DeltaPrimeS(1.0), DeltaPrimeS(1.0), 1.0, 1.2137)
    return Fixture(
        "fig5",
        "loop with two leads, delta'_s(1) at both vertices, l1=1, l2=1.2137",
        g,
        _schedule(g),
        None,
        closed_form_condition("loop_deltaprime", beta1=1.0, beta2=1.0, l1=1.0, l2=1.2137),
    )


def _fig6() -> Fixture:
    g = loop_graph(DeltaPrimeS(1.0), DeltaPrimeS(3.0), 1.0, 1.5)
    return Fixture(
        "fig6",
        "loop with two leads, delta'_s(1) and delta'_s(3), l1=1, l2=1.5",
        g,
        _schedule(g),
        None,
        closed_form_condition("loop_deltaprime", beta1=1.0, beta2=3.0, l1=1.0, l2=1.5),
    )


def _fig7() -> Fixture:
    g = loop_graph(Delta(1.0), DeltaPrimeS(1.0), 1.0, 1.0)
    return Fixture(
        "fig7",
        "loop with two leads, delta(1) left, delta'_s(1) right, l1=l2=1",
        g,
        _schedule(g),
        1.5 * math.pi,
        closed_form_condition("loop_mixed", alpha=1.0, beta=1.0, l1=1.0, l2=1.0),
    )


_BUILDERS = {
    "fig1": _fig1,
    "fig9": _fig9,
    "loop_delta_2": _loop_delta_2,
    "loop_deltaprime": _loop_deltaprime,
    "loop_mixed": _loop_mixed,
    "fig3": _fig3,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
}

_ALIASES = {
    "loop_delta_sym": "fig1",
    "cross_robin": "fig9",
    "fig2": "loop_delta_2",
    "fig4": "loop_deltaprime",
    "fig8": "loop_mixed",
}

CANONICAL = ("fig1", "fig9", "loop_delta_2", "loop_deltaprime", "loop_mixed")


def fixture_names(all_names: bool = False) -> tuple[str, ...]:
    if all_names:
        return tuple(_BUILDERS)
    return CANONICAL


def load_fixture(name: str) -> Fixture:
    key = _ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise UnknownFixtureError(f"unknown fixture {name!r}")
    return _BUILDERS[key]()
