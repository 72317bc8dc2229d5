import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qgres import (
    Delta,
    DeltaPrimeS,
    Dirichlet,
    Edge,
    EdgeLengthSchedule,
    MetricGraph,
    Neumann,
    Standard,
    Vertex,
)


@pytest.fixture
def circle_two_leads():
    """Two vertices, two unit edges between them, one lead each, delta(10)."""
    return MetricGraph(
        vertices=(Vertex("v1", Delta(10.0)), Vertex("v2", Delta(10.0))),
        edges=(Edge("v1", "v2", 1.0), Edge("v1", "v2", 1.0)),
        leads=("v1", "v2"),
    )


@pytest.fixture
def single_loop_neumann():
    return MetricGraph(
        vertices=(Vertex("v", Neumann()),),
        edges=(Edge("v", "v", 1.0),),
        leads=(),
    )


@pytest.fixture
def single_loop_dirichlet():
    return MetricGraph(
        vertices=(Vertex("v", Dirichlet()),),
        edges=(Edge("v", "v", 0.8),),
        leads=(),
    )


@pytest.fixture
def path_two_edges():
    """Three vertices in a row, standard couplings, no leads."""
    return MetricGraph(
        vertices=(
            Vertex("a", Standard()),
            Vertex("b", Standard()),
            Vertex("c", Standard()),
        ),
        edges=(Edge("a", "b", 1.0), Edge("b", "c", 0.7)),
        leads=(),
    )


@pytest.fixture
def star_three():
    return MetricGraph(
        vertices=(
            Vertex("c", Standard()),
            Vertex("x", Neumann()),
            Vertex("y", Dirichlet()),
            Vertex("z", Neumann()),
        ),
        edges=(Edge("c", "x", 1.0), Edge("c", "y", 0.6), Edge("c", "z", 1.3)),
        leads=("c",),
    )


@pytest.fixture
def neumann_three_edges():
    """All-Neumann graph: every edge decouples."""
    return MetricGraph(
        vertices=(
            Vertex("a", Neumann()),
            Vertex("b", Neumann()),
            Vertex("c", Neumann()),
        ),
        edges=(Edge("a", "b", 1.0), Edge("b", "c", 0.7), Edge("a", "c", 1.3)),
        leads=("a",),
    )


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def constant_schedule():
    def make(graph):
        return EdgeLengthSchedule.constant(graph.lengths)

    return make
