"""Metric-graph data model: vertices with couplings, internal edges, leads.

All lengths and wavenumbers are dimensionless (units with hbar = 2m = 1).
A graph is immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import CouplingError, GraphSpecError

_UNITARY_TOL = 1e-12


class Coupling:
    """Base class for vertex coupling families."""

    __slots__ = ()


@dataclass(frozen=True)
class Standard(Coupling):
    """Continuity of values, vanishing sum of outgoing derivatives."""


@dataclass(frozen=True)
class Delta(Coupling):
    """Continuous values, derivative sum equal to alpha times the value."""

    alpha: float


@dataclass(frozen=True)
class DeltaPrimeS(Coupling):
    """Continuous derivatives, value sum equal to beta times the derivative."""

    beta: float


@dataclass(frozen=True)
class Dirichlet(Coupling):
    """All values vanish at the vertex."""


@dataclass(frozen=True)
class Neumann(Coupling):
    """All outgoing derivatives vanish at the vertex."""


@dataclass(frozen=True)
class Robin(Coupling):
    """f' = alpha f at a degree-1 vertex."""

    alpha: float


@dataclass(frozen=True, eq=False)
class General(Coupling):
    """Arbitrary unitary coupling matrix, rows/cols in the vertex-local
    edge-end order (internal ends first, lead ends last)."""

    matrix: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.matrix, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise CouplingError("general coupling matrix must be square")
        dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if dev > _UNITARY_TOL:
            raise CouplingError(
                f"general coupling matrix is not unitary (max deviation {dev:.3e})"
            )
        object.__setattr__(self, "matrix", u)


def coupling_matrix(coupling: Coupling, degree: int) -> np.ndarray:
    """Unitary matrix of the boundary condition (U - I) Psi + i (U + I) Psi' = 0.

    `degree` counts edge ends at the vertex, loops twice, leads once.
    """
    if degree < 1:
        raise CouplingError("vertex degree must be at least 1")
    d = degree
    eye = np.eye(d, dtype=complex)
    ones = np.ones((d, d), dtype=complex)
    if isinstance(coupling, Standard):
        return 2.0 / d * ones - eye
    if isinstance(coupling, Delta):
        return 2.0 / (d + 1j * coupling.alpha) * ones - eye
    if isinstance(coupling, DeltaPrimeS):
        return eye - 2.0 / (d - 1j * coupling.beta) * ones
    if isinstance(coupling, Dirichlet):
        return -eye
    if isinstance(coupling, Neumann):
        return eye.copy()
    if isinstance(coupling, Robin):
        if d != 1:
            raise CouplingError("Robin coupling is only defined at degree-1 vertices")
        a = coupling.alpha
        return np.array([[-(a + 1j) / (a - 1j)]], dtype=complex)
    if isinstance(coupling, General):
        if coupling.matrix.shape[0] != d:
            raise CouplingError(
                f"general coupling matrix is {coupling.matrix.shape[0]}x"
                f"{coupling.matrix.shape[0]} but vertex degree is {d}"
            )
        return coupling.matrix.copy()
    raise CouplingError(f"unknown coupling {coupling!r}")


@dataclass(frozen=True)
class Vertex:
    id: str
    coupling: Coupling


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length: float


@dataclass(frozen=True)
class MetricGraph:
    """Vertices, internal edges with lengths, and semi-infinite leads.

    The vertex-local ordering of edge ends is canonical: internal edge ends
    in document order (a loop contributes its x=0 end then its x=length end),
    followed by lead ends in document order.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    leads: tuple[str, ...]

    # derived structure, filled in __post_init__
    _vidx: dict = field(default=None, repr=False, compare=False)
    _ends_at: dict = field(default=None, repr=False, compare=False)
    _leads_at: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "leads", tuple(self.leads))
        vidx = {}
        for i, v in enumerate(self.vertices):
            if v.id in vidx:
                raise GraphSpecError(f"duplicate vertex id {v.id!r}")
            vidx[v.id] = i
        ends_at = {v.id: [] for v in self.vertices}
        for j, e in enumerate(self.edges):
            for vid, end in ((e.a, 0), (e.b, 1)):
                if vid not in vidx:
                    raise GraphSpecError(
                        f"dangling reference: edge {j} endpoint {vid!r}"
                    )
            if not (np.isfinite(e.length) and e.length > 0):
                raise GraphSpecError(f"edge {j} has non-positive length {e.length}")
            ends_at[e.a].append((j, 0))
            ends_at[e.b].append((j, 1))
        leads_at = {v.id: 0 for v in self.vertices}
        for vid in self.leads:
            if vid not in vidx:
                raise GraphSpecError(f"dangling reference: lead at {vid!r}")
            leads_at[vid] += 1
        object.__setattr__(self, "_vidx", vidx)
        object.__setattr__(self, "_ends_at", {k: tuple(v) for k, v in ends_at.items()})
        object.__setattr__(self, "_leads_at", leads_at)
        for v in self.vertices:
            d = self.degree(v.id)
            if d == 0:
                raise GraphSpecError(f"vertex {v.id!r} is isolated")
            coupling_matrix(v.coupling, d)  # validates Robin degree, matrix size

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_leads(self) -> int:
        return len(self.leads)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([e.length for e in self.edges], dtype=float)

    def internal_ends(self, vid: str) -> tuple:
        """Edge ends at a vertex, canonical order: (edge index, end) pairs
        where end 0 is the x=0 endpoint and end 1 the x=length endpoint."""
        return self._ends_at[vid]

    def lead_count(self, vid: str) -> int:
        return self._leads_at[vid]

    def degree(self, vid: str) -> int:
        return len(self._ends_at[vid]) + self._leads_at[vid]

    def vertex(self, vid: str) -> Vertex:
        return self.vertices[self._vidx[vid]]

    def with_lengths(self, lengths) -> "MetricGraph":
        lengths = np.asarray(lengths, dtype=float)
        edges = tuple(
            Edge(e.a, e.b, float(l)) for e, l in zip(self.edges, lengths, strict=True)
        )
        return MetricGraph(self.vertices, edges, self.leads)

    def with_couplings(self, mapping) -> "MetricGraph":
        """New graph with couplings rewritten by `mapping(coupling) -> coupling`."""
        vertices = tuple(Vertex(v.id, mapping(v.coupling)) for v in self.vertices)
        return MetricGraph(vertices, self.edges, self.leads)


@dataclass(frozen=True)
class EdgeLengthSchedule:
    """Quadratic-in-t model of the edge lengths: l(t) = l0 + ldot t + lddot t^2/2."""

    l0: np.ndarray
    ldot: np.ndarray
    lddot: np.ndarray

    def __post_init__(self):
        for name in ("l0", "ldot", "lddot"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.l0.shape[0]
        if self.ldot.shape != (n,) or self.lddot.shape != (n,):
            raise GraphSpecError("schedule arrays must have one entry per edge")
        if not np.all(self.l0 > 0):
            raise GraphSpecError("schedule initial lengths must be positive")

    @classmethod
    def constant(cls, lengths) -> "EdgeLengthSchedule":
        lengths = np.asarray(lengths, dtype=float)
        z = np.zeros_like(lengths)
        return cls(lengths, z, z)

    @classmethod
    def from_rates(cls, graph: MetricGraph, ldot=None, lddot=None) -> "EdgeLengthSchedule":
        n = graph.n_edges
        ld = np.zeros(n) if ldot is None else np.asarray(ldot, dtype=float)
        ldd = np.zeros(n) if lddot is None else np.asarray(lddot, dtype=float)
        return cls(graph.lengths, ld, ldd)

    def lengths(self, t):
        """Edge lengths at parameter t. Real t is checked for positivity;
        complex t (used by analytic differentiation) is passed through."""
        value = self.l0 + self.ldot * t + 0.5 * self.lddot * t * t
        if not np.iscomplexobj(np.asarray(value)):
            if not np.all(value > 0):
                raise GraphSpecError(f"schedule gives non-positive length at t={t}")
        return value


# ---------------------------------------------------------------------------
# graph description documents (JSON-shaped)

_COUPLING_TAGS = {
    "standard": Standard,
    "delta": Delta,
    "delta_prime_s": DeltaPrimeS,
    "dirichlet": Dirichlet,
    "neumann": Neumann,
    "robin": Robin,
    "general": General,
}


def _coupling_from_doc(doc) -> Coupling:
    if not isinstance(doc, dict) or "type" not in doc:
        raise GraphSpecError(f"coupling must be an object with a 'type' key, got {doc!r}")
    tag = doc["type"]
    if tag not in _COUPLING_TAGS:
        raise GraphSpecError(f"unknown coupling type {tag!r}")
    cls = _COUPLING_TAGS[tag]
    if cls in (Standard, Dirichlet, Neumann):
        return cls()
    if cls in (Delta, Robin):
        return cls(float(doc["param"]))
    if cls is DeltaPrimeS:
        return cls(float(doc["param"]))
    # general: row-major flat list of [re, im] pairs
    flat = doc["matrix"]
    d = int(round(len(flat) ** 0.5))
    if d * d != len(flat):
        raise GraphSpecError("general coupling matrix list has non-square length")
    u = np.array([complex(re, im) for re, im in flat], dtype=complex).reshape(d, d)
    return General(u)


def _coupling_to_doc(c: Coupling) -> dict:
    if isinstance(c, Standard):
        return {"type": "standard"}
    if isinstance(c, Delta):
        return {"type": "delta", "param": c.alpha}
    if isinstance(c, DeltaPrimeS):
        return {"type": "delta_prime_s", "param": c.beta}
    if isinstance(c, Dirichlet):
        return {"type": "dirichlet"}
    if isinstance(c, Neumann):
        return {"type": "neumann"}
    if isinstance(c, Robin):
        return {"type": "robin", "param": c.alpha}
    if isinstance(c, General):
        flat = [[float(z.real), float(z.imag)] for z in c.matrix.ravel()]
        return {"type": "general", "matrix": flat}
    raise CouplingError(f"cannot serialize coupling {c!r}")


def build_graph(doc: dict) -> MetricGraph:
    """Build and validate a MetricGraph from a description document.

    Expected top-level keys: `vertices` (list of {id, coupling}),
    `edges` (list of {a, b, length}), `leads` (list of {vertex}).
    """
    try:
        vertices = tuple(
            Vertex(str(v["id"]), _coupling_from_doc(v["coupling"]))
            for v in doc["vertices"]
        )
        edges = tuple(
            Edge(str(e["a"]), str(e["b"]), float(e["length"])) for e in doc["edges"]
        )
        leads = tuple(str(l["vertex"]) for l in doc.get("leads", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphSpecError(f"malformed graph document: {exc}") from exc
    return MetricGraph(vertices, edges, leads)


def graph_to_doc(g: MetricGraph) -> dict:
    return {
        "vertices": [
            {"id": v.id, "coupling": _coupling_to_doc(v.coupling)} for v in g.vertices
        ],
        "edges": [{"a": e.a, "b": e.b, "length": e.length} for e in g.edges],
        "leads": [{"vertex": vid} for vid in g.leads],
    }


def load_graph(path) -> MetricGraph:
    with open(path) as fh:
        return build_graph(json.load(fh))


def save_graph(g: MetricGraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_doc(g), fh, indent=2)
        fh.write("\n")


def load_schedule(path, graph: MetricGraph) -> EdgeLengthSchedule:
    """Schedule document: {"schedule": [{"edge": j, "ldot": x, "lddot": y}, ...]};
    edges not listed stay constant."""
    with open(path) as fh:
        doc = json.load(fh)
    ldot = np.zeros(graph.n_edges)
    lddot = np.zeros(graph.n_edges)
    for entry in doc.get("schedule", []):
        j = int(entry["edge"])
        if not 0 <= j < graph.n_edges:
            raise GraphSpecError(f"schedule references edge {j} out of range")
        ldot[j] = float(entry.get("ldot", 0.0))
        lddot[j] = float(entry.get("lddot", 0.0))
    return EdgeLengthSchedule(graph.lengths, ldot, lddot)
