"""Periodic orbits on the bond digraph and the pseudo-orbit secular sum.

A periodic orbit is a directed cycle of bonds; collections of pairwise
bond-disjoint cycles (including the empty collection) are the irreducible
pseudo-orbit terms.  Each term carries its cycle count m, per-edge bond
usage counts, and the list of S-matrix index pairs whose product is the
amplitude A(k).
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .bonds import BondSystem, s_matrix, vertex_sigma_blocks
from .errors import OrbitExplosionError

DEFAULT_CAP = 10**6


def enumerate_simple_cycles(bs: BondSystem, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All directed cycles of the bond adjacency digraph that visit each
    bond at most once, each returned rotated so its lowest bond index is
    first, sorted by (length, bonds)."""
    dg = nx.DiGraph()
    dg.add_nodes_from(range(bs.n_bonds))
    for b in range(bs.n_bonds):
        for b2 in range(bs.n_bonds):
            if bs.head[b] == bs.tail[b2]:
                dg.add_edge(b, b2)
    cycles = []
    for cyc in nx.simple_cycles(dg):
        i0 = int(np.argmin(cyc))
        cycles.append(tuple(cyc[i0:] + cyc[:i0]))
        if len(cycles) > cap:
            raise OrbitExplosionError(
                f"orbit explosion: more than {cap} simple cycles"
            )
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


@dataclass(frozen=True)
class PseudoOrbitTerm:
    """One irreducible pseudo-orbit: m disjoint cycles covering `bonds`."""

    m: int
    bonds: tuple[int, ...]
    edge_counts: tuple[int, ...]
    transitions: tuple[tuple[int, int], ...]  # (row, col) pairs into S(k)

    def length(self, lengths) -> complex | float:
        return np.dot(self.edge_counts, lengths)

    def amplitude(self, s: np.ndarray):
        """Product of S entries along all cycles; S may be batched (.., 2N, 2N)."""
        if not self.transitions:
            return np.ones(s.shape[:-2]) if s.ndim > 2 else 1.0
        rows = [r for r, _ in self.transitions]
        cols = [c for _, c in self.transitions]
        return np.prod(s[..., rows, cols], axis=-1)


def cycle_transitions(cycle: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    n = len(cycle)
    return tuple((cycle[(i + 1) % n], cycle[i]) for i in range(n))


def _make_term(bs: BondSystem, chosen: list[tuple[int, ...]]) -> PseudoOrbitTerm:
    bonds = tuple(sorted(b for cyc in chosen for b in cyc))
    counts = [0] * bs.n_edges
    for b in bonds:
        counts[bs.edge_of[b]] += 1
    trans = tuple(t for cyc in chosen for t in cycle_transitions(cyc))
    return PseudoOrbitTerm(len(chosen), bonds, tuple(counts), trans)


def enumerate_irreducible_pseudo_orbits(
    bs: BondSystem, cycles: list[tuple[int, ...]], cap: int = DEFAULT_CAP
) -> list[PseudoOrbitTerm]:
    """All collections of pairwise bond-disjoint cycles, empty one included."""
    masks = [sum(1 << b for b in cyc) for cyc in cycles]
    terms: list[PseudoOrbitTerm] = []

    def rec(i: int, used: int, chosen: list):
        if len(terms) > cap:
            raise OrbitExplosionError(
                f"orbit explosion: more than {cap} pseudo-orbit terms"
            )
        if i == len(cycles):
            terms.append(_make_term(bs, chosen))
            return
        rec(i + 1, used, chosen)
        if not masks[i] & used:
            chosen.append(cycles[i])
            rec(i + 1, used | masks[i], chosen)
            chosen.pop()

    rec(0, 0, [])
    terms.sort(
        key=lambda t: (
            sum(t.edge_counts),
            tuple(-c for c in t.edge_counts),
            t.m,
            t.bonds,
        )
    )
    return terms


def graph_terms(bs: BondSystem, cap: int = DEFAULT_CAP) -> list[PseudoOrbitTerm]:
    return enumerate_irreducible_pseudo_orbits(bs, enumerate_simple_cycles(bs, cap), cap)


def secular_po(bs: BondSystem, sigmas: dict, terms, lengths, k):
    """Pseudo-orbit form of the secular function:
    sum over terms of (-1)^m A(k) exp(i k l_term)."""
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    scalar = np.isscalar(k) or np.asarray(k).ndim == 0
    s = s_matrix(bs, sigmas, karr)
    total = np.zeros(karr.shape, dtype=complex)
    for term in terms:
        amp = term.amplitude(s)
        total += (-1) ** term.m * amp * np.exp(1j * karr * term.length(lengths))
    return total[0] if scalar else total


def secular_po_graph(bs: BondSystem, terms, lengths, k):
    """secular_po with the scattering blocks computed from the graph."""
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    sigmas = vertex_sigma_blocks(bs, karr)
    out = secular_po(bs, sigmas, terms, lengths, karr)
    return out[0] if (np.isscalar(k) or np.asarray(k).ndim == 0) else out


def format_term(term: PseudoOrbitTerm, n_edges: int) -> str:
    """One dump line: m=<int> bonds=<...> length=<c1*l1+...>."""
    def bond_name(b: int) -> str:
        return f"b{b + 1}" if b < n_edges else f"b{b - n_edges + 1}r"

    bonds = ",".join(bond_name(b) for b in term.bonds) if term.bonds else "-"
    parts = [
        f"{c}*l{j + 1}" for j, c in enumerate(term.edge_counts) if c
    ]
    length = "+".join(parts) if parts else "0"
    return f"m={term.m} bonds={bonds} length={length}"
