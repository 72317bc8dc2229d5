"""Directed doubled-edge system and the bond scattering matrix.

Each internal edge j of length l_j becomes two bonds: bond j runs from
endpoint a to endpoint b, bond N+j the other way.  The canonical bond order
is (b_0 .. b_{N-1}, rev_0 .. rev_{N-1}).  The 2N x 2N matrix Sigma(k) is
assembled from the per-vertex scattering blocks on the basis of incoming
bond amplitudes; S(k) = Q Sigma(k) with Q the forward/reverse swap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import MetricGraph, coupling_matrix
from .scattering import effective_coupling, effective_sigma, split_blocks


@dataclass(frozen=True)
class BondSystem:
    """Structure of the doubled digraph: incidence, lengths, assembly maps."""

    graph: MetricGraph
    tail: np.ndarray  # (2N,) vertex ids as indices into vertex order
    head: np.ndarray
    edge_of: np.ndarray  # (2N,) internal edge index of each bond
    in_bonds: dict = field(repr=False)  # vertex id -> bond indices in local end order

    @property
    def n_edges(self) -> int:
        return self.graph.n_edges

    @property
    def n_bonds(self) -> int:
        return 2 * self.graph.n_edges

    def rev(self, b: int) -> int:
        n = self.n_edges
        return b - n if b >= n else b + n

    @property
    def rev_perm(self) -> np.ndarray:
        n = self.n_edges
        return np.concatenate([np.arange(n, 2 * n), np.arange(n)])

    @property
    def q_matrix(self) -> np.ndarray:
        n = self.n_edges
        z = np.zeros((n, n))
        eye = np.eye(n)
        return np.block([[z, eye], [eye, z]])

    def length_vector(self, lengths=None) -> np.ndarray:
        """Diagonal of L in canonical bond order; `lengths` overrides the
        graph's static lengths (may be complex for analytic continuation)."""
        l = self.graph.lengths if lengths is None else np.asarray(lengths)
        return np.concatenate([l, l], axis=-1)

    def successors(self, b: int) -> list[int]:
        return [int(b2) for b2 in np.nonzero(self.tail == self.head[b])[0]]


def build_bond_system(g: MetricGraph) -> BondSystem:
    n = g.n_edges
    vidx = {v.id: i for i, v in enumerate(g.vertices)}
    tail = np.empty(2 * n, dtype=int)
    head = np.empty(2 * n, dtype=int)
    edge_of = np.empty(2 * n, dtype=int)
    for j, e in enumerate(g.edges):
        tail[j], head[j] = vidx[e.a], vidx[e.b]
        tail[n + j], head[n + j] = vidx[e.b], vidx[e.a]
        edge_of[j] = edge_of[n + j] = j
    in_bonds = {}
    for v in g.vertices:
        # the bond arriving at end 0 is the reversed bond, at end 1 the forward one
        idx = [j if end == 1 else n + j for j, end in g.internal_ends(v.id)]
        in_bonds[v.id] = np.array(idx, dtype=int)
    return BondSystem(g, tail, head, edge_of, in_bonds)


def assemble_blocks(bs: BondSystem, blocks: dict) -> np.ndarray:
    """Place per-vertex (.., n_v, n_v) blocks into a (.., 2N, 2N) matrix on
    the incoming-bond index sets."""
    some = next(iter(blocks.values()))
    lead_shape = np.asarray(some).shape[:-2]
    out = np.zeros(lead_shape + (bs.n_bonds, bs.n_bonds), dtype=complex)
    for vid, block in blocks.items():
        idx = bs.in_bonds[vid]
        if idx.size == 0:
            continue
        out[..., idx[:, None], idx[None, :]] = block
    return out


def vertex_sigma_blocks(bs: BondSystem, k) -> dict:
    """Effective scattering block per vertex, batched over k."""
    g = bs.graph
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    out = {}
    for v in g.vertices:
        n = len(g.internal_ends(v.id))
        if n == 0:
            continue
        m = g.lead_count(v.id)
        u = coupling_matrix(v.coupling, n + m)
        ueff = effective_coupling(split_blocks(u, n, m), karr, vertex=v.id)
        out[v.id] = effective_sigma(ueff, karr, vertex=v.id)
    return out


def big_sigma(bs: BondSystem, sigmas: dict, k) -> np.ndarray:
    """Assembled Sigma(k) in canonical bond order.

    `sigmas` maps vertex id to either a precomputed (.., n_v, n_v) block or
    a callable of k producing one.
    """
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    blocks = {}
    for vid, s in sigmas.items():
        blocks[vid] = s(karr) if callable(s) else np.asarray(s, dtype=complex)
    return assemble_blocks(bs, blocks)


def s_matrix(bs: BondSystem, sigmas: dict, k) -> np.ndarray:
    """S(k) = Q Sigma(k): S[b', b] is the amplitude for entering bond b'
    from bond b at the shared vertex."""
    sig = big_sigma(bs, sigmas, k)
    return sig[..., bs.rev_perm, :]
