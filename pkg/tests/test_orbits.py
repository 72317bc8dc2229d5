import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qgres import (
    Edge,
    MetricGraph,
    Neumann,
    Standard,
    Vertex,
    build_bond_system,
    enumerate_irreducible_pseudo_orbits,
    enumerate_simple_cycles,
    graph_terms,
    load_fixture,
    secular_po,
)
from qgres.bonds import vertex_sigma_blocks, s_matrix
from qgres.errors import OrbitExplosionError
from qgres.orbits import cycle_transitions, format_term
from qgres.secular import Evaluator

from gridroots import brute_force_cycles, brute_force_disjoint_subsets


def test_single_loop_cycles(single_loop_neumann):
    bs = build_bond_system(single_loop_neumann)
    cycles = enumerate_simple_cycles(bs)
    assert cycles == [(0,), (1,), (0, 1)]


def test_single_loop_terms(single_loop_neumann):
    bs = build_bond_system(single_loop_neumann)
    terms = graph_terms(bs)
    keyed = {(t.m, t.bonds) for t in terms}
    assert keyed == {
        (0, ()),
        (1, (0,)),
        (1, (1,)),
        (1, (0, 1)),
        (2, (0, 1)),
    }
    empty = [t for t in terms if t.m == 0][0]
    assert empty.edge_counts == (0,)
    assert empty.amplitude(np.zeros((2, 2))) == 1.0


def test_circle_cycles_and_lengths(circle_two_leads):
    bs = build_bond_system(circle_two_leads)
    cycles = enumerate_simple_cycles(bs)
    assert len(cycles) == 6  # four 2-cycles, two 4-cycles
    lengths = sorted(
        tuple(sorted(np.bincount([bs.edge_of[b] for b in c], minlength=2)))
        for c in cycles
    )
    # length sums over 2-cycles: {2 l1, 2 l2, l1 + l2 twice}
    two = [tuple(x) for x in lengths if sum(x) == 2]
    assert sorted(two) == [(0, 2), (0, 2), (1, 1), (1, 1)]


def test_circle_terms_match_condition_shape(circle_two_leads):
    bs = build_bond_system(circle_two_leads)
    terms = graph_terms(bs)
    assert len(terms) == 9
    exps = sorted(tuple(t.edge_counts) for t in terms)
    assert exps == sorted(
        [(0, 0), (2, 0), (0, 2), (1, 1), (1, 1), (2, 2), (2, 2), (2, 2), (2, 2)]
    )


def test_path_graph_cycles_vs_brute_force(path_two_edges):
    bs = build_bond_system(path_two_edges)
    got = enumerate_simple_cycles(bs)
    want = brute_force_cycles(bs.tail, bs.head)
    assert got == want
    # only back-and-forth cycles exist on a path
    assert all(
        sorted(bs.edge_of[b] for b in c).count(j) in (0, 2)
        for c in got
        for j in range(2)
    )


@pytest.mark.parametrize("fixture", ["circle", "star", "loop", "path"])
def test_cycles_vs_brute_force(fixture, circle_two_leads, star_three, single_loop_neumann, path_two_edges):
    g = {
        "circle": circle_two_leads,
        "star": star_three,
        "loop": single_loop_neumann,
        "path": path_two_edges,
    }[fixture]
    bs = build_bond_system(g)
    assert enumerate_simple_cycles(bs) == brute_force_cycles(bs.tail, bs.head)


@pytest.mark.parametrize("fixture", ["circle", "star", "loop", "path"])
def test_term_count_vs_brute_force(fixture, circle_two_leads, star_three, single_loop_neumann, path_two_edges):
    g = {
        "circle": circle_two_leads,
        "star": star_three,
        "loop": single_loop_neumann,
        "path": path_two_edges,
    }[fixture]
    bs = build_bond_system(g)
    cycles = enumerate_simple_cycles(bs)
    terms = enumerate_irreducible_pseudo_orbits(bs, cycles)
    assert len(terms) == len(brute_force_disjoint_subsets(cycles))


def test_amplitude_multiplicative(circle_two_leads):
    # a pair term's amplitude is the product of its component cycles'
    bs = build_bond_system(circle_two_leads)
    terms = graph_terms(bs)
    k = 1.3 - 0.2j
    s = s_matrix(bs, vertex_sigma_blocks(bs, k), k)[0]
    singles = [t for t in terms if t.m == 1]
    pair_terms = [t for t in terms if t.m == 2]
    assert pair_terms
    for t in pair_terms:
        trans = set(t.transitions)
        parts = [
            u
            for u in singles
            if set(u.transitions) <= trans and set(u.bonds) <= set(t.bonds)
        ]
        factor_pairs = [
            (u, v)
            for i, u in enumerate(parts)
            for v in parts[i + 1 :]
            if set(u.transitions) | set(v.transitions) == trans
        ]
        assert factor_pairs
        u, v = factor_pairs[0]
        assert abs(t.amplitude(s) - u.amplitude(s) * v.amplitude(s)) < 1e-12


def test_cycle_rotation_leaves_amplitude_invariant(circle_two_leads):
    bs = build_bond_system(circle_two_leads)
    k = 0.9 - 0.4j
    s = s_matrix(bs, vertex_sigma_blocks(bs, k), k)[0]
    for cycle in enumerate_simple_cycles(bs):
        vals = []
        for r in range(len(cycle)):
            rot = cycle[r:] + cycle[:r]
            vals.append(np.prod([s[a, b] for a, b in cycle_transitions(rot)]))
        assert np.max(np.abs(np.diff(vals))) < 1e-12
        ln = sum(bs.length_vector()[list(cycle)])
        assert ln == sum(bs.length_vector()[list(cycle[1:] + cycle[:1])])


@pytest.mark.parametrize(
    "name", ["fig1", "fig9", "loop_delta_2", "loop_deltaprime", "loop_mixed"]
)
def test_determinant_equivalence(name):
    """Master property: the pseudo-orbit sum equals det(e^{ikL} Q Sigma - I)."""
    fx = load_fixture(name)
    ev = Evaluator(fx.graph)
    terms = graph_terms(ev.bonds)
    rng = np.random.default_rng(123)
    count = 0
    while count < 100:
        k = complex(rng.uniform(0.1, 30), rng.uniform(-3, 0.5))
        det = ev.det(k)
        po = secular_po(
            ev.bonds, ev.sigma_blocks(np.array([k])), terms, fx.graph.lengths, k
        )
        assert abs(po - det) <= 1e-9 * (1 + abs(det))
        count += 1


def test_neumann_graph_decouples(neumann_three_edges):
    bs = build_bond_system(neumann_three_edges)
    terms = graph_terms(bs)
    lengths = neumann_three_edges.lengths
    for k in (0.7, 2.2 - 0.3j, np.pi / lengths[0]):
        sigmas = vertex_sigma_blocks(bs, np.array([complex(k)]))
        got = secular_po(bs, sigmas, terms, lengths, complex(k))
        want = np.prod(1 - np.exp(2j * complex(k) * lengths))
        assert abs(got - want) < 1e-10 * (1 + abs(want))
    # exact zero at k = n pi / l_j
    sigmas = vertex_sigma_blocks(bs, np.array([complex(np.pi / lengths[1])]))
    val = secular_po(bs, sigmas, terms, lengths, complex(np.pi / lengths[1]))
    assert abs(val) < 1e-12


def test_embedded_eigenvalue_value(circle_two_leads):
    bs = build_bond_system(circle_two_leads)
    terms = graph_terms(bs)
    k = 2 * np.pi
    sigmas = vertex_sigma_blocks(bs, np.array([complex(k)]))
    assert abs(secular_po(bs, sigmas, terms, circle_two_leads.lengths, complex(k))) < 1e-9


def test_explosion_cap():
    g = MetricGraph(
        vertices=(Vertex("a", Standard()), Vertex("b", Standard())),
        edges=tuple(Edge("a", "b", 1.0 + 0.1 * i) for i in range(4)),
        leads=(),
    )
    bs = build_bond_system(g)
    with pytest.raises(OrbitExplosionError):
        enumerate_simple_cycles(bs, cap=10)


def test_format_term(circle_two_leads):
    bs = build_bond_system(circle_two_leads)
    terms = graph_terms(bs)
    lines = [format_term(t, 2) for t in terms]
    assert lines[0] == "m=0 bonds=- length=0"
    assert "m=1 bonds=b1,b1r length=2*l1" in lines


@settings(max_examples=25, deadline=None)
@given(
    l1=st.floats(0.3, 2.0),
    l2=st.floats(0.3, 2.0),
    kre=st.floats(0.2, 12.0),
    kim=st.floats(-1.5, 0.2),
)
def test_determinant_equivalence_property(l1, l2, kre, kim):
    g = MetricGraph(
        vertices=(Vertex("a", Standard()), Vertex("b", Neumann())),
        edges=(Edge("a", "b", l1), Edge("a", "b", l2)),
        leads=("a",),
    )
    ev = Evaluator(g)
    terms = graph_terms(ev.bonds)
    k = complex(kre, kim)
    det = ev.det(k)
    po = secular_po(ev.bonds, ev.sigma_blocks(np.array([k])), terms, g.lengths, k)
    assert abs(po - det) <= 1e-9 * (1 + abs(det))
