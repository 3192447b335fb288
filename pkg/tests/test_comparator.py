import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import resonance_iso.comparator as comparator
from resonance_iso.comparator import (
    Answer,
    Prepared,
    cross_check,
    digraph_iso,
    digraph_iso_modulo_coloring,
    fast_iso,
    graph_iso,
    regularity_signature,
)
from resonance_iso.errors import DisagreementDetected, SearchBudgetExceeded
from resonance_iso.generators import ChainSpec, even_ring_chain, fibonaccene, hexagonal_chain, linear_chain
from resonance_iso.graphs import Digraph, Graph, cycle_graph, path_graph
from resonance_iso.plane_graph import build, mirror
from resonance_iso.resonance import build_resonance, orient


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v, _ in g.edges)
    return h


def relabel(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v, _ in g.edges])


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 7))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph.from_edges(n, sorted(chosen))


@settings(max_examples=150, deadline=None)
@given(small_graphs(), small_graphs())
def test_graph_iso_against_networkx(a, b):
    v = graph_iso(a, b)
    assert bool(v) == nx.is_isomorphic(to_nx(a), to_nx(b))
    if v:
        phi = v.witness
        assert sorted(phi) == list(range(b.n))
        assert all(b.has_edge(phi[x], phi[y]) for x, y, _ in a.edges)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(0, 10_000))
def test_graph_iso_finds_relabelling(a, seed):
    assert graph_iso(a, relabel(a, seed))


def test_cycle_vs_path():
    assert not graph_iso(cycle_graph(5), path_graph(5))
    assert not graph_iso(cycle_graph(6), Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))


def test_budget():
    g = build_resonance(fibonaccene(6))
    with pytest.raises(SearchBudgetExceeded):
        graph_iso(g, g, budget=1)


def test_digraph_iso_direction_matters():
    a = Digraph(3, ((0, 1, None), (1, 2, None)))
    b = Digraph(3, ((0, 1, None), (2, 1, None)))
    assert not digraph_iso(a, b)
    assert digraph_iso(a, Digraph(3, ((2, 0, None), (0, 1, None))))


def test_digraph_modulo_coloring_uses_reversal():
    g = fibonaccene(4)
    r = build_resonance(g)
    d = orient(g, r)
    v = digraph_iso_modulo_coloring(d, d.reverse())
    assert v.answer is Answer.ISOMORPHIC


def test_regularity_of_three_ring_chains():
    assert [t.regular for t in regularity_signature(linear_chain(3)).triples.values()] == [False]
    assert [t.regular for t in regularity_signature(fibonaccene(3)).triples.values()] == [True]
    sig = regularity_signature(linear_chain(3))
    assert sig.regular(0, 1, 2) == sig.regular(2, 1, 0)


def test_l3_f3_not_isomorphic_by_every_method():
    a, b = linear_chain(3), fibonaccene(3)
    ra, rb = build_resonance(a), build_resonance(b)
    assert fast_iso(a, b).answer is Answer.NOT_ISOMORPHIC
    assert graph_iso(ra, rb).answer is Answer.NOT_ISOMORPHIC
    assert digraph_iso_modulo_coloring(orient(a, ra), orient(b, rb)).answer is Answer.NOT_ISOMORPHIC


def test_mirror_image_is_isomorphic():
    g = even_ring_chain(ChainSpec((6, 8, 4, 6), (2, 1)))
    rep = cross_check(g, mirror(g))
    assert rep["answer"] == "Isomorphic"
    assert rep["decomposition"]["ear_colors_match"]
    assert rep["decomposition"]["digraphs_match"]


def test_chains_read_backwards_are_isomorphic():
    # turning every angular offset into its reverse gives the same chain read from the other end
    a = hexagonal_chain([2, 3, 4])
    b = hexagonal_chain([2, 3, 4][::-1])
    assert fast_iso(a, b)
    assert cross_check(a, b)["agree"]


def test_fast_iso_witness_is_dual_isomorphism():
    a = hexagonal_chain([2, 2])
    b = hexagonal_chain([4, 4])
    v = fast_iso(a, b)
    assert v
    assert sorted(v.witness) == [0, 1, 2, 3]


def test_fast_iso_face_count_mismatch():
    assert not fast_iso(linear_chain(2), linear_chain(3))


def test_cross_check_raises_on_disagreement(monkeypatch):
    a, b = linear_chain(3), fibonaccene(3)
    fake = comparator.IsoVerdict(Answer.ISOMORPHIC, "fast", {0: 0, 1: 1, 2: 2})
    monkeypatch.setattr(comparator, "_fast_iso", lambda *args: fake)
    with pytest.raises(DisagreementDetected) as info:
        cross_check(a, b)
    assert "g1" in info.value.bundle and "report" in info.value.bundle
    rep = cross_check(a, b, raise_on_disagreement=False)
    assert not rep["agree"]


def test_prepared_reuse():
    p = Prepared.of(fibonaccene(3))
    rep = cross_check(p, p)
    assert rep["answer"] == "Isomorphic" and rep["agree"]


def test_graph_rebuilt_from_rotations_is_isomorphic():
    # a square with two hexagons attached on opposite sides
    g = even_ring_chain(ChainSpec((6, 4, 6), (2,)))
    h = build(g.rotations, g.to_document()["outer"])
    assert cross_check(g, h)["answer"] == "Isomorphic"
