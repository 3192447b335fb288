import pytest

from resonance_iso.errors import MixedFaceLabels, NotATree, ThetaNotTransitive
from resonance_iso.generators import fibonaccene, linear_chain
from resonance_iso.graphs import Graph, cycle_graph, path_graph
from resonance_iso.plane_graph import inner_dual
from resonance_iso.resonance import build_resonance
from resonance_iso.theta import matches_inner_dual, theta_classes, theta_graph, theta_related


def test_theta_on_square():
    c4 = cycle_graph(4)  # edges 0-1, 1-2, 2-3, 0-3
    idx = c4.edge_index
    e01, e12, e23, e03 = idx[(0, 1)], idx[(1, 2)], idx[(2, 3)], idx[(0, 3)]
    assert theta_related(c4, e01, e23)
    assert theta_related(c4, e12, e03)
    assert not theta_related(c4, e01, e12)


def test_path_edges_are_singletons():
    tc = theta_classes(path_graph(4))
    assert tc.sizes() == [1, 1, 1]


def test_hexagon_classes_are_opposite_pairs():
    # in C6 each edge is related to its opposite only
    tc = theta_classes(cycle_graph(6))
    assert sorted(tc.sizes()) == [2, 2, 2]


def test_non_median_graph_fails_transitivity():
    # K_{2,3}: Θ is not transitive
    k23 = Graph.from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    with pytest.raises(ThetaNotTransitive):
        theta_classes(k23)


def test_mixed_labels_detected():
    c4 = Graph.from_edges(4, [(0, 1, "a"), (1, 2, "b"), (2, 3, "b"), (0, 3, "b")])
    with pytest.raises(MixedFaceLabels):
        theta_classes(c4)


def test_theta_graph_not_tree_detected():
    # a 6-cycle with labels per opposite pair gives three classes pairwise adjacent
    c6 = cycle_graph(6)
    tc = theta_classes(c6)
    with pytest.raises(NotATree):
        theta_graph(c6, tc)


def test_fibonaccene_three_class_sizes():
    # R(F3) is the 5-vertex Fibonacci cube: a square with a pendant edge
    r = build_resonance(fibonaccene(3))
    tc = theta_classes(r)
    assert sorted(tc.sizes()) == [1, 2, 2]


def test_linear_chain_classes_are_single_edges():
    r = build_resonance(linear_chain(4))
    tc = theta_classes(r)
    assert tc.sizes() == [1, 1, 1, 1]
    assert sorted(tc.labels) == [0, 1, 2, 3]


def test_theta_graph_is_inner_dual(corpus):
    for _, g in corpus[:60]:
        r = build_resonance(g)
        tc = theta_classes(r)
        assert sum(tc.sizes()) == len(r.edges)
        tg = theta_graph(r, tc)
        assert matches_inner_dual(tg, inner_dual(g))
