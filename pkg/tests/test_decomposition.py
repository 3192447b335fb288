import pytest

from resonance_iso.decomposition import (
    extremal_lift_report,
    face_structure_report,
    find_reducible_faces,
    forced_edges,
    is_convex,
    matchings_through,
    partition_matchings,
    pce,
    rebuild_resonance,
    reduce_face,
    rfd,
    same_resonance_graph,
    strip_forced_edges,
)
from resonance_iso.errors import NoReducibleFace, NotConvex
from resonance_iso.generators import fibonaccene, linear_chain
from resonance_iso.graphs import Graph, path_graph
from resonance_iso.matching import enumerate_matchings, graph_is_elementary
from resonance_iso.resonance import build_resonance
from resonance_iso.theta import theta_classes


def test_terminal_rings_are_reducible():
    assert find_reducible_faces(linear_chain(3)) == [0, 2]
    assert find_reducible_faces(fibonaccene(4)) == [0, 3]


def test_reduction_removes_periphery():
    g = linear_chain(3)
    red = reduce_face(g, 0)
    assert len(red.periphery.edges) == 5
    assert red.reduced.graph.vertex_count == g.vertex_count - 4
    assert graph_is_elementary(red.reduced.graph)
    assert red.anchor not in red.periphery.edges
    assert g.edges[red.anchor] == (0, 9)
    assert bin(red.ear_plus).count("1") == 3
    assert bin(red.ear_minus).count("1") == 2


def test_middle_ring_not_reducible():
    with pytest.raises(NoReducibleFace):
        reduce_face(linear_chain(3), 1)


def test_rfd_default_order(corpus):
    for _, g in corpus[:80]:
        d = rfd(g)
        assert sorted(d.faces) == list(range(len(g.inner_faces)))
        assert d.steps[0].ear == ()
        for st in d.steps[1:]:
            assert len(st.ear) % 2 == 1 and len(st.ear) >= 3


def test_rfd_explicit_order():
    g = linear_chain(3)
    assert rfd(g, [2, 1, 0]).faces == [2, 1, 0]
    with pytest.raises(NoReducibleFace):
        rfd(g, [0, 2, 1])
    with pytest.raises(ValueError):
        rfd(g, [0, 1])


def test_ear_color_signatures():
    # the two 3-ring chains cannot be matched ear by ear under either coloring
    lin = linear_chain(3)
    fib = fibonaccene(3)
    s1 = rfd(lin).signature(lin.colors)
    assert s1[0] is None
    # with the default colorings the difference already shows at the second step
    assert s1[1] != rfd(fib).signature(fib.colors)[1]
    for colors in (fib.colors, fib.swapped_colors()):
        s2 = rfd(fib).signature(colors)
        assert s2[0] is None
        assert s1 != s2


def test_pce_small():
    p3 = path_graph(3)
    res = pce(p3, [0, 1], "x")
    assert res.graph.n == 5
    assert len(res.graph.edges) == 2 + 1 + 2
    assert res.copies == {0: (0, 3), 1: (1, 4)}
    assert sorted(res.graph.edges[i][2] for i in res.new_edges) == ["x", "x"]
    with pytest.raises(NotConvex):
        pce(p3, [0, 2], "x")
    assert is_convex(p3, [1])
    assert not is_convex(p3, [])


def test_pce_of_single_vertex_gives_k2():
    res = pce(Graph(1, ()), [0], 7)
    assert res.graph.n == 2 and res.graph.edges == ((0, 1, 7),)


def test_rebuild_equals_resonance(corpus):
    for _, g in corpus:
        assert same_resonance_graph(rebuild_resonance(g, rfd(g)), build_resonance(g))


def test_same_resonance_graph_detects_difference():
    r = build_resonance(linear_chain(3))
    other = type(r)(r.n, r.edges[:-1], r.matchings)
    assert not same_resonance_graph(r, other)


def test_partition_sizes():
    g = linear_chain(3)
    assert partition_matchings(g, 0).sizes() == (1, 2, 1, 0)
    g = fibonaccene(3)
    assert partition_matchings(g, 0).sizes() == (2, 1, 2, 0)


def test_extremal_lift_and_structure_reports(corpus):
    for _, g in corpus:
        if len(g.inner_faces) < 2:
            continue
        r = build_resonance(g)
        tc = theta_classes(r)
        for s in find_reducible_faces(g):
            assert extremal_lift_report(g, s, r)["ok"]
            assert face_structure_report(g, s, r, tc.edge_class)["ok"]


def test_stripping_counts_matchings_through_edge(corpus):
    for _, g in corpus[:40]:
        for e in range(g.edge_count):
            blocks = strip_forced_edges(g, e)
            product = 1
            for b in blocks:
                product *= len(enumerate_matchings(b.graph))
            assert product == len(matchings_through(g, e)), e
            assert e in forced_edges(g, e) or not matchings_through(g, e)
