"""Acceptance criteria 1-7, one test each, with a pass/fail line per criterion."""

import itertools
import time
from contextlib import contextmanager

import networkx as nx

from conftest import ACCEPTANCE, hamming_fibonacci_cube, subset_matchings
from resonance_iso.comparator import (
    Answer,
    Prepared,
    cross_check,
    digraph_iso_modulo_coloring,
    fast_iso,
    graph_iso,
)
from resonance_iso.decomposition import (
    extremal_lift_report,
    find_reducible_faces,
    partition_matchings,
    rebuild_resonance,
    rfd,
    same_resonance_graph,
)
from resonance_iso.generators import fibonacci_cube, fibonaccene, linear_chain
from resonance_iso.graphs import Graph, is_median_graph
from resonance_iso.matching import AlternationClass, classify_cycle, enumerate_matchings, extremal_matchings
from resonance_iso.plane_graph import inner_dual
from resonance_iso.resonance import build_resonance, orient
from resonance_iso.theta import matches_inner_dual, theta_classes, theta_graph


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    note = {"text": ""}
    try:
        yield note
    except BaseException as exc:
        ACCEPTANCE[number] = f"criterion {number} FAIL  {title}: {type(exc).__name__}: {exc}"
        print(ACCEPTANCE[number])
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ACCEPTANCE[number] = f"criterion {number} FAIL  {title}: took {elapsed:.2f}s (limit {limit}s)"
        print(ACCEPTANCE[number])
        raise AssertionError(ACCEPTANCE[number])
    extra = f"; {note['text']}" if note["text"] else ""
    ACCEPTANCE[number] = f"criterion {number} PASS  {title} ({elapsed:.2f}s{extra})"
    print(ACCEPTANCE[number])


def nx_of(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v, _ in g.edges)
    return h


def test_criterion_1_three_ring_chains():
    with criterion(1, "linear vs angular 3-ring chains", limit=1.0) as note:
        lin, fib = linear_chain(3), fibonaccene(3)
        r_lin, r_fib = build_resonance(lin), build_resonance(fib)
        assert nx.is_isomorphic(nx_of(r_lin), nx.path_graph(4))

        cube = fibonacci_cube(3)
        words, edges = hamming_fibonacci_cube(3)
        assert (cube.n, len(cube.edges)) == (len(words), len(edges)) == (5, 5)
        assert nx.is_isomorphic(nx_of(r_fib), nx_of(cube))
        assert graph_iso(r_fib, cube)

        for g in (lin, fib):
            d = inner_dual(g)
            assert nx.is_isomorphic(nx_of(d.graph), nx.path_graph(3))

        assert fast_iso(lin, fib).answer is Answer.NOT_ISOMORPHIC
        assert graph_iso(r_lin, r_fib).answer is Answer.NOT_ISOMORPHIC
        verdict = digraph_iso_modulo_coloring(orient(lin, r_lin), orient(fib, r_fib))
        assert verdict.answer is Answer.NOT_ISOMORPHIC
        note["text"] = "Fibonacci cube of order 3 has 5 edges by the string oracle"


def test_criterion_2_three_way_agreement(corpus):
    with criterion(2, "three deciders agree on every ordered corpus pair", limit=60.0) as note:
        preps = [Prepared.of(g) for _, g in corpus]
        iso = disagreements = 0
        for a, b in itertools.product(preps, preps):
            rep = cross_check(a, b, raise_on_disagreement=False)
            disagreements += not rep["agree"]
            iso += rep["answer"] == "Isomorphic"
        assert disagreements == 0
        note["text"] = f"{len(preps) ** 2} pairs, {iso} isomorphic, 0 disagreements"


def test_criterion_3_theta_structure(corpus):
    with criterion(3, "Θ-classes and Θ-graph equal the inner dual", limit=30.0) as note:
        for _, g in corpus:
            r = build_resonance(g)
            tc = theta_classes(r)
            assert sorted(e for c in tc.classes for e in c) == list(range(len(r.edges)))
            assert all(len({r.edges[e][2] for e in c}) == 1 for c in tc.classes)
            assert matches_inner_dual(theta_graph(r, tc), inner_dual(g))
        note["text"] = f"{len(corpus)} graphs"


def test_criterion_4_rebuild_by_expansions(corpus):
    with criterion(4, "expansion rebuild equals R(G); plus side all resonant", limit=60.0) as note:
        steps = 0
        for _, g in corpus:
            d = rfd(g)
            assert same_resonance_graph(rebuild_resonance(g, d), build_resonance(g))
            for st in d.steps[1:]:
                h = st.snapshot
                local = {v: k for k, v in h.face_map.items()}[st.face]
                assert partition_matchings(h.graph, local).plus_other == ()
                steps += 1
        note["text"] = f"{len(corpus)} graphs, {steps} steps"


def test_criterion_5_extremal_lift(corpus):
    with criterion(5, "extremal matchings lift into the expected cells") as note:
        pairs = 0
        for _, g in corpus:
            r = build_resonance(g)
            d = orient(g, r)
            lo, hi = extremal_matchings(g)
            assert d.sources() == [r.index_of(lo)] and d.sinks() == [r.index_of(hi)]
            assert classify_cycle(g, lo, g.outer.cycle) is AlternationClass.IMPROPER
            assert classify_cycle(g, hi, g.outer.cycle) is AlternationClass.PROPER
            if len(g.inner_faces) < 2:
                continue
            for s in find_reducible_faces(g):
                rep = extremal_lift_report(g, s, r)
                assert rep["ok"], rep
                pairs += 1
        note["text"] = f"{pairs} (graph, reducible face) pairs"


def test_criterion_6_median(corpus):
    with criterion(6, "resonance graphs are median graphs", limit=120.0) as note:
        checked = 0
        for _, g in corpus:
            r = build_resonance(g)
            if r.n <= 200:
                assert is_median_graph(r)
                checked += 1
        note["text"] = f"{checked} graphs"


def test_criterion_7_oracles(corpus):
    with criterion(7, "enumeration oracle and chain counts") as note:
        small = 0
        for _, g in corpus:
            if g.edge_count <= 14:
                assert sorted(enumerate_matchings(g)) == subset_matchings(g)
                small += 1
        fib = [len(enumerate_matchings(fibonaccene(n))) for n in range(1, 9)]
        assert fib[:2] == [2, 3]
        assert all(fib[i] == fib[i - 1] + fib[i - 2] for i in range(2, 8))
        assert all(len(enumerate_matchings(linear_chain(n))) == n + 1 for n in range(1, 9))
        note["text"] = f"{small} graphs against the subset filter"
