"""Djoković–Winkler relation on resonance graph edges and the induced Θ-graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MixedFaceLabels, NotATree, ThetaNotTransitive
from .graphs import Graph
from .plane_graph import InnerDual


def theta_related(r: Graph, e1: int, e2: int) -> bool:
    u, v, _ = r.edges[e1]
    x, y, _ = r.edges[e2]
    d = r.distances
    return d[u, x] + d[v, y] != d[u, y] + d[v, x]


@dataclass(frozen=True)
class ThetaClasses:
    classes: tuple[tuple[int, ...], ...]
    labels: tuple
    edge_class: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def theta_classes(r: Graph) -> ThetaClasses:
    """Partition the edges of ``r`` by Θ.

    Classes are grown from related pairs with union-find; afterwards every
    pair inside a class must be related (no transitive closure needed on a
    median graph) and carry the same label.
    """
    m = len(r.edges)
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    related = [[False] * m for _ in range(m)]
    for i in range(m):
        related[i][i] = True
        for j in range(i + 1, m):
            if theta_related(r, i, j):
                related[i][j] = related[j][i] = True
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])

    for c in classes:
        for a in c:
            for b in c:
                if not related[a][b]:
                    raise ThetaNotTransitive(f"edges {a} and {b} are Θ*-related but not Θ-related")
    labels = []
    for c in classes:
        labs = {r.edges[e][2] for e in c}
        if len(labs) != 1:
            raise MixedFaceLabels(f"Θ-class {c} carries labels {sorted(map(str, labs))}")
        labels.append(labs.pop())

    edge_class = [0] * m
    for k, c in enumerate(classes):
        for e in c:
            edge_class[e] = k
    return ThetaClasses(tuple(classes), tuple(labels), tuple(edge_class))


@dataclass(frozen=True)
class ThetaGraph:
    graph: Graph  # nodes are class ids
    face_of: tuple  # class id -> face label


def _share_square(r: Graph, x: int, y: int, z: int) -> bool:
    """Whether the incident edges ``xy`` and ``yz`` lie on a common 4-cycle."""
    common = r.adj_sets[x] & r.adj_sets[z]
    return any(w != y for w in common)


def theta_graph(r: Graph, tc: ThetaClasses) -> ThetaGraph:
    """Classes adjacent when some incident edge pair from them lies on no common 4-cycle."""
    adjacent: set[tuple[int, int]] = set()
    idx = r.edge_index
    for y in range(r.n):
        nb = r.adj[y]
        for i, x in enumerate(nb):
            cx = tc.edge_class[idx[(min(x, y), max(x, y))]]
            for z in nb[i + 1:]:
                cz = tc.edge_class[idx[(min(y, z), max(y, z))]]
                if cx == cz:
                    continue
                if not _share_square(r, x, y, z):
                    adjacent.add((min(cx, cz), max(cx, cz)))
    g = Graph.from_edges(len(tc), sorted(adjacent))
    if not g.is_tree():
        raise NotATree(f"Θ-graph with {g.n} nodes and {len(g.edges)} edges is not a tree")
    return ThetaGraph(g, tc.labels)


def matches_inner_dual(tg: ThetaGraph, dual: InnerDual) -> bool:
    """The face-label map is a bijection onto the inner faces and an isomorphism onto the dual."""
    faces = list(tg.face_of)
    if sorted(faces) != sorted(dual.nodes) or len(set(faces)) != len(faces):
        return False
    mapped = {
        (min(faces[a], faces[b]), max(faces[a], faces[b])) for a, b, _ in tg.graph.edges
    }
    return mapped == set(dual.shared)
