"""Small immutable graph containers shared by the analysis modules.

Vertices are always ``0..n-1``. Edges carry an arbitrary hashable label
(a face id for resonance graphs, ``None`` for plain graphs).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int, Hashable], ...] = ()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "Graph":
        out = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            label = e[2] if len(e) > 2 else None
            if u == v:
                raise ValueError(f"self-loop at {u}")
            out.append((min(u, v), max(u, v), label))
        return cls(n, tuple(out))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(x) for x in self.adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def label(self, u: int, v: int) -> Hashable:
        return self.edges[self.edge_index[(min(u, v), max(u, v))]][2]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs BFS distances; -1 marks unreachable pairs."""
        dist = np.full((self.n, self.n), -1, dtype=np.int64)
        for s in range(self.n):
            row = dist[s]
            row[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if row[y] < 0:
                        row[y] = row[x] + 1
                        queue.append(y)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or bool((self.distances[0] >= 0).all())

    def components(self, removed_edges: Iterable[int] = ()) -> list[list[int]]:
        skip = set(removed_edges)
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            if i not in skip:
                nbrs[u].append(v)
                nbrs[v].append(u)
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in nbrs[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, renumbered in ascending order of ``vertices``."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        sub = [(pos[u], pos[v], lab) for u, v, lab in self.edges if u in pos and v in pos]
        return Graph(len(keep), tuple(sub)), keep

    def is_tree(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1 and self.is_connected()

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v], lab) for u, v, lab in self.edges])


@dataclass(frozen=True, eq=False)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int, Hashable], ...] = ()

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.arcs:
            inc[v].append(u)
        return tuple(tuple(sorted(x)) for x in inc)

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.arcs)

    def reverse(self) -> "Digraph":
        return type(self)(self.n, tuple((v, u, lab) for u, v, lab in self.arcs))

    def underlying(self) -> Graph:
        return Graph.from_edges(self.n, self.arcs)

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.pred[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.succ[v]]

    def topological_order(self) -> list[int] | None:
        """Kahn order, or ``None`` when the digraph has a directed cycle."""
        indeg = [len(p) for p in self.pred]
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in self.succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return order if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    @cached_property
    def reachable(self) -> tuple[frozenset[int], ...]:
        """``reachable[v]`` is the set of vertices reachable from ``v`` (including ``v``)."""
        out = []
        for s in range(self.n):
            seen = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(frozenset(seen))
        return tuple(out)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(a, b)`` becomes ``a * g2.n + b``.

    Edge labels become ``(0, label)`` for edges copied from ``g1`` and
    ``(1, label)`` for edges copied from ``g2``.
    """
    n2 = g2.n
    edges = []
    for a in range(g1.n):
        for u, v, lab in g2.edges:
            edges.append((a * n2 + u, a * n2 + v, (1, lab)))
    for u, v, lab in g1.edges:
        for b in range(n2):
            edges.append((u * n2 + b, v * n2 + b, (0, lab)))
    edges.sort(key=lambda e: (e[0], e[1]))
    return Graph.from_edges(g1.n * n2, edges)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def medians(g: Graph, a: int, b: int, c: int) -> list[int]:
    d = g.distances
    mask = (
        (d[a] + d[:, b] == d[a, b])
        & (d[b] + d[:, c] == d[b, c])
        & (d[a] + d[:, c] == d[a, c])
    )
    return [int(x) for x in np.flatnonzero(mask)]


def is_median_graph(g: Graph) -> bool:
    """Every vertex triple has exactly one median.

    Uses the interval masks ``I(a, b)`` for all pairs; memory is ``O(n^3)``
    bits, which is fine for the few hundred vertices this is meant for.
    """
    if not g.is_connected():
        return False
    n = g.n
    d = g.distances
    # interval[a, b, x] <=> x lies on a shortest a-b path
    interval = (d[:, None, :] + d[None, :, :]) == d[:, :, None]
    for a in range(n):
        for b in range(a, n):
            both = interval[a, b][None, :] & interval[b] & interval[a]
            if not (both.sum(axis=1) == 1).all():
                return False
    return True
