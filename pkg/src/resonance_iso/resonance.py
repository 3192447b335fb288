"""Resonance graphs and resonance digraphs.

Arcs of :class:`ResonanceDigraph` point *upward* in the matching lattice:
``i -> j`` when ``M_i ⊕ M_j`` is an improper ``M_i``-alternating (equivalently
a proper ``M_j``-alternating) face cycle. The minimum matching is therefore
the unique source and the maximum the unique sink, and ``a <= b`` exactly
when ``b`` is reachable from ``a``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import CyclicDigraph, InternalInvariantViolation
from .graphs import Digraph, Graph
from .graphs import cartesian_product as _product
from .matching import (
    DEFAULT_CAP,
    AlternationClass,
    classify_cycle,
    enumerate_matchings,
    mask_edges,
)
from .plane_graph import PlaneBipartiteGraph


@dataclass(frozen=True, eq=False)
class ResonanceGraph(Graph):
    """Vertex ``i`` is the matching ``matchings[i]``; edge labels are inner face ids."""

    matchings: tuple[int, ...] = ()

    @cached_property
    def matching_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.matchings)}

    def index_of(self, mask: int) -> int:
        return self.matching_index[mask]


@dataclass(frozen=True, eq=False)
class ResonanceDigraph(Digraph):
    matchings: tuple[int, ...] = ()

    def reverse(self) -> "ResonanceDigraph":
        return ResonanceDigraph(
            self.n, tuple((v, u, lab) for u, v, lab in self.arcs), self.matchings
        )


def build_resonance(g: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> ResonanceGraph:
    """Resonance graph over the enumerated matchings.

    Each matching is flipped along each inner face it makes resonant; the
    flip is looked up in the matching index. Edges are sorted by endpoints.
    """
    matchings = enumerate_matchings(g, cap)
    index = {m: i for i, m in enumerate(matchings)}
    edges = []
    for i, m in enumerate(matchings):
        for f in g.inner_faces:
            j = index.get(m ^ f.mask)
            if j is not None and j > i:
                edges.append((i, j, f.id))
    edges.sort()
    return ResonanceGraph(len(matchings), tuple(edges), tuple(matchings))


def build_resonance_pairwise(g: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> ResonanceGraph:
    """Same graph by testing every pair's symmetric difference against the face masks."""
    matchings = enumerate_matchings(g, cap)
    faces = g.face_by_mask
    edges = []
    for i in range(len(matchings)):
        for j in range(i + 1, len(matchings)):
            f = faces.get(matchings[i] ^ matchings[j])
            if f is not None:
                edges.append((i, j, f))
    return ResonanceGraph(len(matchings), tuple(edges), tuple(matchings))


def orient(
    g: PlaneBipartiteGraph, r: ResonanceGraph, colors: Sequence[int] | None = None
) -> ResonanceDigraph:
    arcs = []
    for i, j, face in r.edges:
        cls = classify_cycle(g, r.matchings[i], g.faces[face].cycle, colors)
        if cls is AlternationClass.IMPROPER:
            arcs.append((i, j, face))
        elif cls is AlternationClass.PROPER:
            arcs.append((j, i, face))
        else:
            raise InternalInvariantViolation(f"edge {i}-{j} is not a face flip")
    return ResonanceDigraph(r.n, tuple(arcs), r.matchings)


def orient_swapped(g: PlaneBipartiteGraph, r: ResonanceGraph) -> ResonanceDigraph:
    """Orientation under the other proper 2-coloring."""
    return orient(g, r, g.swapped_colors())


def order_leq(d: Digraph, a: int, b: int) -> bool:
    """``a <= b`` in the lattice order: ``b`` is reachable from ``a``."""
    if not d.is_acyclic():
        raise CyclicDigraph("resonance digraph has a directed cycle")
    return b in d.reachable[a]


def cartesian_product(r1: Graph, r2: Graph) -> Graph:
    return _product(r1, r2)


def to_dot(graph: Graph | Digraph, name: str = "R") -> str:
    directed = isinstance(graph, Digraph)
    head, sep = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{head} {name} {{"]
    for v in range(graph.n):
        lines.append(f"  {v};")
    for u, v, lab in (graph.arcs if directed else graph.edges):
        attr = f' [label="{lab}"]' if lab is not None else ""
        lines.append(f"  {u} {sep} {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_document(graph: ResonanceGraph | ResonanceDigraph) -> dict:
    doc: dict = {"vertices": graph.n}
    matchings = getattr(graph, "matchings", ())
    if matchings:
        doc["matchings"] = [mask_edges(m) for m in matchings]
    if isinstance(graph, Digraph):
        doc["arcs"] = [[u, v, lab] for u, v, lab in graph.arcs]
    else:
        doc["edges"] = [[u, v, lab] for u, v, lab in graph.edges]
    return doc


def to_json(graph: ResonanceGraph | ResonanceDigraph) -> str:
    return json.dumps(to_document(graph), sort_keys=True)
