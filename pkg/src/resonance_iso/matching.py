"""Perfect matchings as edge bitmasks, alternating-cycle classes, elementarity."""

from __future__ import annotations

import enum
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, InternalInvariantViolation
from .plane_graph import BLACK, WHITE, PlaneBipartiteGraph

DEFAULT_CAP = 100_000


class AlternationClass(enum.Enum):
    PROPER = "proper"
    IMPROPER = "improper"
    NOT_ALTERNATING = "not_alternating"


def mask_edges(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def edges_to_mask(edge_ids: Iterable[int]) -> int:
    mask = 0
    for e in edge_ids:
        mask |= 1 << e
    return mask


def perfect_matchings_of(
    vertices: Iterable[int],
    edges: Mapping[int, tuple[int, int]],
    cap: int = DEFAULT_CAP,
) -> list[int]:
    """All perfect matchings of the graph ``(vertices, edges)`` as masks over edge ids.

    Branches on the lowest uncovered vertex and tries its edges in id order,
    so the output order is deterministic.
    """
    verts = sorted(set(vertices))
    incident: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for e in sorted(edges):
        u, v = edges[e]
        incident[u].append((e, v))
        incident[v].append((e, u))
    covered: set[int] = set()
    out: list[int] = []

    def rec(i: int, mask: int) -> None:
        while i < len(verts) and verts[i] in covered:
            i += 1
        if i == len(verts):
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} perfect matchings")
            out.append(mask)
            return
        v = verts[i]
        covered.add(v)
        for e, w in incident[v]:
            if w not in covered:
                covered.add(w)
                rec(i + 1, mask | (1 << e))
                covered.discard(w)
        covered.discard(v)

    rec(0, 0)
    return out


def enumerate_matchings(g: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> list[int]:
    return perfect_matchings_of(range(g.vertex_count), dict(enumerate(g.edges)), cap)


def is_perfect_matching(g: PlaneBipartiteGraph, mask: int) -> bool:
    covered = [0] * g.vertex_count
    for e in mask_edges(mask):
        if e >= g.edge_count:
            return False
        u, v = g.edges[e]
        covered[u] += 1
        covered[v] += 1
    return all(c == 1 for c in covered)


def classify_cycle(
    g: PlaneBipartiteGraph,
    matching: int,
    cycle: Sequence[int],
    colors: Sequence[int] | None = None,
) -> AlternationClass:
    """Classify a cycle (vertex sequence in clockwise order) against a matching.

    Proper: every matched edge runs white -> black along the cycle.
    Improper: every matched edge runs black -> white.
    """
    colors = g.colors if colors is None else colors
    k = len(cycle)
    if k % 2:
        return AlternationClass.NOT_ALTERNATING
    inside = [bool(matching >> g.edge_id[(cycle[i], cycle[(i + 1) % k])] & 1) for i in range(k)]
    if any(inside[i] == inside[i - 1] for i in range(k)):
        return AlternationClass.NOT_ALTERNATING
    directions = {
        (colors[cycle[i]], colors[cycle[(i + 1) % k]]) for i in range(k) if inside[i]
    }
    if directions == {(WHITE, BLACK)}:
        return AlternationClass.PROPER
    if directions == {(BLACK, WHITE)}:
        return AlternationClass.IMPROPER
    return AlternationClass.NOT_ALTERNATING


def is_resonant(g: PlaneBipartiteGraph, matching: int, face: int) -> bool:
    return classify_cycle(g, matching, g.faces[face].cycle) is not AlternationClass.NOT_ALTERNATING


def extremal_matchings(
    g: PlaneBipartiteGraph, colors: Sequence[int] | None = None
) -> tuple[int, int]:
    """``(minimum, maximum)``: the outer cycle is improper for the first, proper for the second."""
    outer = g.outer
    even = edges_to_mask(outer.edge_ids[0::2])
    odd = edges_to_mask(outer.edge_ids[1::2])
    if not (is_perfect_matching(g, even) and is_perfect_matching(g, odd)):
        raise InternalInvariantViolation("outer cycle does not split into two perfect matchings")
    cls_even = classify_cycle(g, even, outer.cycle, colors)
    if cls_even is AlternationClass.IMPROPER:
        return even, odd
    if cls_even is AlternationClass.PROPER:
        return odd, even
    raise InternalInvariantViolation("outer cycle is not alternating")


def _bipartite_sides(
    vertices: Sequence[int], adj: Mapping[int, list[int]]
) -> tuple[list[int], list[int]] | None:
    side: dict[int, int] = {}
    for s in vertices:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return None
    left = [v for v in vertices if side[v] == 0]
    right = [v for v in vertices if side[v] == 1]
    return left, right


def has_perfect_matching(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> bool:
    """Augmenting-path (Kuhn) test for a perfect matching in a bipartite graph."""
    verts = sorted(set(vertices))
    if len(verts) % 2:
        return False
    if not verts:
        return True
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    sides = _bipartite_sides(verts, adj)
    if sides is None:
        raise ValueError("graph is not bipartite")
    left, right = sides
    if len(left) != len(right):
        return False
    mate: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in mate or augment(mate[w], seen):
                mate[w] = u
                return True
        return False

    return all(augment(u, set()) for u in left)


def is_elementary(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> bool:
    """Connected, with every edge in some perfect matching."""
    verts = sorted(set(vertices))
    edge_list = list(edges)
    if not verts or not edge_list:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edge_list:
        adj[u].append(v)
        adj[v].append(u)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(verts):
        return False
    for u, v in edge_list:
        rest = [x for x in verts if x != u and x != v]
        if not has_perfect_matching(rest, edge_list):
            return False
    return True


def graph_is_elementary(g: PlaneBipartiteGraph) -> bool:
    return is_elementary(range(g.vertex_count), g.edges)
