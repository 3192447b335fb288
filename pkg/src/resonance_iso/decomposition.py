"""Reducible faces, reducible face decompositions and peripheral convex expansions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InternalInvariantViolation,
    NoReducibleFace,
    NotConvex,
    UsageOnSingleFace,
)
from .graphs import Graph
from .matching import (
    DEFAULT_CAP,
    edges_to_mask,
    extremal_matchings,
    is_elementary,
    is_resonant,
    perfect_matchings_of,
)
from .plane_graph import (
    CommonPeriphery,
    PlaneBipartiteGraph,
    SubEmbedding,
    common_periphery,
    inner_dual,
    restrict,
)
from .resonance import ResonanceGraph, build_resonance


@dataclass(frozen=True, eq=False)
class Reduction:
    """What is left of ``g`` after cutting off the reducible face ``face``."""

    face: int
    periphery: CommonPeriphery
    anchor: int  # the one edge of the face not on the periphery
    reduced: SubEmbedding

    @property
    def ear_plus(self) -> int:
        """Mask of the periphery edges at odd positions (both end edges included)."""
        return edges_to_mask(self.periphery.edges[0::2])

    @property
    def ear_minus(self) -> int:
        return edges_to_mask(self.periphery.edges[1::2])


def _reduction(g: PlaneBipartiteGraph, s: int) -> Reduction | None:
    """Cut off ``s`` if it passes the structural tests; elementarity is not checked here."""
    p = common_periphery(g, s)
    if p is None or p.whole_boundary:
        return None
    if len(p.edges) < 3 or len(p.edges) % 2 == 0:
        return None
    rest = set(g.faces[s].edge_ids) - set(p.edges)
    if len(rest) != 1:
        return None
    (anchor,) = rest
    inner = set(p.vertices[1:-1])
    keep = [e for e, (a, b) in enumerate(g.edges) if a not in inner and b not in inner]
    if len(keep) != g.edge_count - len(p.edges):
        return None
    return Reduction(s, p, anchor, restrict(g, keep))


def reduce_face(g: PlaneBipartiteGraph, s: int) -> Reduction:
    """Reduction for a reducible face ``s``; raises if ``s`` is not reducible."""
    if len(g.inner_faces) < 2:
        raise UsageOnSingleFace("a graph with one inner face has no reducible face")
    red = _reduction(g, s) if inner_dual(g).degree(s) == 1 else None
    if red is None or not _elementary(red.reduced.graph):
        raise NoReducibleFace(f"face {s} is not reducible")
    return red


def _elementary(h: PlaneBipartiteGraph) -> bool:
    return is_elementary(range(h.vertex_count), h.edges)


def find_reducible_faces(g: PlaneBipartiteGraph) -> list[int]:
    """Inner faces that are reducible, checked against the definition."""
    if len(g.inner_faces) < 2:
        raise UsageOnSingleFace("a graph with one inner face has no reducible face")
    dual = inner_dual(g)
    out = []
    for f in g.inner_faces:
        if dual.degree(f.id) != 1:
            continue
        red = _reduction(g, f.id)
        if red is not None and _elementary(red.reduced.graph):
            out.append(f.id)
    if not out:
        raise NoReducibleFace("no reducible face found")
    return out


@dataclass(frozen=True, eq=False)
class RfdStep:
    face: int
    snapshot: SubEmbedding  # G_i, in the ids of the original graph
    ear: tuple[int, ...] = ()  # clockwise along the periphery of G_i
    ear_vertices: tuple[int, ...] = ()
    anchor: int | None = None

    @property
    def start_color(self) -> int | None:
        return self.snapshot_colors[0] if self.ear else None

    @property
    def end_color(self) -> int | None:
        return self.snapshot_colors[1] if self.ear else None

    @property
    def snapshot_colors(self) -> tuple[int, int]:
        g = self.snapshot.graph
        pos = {v: i for i, v in enumerate(self.snapshot.vertex_map)}
        return g.colors[pos[self.ear_vertices[0]]], g.colors[pos[self.ear_vertices[-1]]]


@dataclass(frozen=True, eq=False)
class Rfd:
    steps: tuple[RfdStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def faces(self) -> list[int]:
        return [s.face for s in self.steps]

    def signature(self, colors: Sequence[int]) -> list[tuple[int, int] | None]:
        """Colors of the ear ends (start, end) under ``colors`` of the original graph."""
        out = []
        for st in self.steps:
            if not st.ear:
                out.append(None)
            else:
                out.append((colors[st.ear_vertices[0]], colors[st.ear_vertices[-1]]))
        return out

    def to_document(self) -> dict:
        steps = []
        for i, st in enumerate(self.steps, start=1):
            item: dict = {"step": i, "face": st.face}
            if st.ear:
                item["ear"] = list(st.ear)
                item["ear_vertices"] = list(st.ear_vertices)
                item["colors"] = [st.start_color, st.end_color]
                item["anchor"] = st.anchor
            steps.append(item)
        return {"steps": steps}


def _compose(outer: SubEmbedding, inner: SubEmbedding) -> SubEmbedding:
    return SubEmbedding(
        inner.graph,
        tuple(outer.vertex_map[v] for v in inner.vertex_map),
        tuple(outer.edge_map[e] for e in inner.edge_map),
        outer.parent_faces,
    )


def identity_embedding(g: PlaneBipartiteGraph) -> SubEmbedding:
    return restrict(g, range(g.edge_count))


def rfd(g: PlaneBipartiteGraph, order: Sequence[int] | None = None) -> Rfd:
    """Reducible face decomposition ``G_1, ..., G_n = g``.

    Faces are peeled off one at a time, always the reducible face with the
    smallest id, unless ``order`` (faces ``s_1..s_n`` in build order) says
    otherwise; each requested face must be reducible when its turn comes.
    """
    n = len(g.inner_faces)
    if order is not None and sorted(order) != sorted(f.id for f in g.inner_faces):
        raise ValueError("order must list every inner face exactly once")
    current = identity_embedding(g)
    removed: list[RfdStep] = []
    while len(current.graph.inner_faces) > 1:
        h = current.graph
        to_parent = current.face_map  # local face -> face of g
        to_local = {v: k for k, v in to_parent.items()}
        candidates = sorted(to_parent[f] for f in find_reducible_faces(h))
        if order is not None:
            want = order[len(to_parent) - 1]
            if want not in candidates:
                raise NoReducibleFace(f"face {want} is not reducible at step {len(to_parent)}")
            pick = want
        else:
            pick = candidates[0]
        red = reduce_face(h, to_local[pick])
        removed.append(
            RfdStep(
                face=pick,
                snapshot=current,
                ear=tuple(current.edge_map[e] for e in red.periphery.edges),
                ear_vertices=tuple(current.vertex_map[v] for v in red.periphery.vertices),
                anchor=current.edge_map[red.anchor],
            )
        )
        current = _compose(current, red.reduced)
    (last,) = current.face_map.values()
    if order is not None and order[0] != last:
        raise NoReducibleFace(f"decomposition must start from face {order[0]}, not {last}")
    steps = (RfdStep(face=last, snapshot=current),) + tuple(reversed(removed))
    assert len(steps) == n
    return Rfd(steps)


@dataclass(frozen=True, eq=False)
class PceResult:
    graph: Graph
    copies: dict[int, tuple[int, int]]  # old vertex in the convex set -> (v1, v2)
    new_edges: tuple[int, ...]  # indices in graph.edges of the v1-v2 edges


def is_convex(graph: Graph, vertices: Iterable[int]) -> bool:
    """Every shortest path between two members stays inside the set."""
    members = sorted(set(vertices))
    if not members:
        return False
    d = graph.distances
    inside = set(members)
    for i, a in enumerate(members):
        for b in members[i:]:
            if d[a, b] < 0:
                return False
            for w in range(graph.n):
                if w not in inside and d[a, w] + d[w, b] == d[a, b]:
                    return False
    return True


def pce(graph: Graph, convex: Iterable[int], label=None) -> PceResult:
    """Peripheral convex expansion of ``graph`` over ``convex``.

    Each member ``v`` keeps its id as ``v1`` and gains a copy ``v2``
    (numbered ``n, n+1, ...`` in ascending order of ``v``). Edges between
    copies inherit the label of the original edge; ``v1 v2`` edges get
    ``label``.
    """
    members = sorted(set(convex))
    if not is_convex(graph, members):
        raise NotConvex("vertex set is not convex")
    copies = {v: (v, graph.n + k) for k, v in enumerate(members)}
    edges = list(graph.edges)
    for u, v, lab in graph.edges:
        if u in copies and v in copies:
            edges.append((copies[u][1], copies[v][1], lab))
    first_new = len(edges)
    for v in members:
        edges.append((v, copies[v][1], label))
    out = Graph.from_edges(graph.n + len(members), edges)
    return PceResult(out, copies, tuple(range(first_new, len(edges))))


def rebuild_resonance(g: PlaneBipartiteGraph, d: Rfd) -> ResonanceGraph:
    """Resonance graph of ``g`` grown from ``K2`` by one expansion per decomposition step.

    Vertices carry the matchings of ``g`` they stand for, so the result can
    be compared with :func:`build_resonance` edge for edge.
    """
    first = d.steps[0]
    g1 = first.snapshot
    cyc = g1.graph.faces[0].edge_ids
    m_a = g1.lift(edges_to_mask(cyc[0::2]))
    m_b = g1.lift(edges_to_mask(cyc[1::2]))
    graph = Graph(2, ((0, 1, first.face),))
    matchings = [m_a, m_b]
    for st in d.steps[1:]:
        anchor_bit = 1 << st.anchor
        plus = edges_to_mask(st.ear[0::2])
        minus = edges_to_mask(st.ear[1::2])
        convex = [i for i, m in enumerate(matchings) if m & anchor_bit]
        res = pce(graph, convex, st.face)
        new = [m | minus for m in matchings]
        for i in convex:
            new.append((matchings[i] & ~anchor_bit) | plus)
        graph, matchings = res.graph, new
    return ResonanceGraph(graph.n, graph.edges, tuple(matchings))


def same_resonance_graph(r1: ResonanceGraph, r2: ResonanceGraph) -> bool:
    """Identical matchings and identical labeled flips (vertex order ignored)."""
    if sorted(r1.matchings) != sorted(r2.matchings):
        return False

    def key(r: ResonanceGraph) -> set:
        return {
            (frozenset((r.matchings[u], r.matchings[v])), lab) for u, v, lab in r.edges
        }

    return key(r1) == key(r2)


@dataclass(frozen=True)
class MatchingPartition:
    """Matching ids split by end-edge membership of the periphery and resonance of the face."""

    minus_resonant: tuple[int, ...]
    minus_other: tuple[int, ...]
    plus_resonant: tuple[int, ...]
    plus_other: tuple[int, ...]

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(sorted(self.minus_resonant + self.minus_other))

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(sorted(self.plus_resonant + self.plus_other))

    def sizes(self) -> tuple[int, int, int, int]:
        return (
            len(self.minus_resonant),
            len(self.minus_other),
            len(self.plus_resonant),
            len(self.plus_other),
        )


def partition_matchings(
    g: PlaneBipartiteGraph, s: int, r: ResonanceGraph | None = None
) -> MatchingPartition:
    red = reduce_face(g, s)
    r = build_resonance(g) if r is None else r
    first, last = red.periphery.edges[0], red.periphery.edges[-1]
    cells: tuple[list[int], ...] = ([], [], [], [])
    for i, m in enumerate(r.matchings):
        a, b = m >> first & 1, m >> last & 1
        if a != b:
            raise InternalInvariantViolation("periphery is not alternating for some matching")
        cell = 2 * a + (0 if is_resonant(g, m, s) else 1)
        cells[cell].append(i)
    return MatchingPartition(*(tuple(c) for c in cells))


def _strip(g: PlaneBipartiteGraph, anchor: int) -> tuple[list[int], set[int], list[int]]:
    """Forced edges, residual vertices and residual edges after stripping."""
    u, v = g.edges[anchor]
    alive = set(range(g.vertex_count)) - {u, v}
    forced = [anchor]
    while True:
        pendant = None
        for x in sorted(alive):
            nbrs = [w for w in g.rotations[x] if w in alive]
            if len(nbrs) == 0:
                raise ValueError(f"edge {anchor} lies in no perfect matching")
            if len(nbrs) == 1:
                pendant = (x, nbrs[0])
                break
        if pendant is None:
            break
        x, w = pendant
        forced.append(g.edge_id[(x, w)])
        alive -= {x, w}
    edges = [e for e, (a, b) in enumerate(g.edges) if a in alive and b in alive]
    return forced, alive, edges


def _blocks(vertices: set[int], edges: list[tuple[int, int, int]]) -> list[list[int]]:
    """Biconnected components as lists of edge ids (Hopcroft–Tarjan)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    for eid, a, b in edges:
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    blocks: list[list[int]] = []
    counter = [0]

    def dfs(x: int, parent_edge: int | None) -> None:
        disc[x] = low[x] = counter[0]
        counter[0] += 1
        for y, eid in adj[x]:
            if eid == parent_edge:
                continue
            if y not in disc:
                stack.append(eid)
                dfs(y, eid)
                low[x] = min(low[x], low[y])
                if low[y] >= disc[x]:
                    block = []
                    while True:
                        top = stack.pop()
                        block.append(top)
                        if top == eid:
                            break
                    blocks.append(sorted(block))
            elif disc[y] < disc[x]:
                stack.append(eid)
                low[x] = min(low[x], disc[y])

    for v in sorted(vertices):
        if v not in disc:
            dfs(v, None)
    return sorted(blocks)


def strip_forced_edges(g: PlaneBipartiteGraph, anchor: int) -> list[SubEmbedding]:
    """2-connected components left after forcing ``anchor`` and stripping pendant edges.

    Bridges of the residual graph lie in no perfect matching and are
    dropped, so the matchings through ``anchor`` correspond to tuples of
    matchings of the returned components.
    """
    _, alive, edges = _strip(g, anchor)
    blocks = _blocks(alive, [(e, *g.edges[e]) for e in edges])
    return [restrict(g, b) for b in blocks if len(b) > 1]


def forced_edges(g: PlaneBipartiteGraph, anchor: int) -> list[int]:
    return _strip(g, anchor)[0]


def matchings_through(g: PlaneBipartiteGraph, edge: int, cap: int = DEFAULT_CAP) -> list[int]:
    """Perfect matchings of ``g`` containing ``edge``, by direct enumeration."""
    u, v = g.edges[edge]
    rest = {i: e for i, e in enumerate(g.edges) if u not in e and v not in e}
    verts = [x for x in range(g.vertex_count) if x not in (u, v)]
    return [m | (1 << edge) for m in perfect_matchings_of(verts, rest, cap)]


def extremal_lift_report(g: PlaneBipartiteGraph, s: int, r: ResonanceGraph | None = None) -> dict:
    """Check where the lifted extremal matchings of the reduced graph land.

    With ``H`` the reduced graph and ``e`` the anchor edge: ``e`` lies in
    exactly one of ``H``'s extremal matchings; lifting them gives the
    extremal matchings of ``g`` and they fall into the expected cells.
    """
    red = reduce_face(g, s)
    r = build_resonance(g) if r is None else r
    h = red.reduced
    lo, hi = (h.lift(m) for m in extremal_matchings(h.graph))
    e = 1 << red.anchor
    g_lo, g_hi = extremal_matchings(g)
    part = partition_matchings(g, s, r)
    idx = r.matching_index
    report = {"anchor_in_exactly_one": bool(lo & e) != bool(hi & e)}
    if not lo & e:
        lifted_lo = lo | red.ear_minus
        lifted_hi = (hi & ~e) | red.ear_plus
        report["case"] = "i"
        report["min_cell_ok"] = idx.get(lifted_lo) in part.minus_other
        report["max_cell_ok"] = idx.get(lifted_hi) in part.plus_resonant
    else:
        lifted_lo = (lo & ~e) | red.ear_plus
        lifted_hi = hi | red.ear_minus
        report["case"] = "ii"
        report["min_cell_ok"] = idx.get(lifted_lo) in part.plus_resonant
        report["max_cell_ok"] = idx.get(lifted_hi) in part.minus_other
    report["lifted_min_is_min"] = lifted_lo == g_lo
    report["lifted_max_is_max"] = lifted_hi == g_hi
    report["ok"] = all(v for k, v in report.items() if k != "case")
    return report


def face_structure_report(
    g: PlaneBipartiteGraph, s: int, r: ResonanceGraph, theta_class_of_edge: Sequence[int]
) -> dict:
    """Structure of the flips along a reducible face ``s`` inside ``r``.

    ``theta_class_of_edge`` maps edge indices of ``r`` to Θ-class ids.
    """
    red = reduce_face(g, s)
    part = partition_matchings(g, s, r)
    flips = [i for i, (_, _, lab) in enumerate(r.edges) if lab == s]
    classes = {theta_class_of_edge[i] for i in flips}
    whole_class = len(classes) == 1 and sorted(
        i for i, c in enumerate(theta_class_of_edge) if c in classes
    ) == flips

    comps = sorted(tuple(c) for c in r.components(flips))
    two_sides = comps == sorted([part.minus, part.plus])

    minus_res, plus_res = set(part.minus_resonant), set(part.plus_resonant)
    phi: dict[int, int] = {}
    matching_ok = True
    for i in flips:
        a, b, _ = r.edges[i]
        if a in plus_res:
            a, b = b, a
        if a not in minus_res or b not in plus_res or a in phi:
            matching_ok = False
            break
        phi[a] = b
    matching_ok = matching_ok and set(phi) == minus_res and set(phi.values()) == plus_res
    iso_ok = matching_ok and all(
        r.has_edge(phi[a], phi[b]) == r.has_edge(a, b)
        for a in minus_res
        for b in minus_res
        if a < b
    )

    h = red.reduced
    h_matchings = perfect_matchings_of(range(h.graph.vertex_count), dict(enumerate(h.graph.edges)))
    lifted = {h.lift(m) for m in h_matchings}
    mine = {r.matchings[i] & ~red.ear_minus: i for i in part.minus}
    same_vertices = lifted == set(mine) and len(mine) == len(part.minus)
    same_edges = False
    if same_vertices:
        rh = build_resonance(h.graph)
        face_map = h.face_map
        want = {
            (frozenset((h.lift(rh.matchings[a]), h.lift(rh.matchings[b]))), face_map[lab])
            for a, b, lab in rh.edges
        }
        minus_set = set(part.minus)
        got = {
            (
                frozenset((r.matchings[a] & ~red.ear_minus, r.matchings[b] & ~red.ear_minus)),
                lab,
            )
            for a, b, lab in r.edges
            if a in minus_set and b in minus_set
        }
        same_edges = want == got

    report = {
        "flips_form_theta_class": whole_class,
        "two_components": two_sides,
        "flips_match_resonant_cells": matching_ok,
        "flips_define_isomorphism": iso_ok,
        "plus_all_resonant": not part.plus_other,
        "minus_side_is_reduced_resonance_graph": same_vertices and same_edges,
    }
    report["ok"] = all(report.values())
    return report
