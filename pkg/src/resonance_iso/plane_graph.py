"""Plane bipartite graphs given by a rotation system.

Conventions
-----------
* ``rotations[v]`` lists the neighbours of ``v`` in clockwise order as seen
  in the drawing.
* Faces are traced with the next-edge rule: after arriving at ``v`` from
  ``u`` leave towards the neighbour that follows ``u`` in ``rotations[v]``.
  Every traced face lies to the left of its darts, so inner faces come out
  counterclockwise and the outer face clockwise.
* ``Face.cycle`` always stores the boundary in *clockwise* order: inner
  traces are reversed, the outer trace is kept as is.
* Colors: ``WHITE = 0``, ``BLACK = 1``; by default vertex 0 is white.
* Inner faces get ids ``0..k-1`` in tracing order, the outer face gets ``k``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadRotation,
    InputError,
    InternalInvariantViolation,
    NotBipartite,
    NotOuterplane,
    NotTwoConnected,
    OddInnerFace,
    SharedEdgeMultiplicity,
)
from .graphs import Graph

WHITE = 0
BLACK = 1


@dataclass(frozen=True)
class Face:
    id: int
    cycle: tuple[int, ...]
    edge_ids: tuple[int, ...]  # in cycle order: edge (cycle[i], cycle[i+1])
    mask: int
    is_outer: bool

    @property
    def darts(self) -> list[tuple[int, int]]:
        c = self.cycle
        return [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def __len__(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class CommonPeriphery:
    """Edges a face shares with the outer face, ordered clockwise along the outer cycle."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    whole_boundary: bool = False

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True, eq=False)
class PlaneBipartiteGraph:
    rotations: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]
    faces: tuple[Face, ...]
    outer_face: int

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def outer(self) -> Face:
        return self.faces[self.outer_face]

    @property
    def inner_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if not f.is_outer)

    @cached_property
    def edge_id(self) -> dict[tuple[int, int], int]:
        out = {}
        for i, (u, v) in enumerate(self.edges):
            out[(u, v)] = i
            out[(v, u)] = i
        return out

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def dart_face(self) -> dict[tuple[int, int], int]:
        """Face lying to the left of each dart (the face whose trace uses it)."""
        out = {}
        for f in self.faces:
            darts = f.darts if f.is_outer else [(b, a) for a, b in f.darts]
            for d in darts:
                out[d] = f.id
        return out

    @cached_property
    def face_by_mask(self) -> dict[int, int]:
        return {f.mask: f.id for f in self.inner_faces}

    @cached_property
    def line_distances(self) -> np.ndarray:
        m = self.edge_count
        dist = np.full((m, m), -1, dtype=np.int64)
        for s in range(m):
            row = dist[s]
            row[s] = 0
            queue = deque([s])
            while queue:
                e = queue.popleft()
                for x in self.edges[e]:
                    for f in self.incident[x]:
                        if row[f] < 0:
                            row[f] = row[e] + 1
                            queue.append(f)
        return dist

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.vertex_count, self.edges)

    def swapped_colors(self) -> tuple[int, ...]:
        return tuple(1 - c for c in self.colors)

    def to_document(self) -> dict:
        o = self.outer.cycle
        return {
            "vertices": self.vertex_count,
            "rotations": [list(r) for r in self.rotations],
            "outer": [o[0], o[1]],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document())

    def __repr__(self) -> str:
        return (
            f"PlaneBipartiteGraph(V={self.vertex_count}, E={self.edge_count}, "
            f"inner_faces={len(self.faces) - 1})"
        )


def _trace_faces(rotations: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    pos = [{w: i for i, w in enumerate(r)} for r in rotations]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in range(len(rotations)):
        for v in rotations[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append((a, b))
                rot = rotations[b]
                a, b = b, rot[(pos[b][a] + 1) % len(rot)]
            faces.append(walk)
    return faces


def _has_cut_vertex(n: int, adj: Sequence[Sequence[int]]) -> bool:
    for x in range(n):
        start = 0 if x != 0 else 1
        seen = {x, start}
        stack = [start]
        while stack:
            y = stack.pop()
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        if len(seen) < n:
            return True
    return False


def _canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    i = min(range(len(vertices)), key=vertices.__getitem__)
    return tuple(vertices[i:]) + tuple(vertices[:i])


def build(
    rotations: Sequence[Sequence[int]],
    outer: Sequence[int],
    colors: Sequence[int] | None = None,
) -> PlaneBipartiteGraph:
    """Validate a rotation system and trace its faces.

    ``outer`` is a dart ``(u, v)`` whose trace is the outer face. ``colors``
    overrides the default breadth-first coloring (vertex 0 white); it must be
    a proper coloring.
    """
    n = len(rotations)
    rot = tuple(tuple(int(w) for w in r) for r in rotations)
    if n < 3:
        raise NotTwoConnected(f"need at least 3 vertices, got {n}")
    for v, r in enumerate(rot):
        if len(set(r)) != len(r):
            raise BadRotation(f"vertex {v} lists a neighbour twice")
        for w in r:
            if not 0 <= w < n or w == v:
                raise BadRotation(f"vertex {v} has invalid neighbour {w}")
            if v not in rot[w]:
                raise BadRotation(f"{w} in rotation of {v} but not vice versa")

    edge_list: list[tuple[int, int]] = []
    known: set[tuple[int, int]] = set()
    for u, r in enumerate(rot):
        for w in r:
            key = (min(u, w), max(u, w))
            if key not in known:
                known.add(key)
                edge_list.append(key)

    reach = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in rot[x]:
            if y not in reach:
                reach.add(y)
                stack.append(y)
    if len(reach) != n:
        raise NotTwoConnected("graph is disconnected")

    if colors is None:
        col = [-1] * n
        col[0] = WHITE
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in rot[x]:
                if col[y] < 0:
                    col[y] = 1 - col[x]
                    queue.append(y)
        colors = col
    colors = tuple(int(c) for c in colors)
    if len(colors) != n or any(c not in (WHITE, BLACK) for c in colors):
        raise InputError("colors must give WHITE/BLACK for every vertex")
    for u, w in edge_list:
        if colors[u] == colors[w]:
            raise NotBipartite(f"edge {u}-{w} joins two vertices of the same color")

    if _has_cut_vertex(n, rot):
        raise NotTwoConnected("graph has a cut vertex")

    traces = _trace_faces(rot)
    if n - len(edge_list) + len(traces) != 2:
        raise BadRotation("rotation system is not planar (Euler characteristic != 2)")

    hint = (int(outer[0]), int(outer[1]))
    outer_idx = next((i for i, t in enumerate(traces) if hint in t), None)
    if outer_idx is None:
        raise InputError(f"outer hint {hint} is not a dart of the graph")

    faces: list[Face] = []
    edge_id = {}
    for i, (u, w) in enumerate(edge_list):
        edge_id[(u, w)] = edge_id[(w, u)] = i

    def make_face(fid: int, walk: list[tuple[int, int]], is_outer: bool) -> Face:
        verts = [a for a, _ in walk]
        if len(set(verts)) != len(verts):
            raise NotTwoConnected("a face boundary is not a simple cycle")
        if not is_outer:
            verts = verts[::-1]
        cyc = _canonical_cycle(verts)
        eids = tuple(edge_id[(cyc[j], cyc[(j + 1) % len(cyc)])] for j in range(len(cyc)))
        mask = 0
        for e in eids:
            mask |= 1 << e
        return Face(fid, cyc, eids, mask, is_outer)

    inner = [t for i, t in enumerate(traces) if i != outer_idx]
    for fid, walk in enumerate(inner):
        faces.append(make_face(fid, walk, False))
    faces.append(make_face(len(inner), traces[outer_idx], True))

    outer_face = faces[-1]
    if len(outer_face.cycle) != n:
        raise NotOuterplane(
            f"{n - len(outer_face.cycle)} vertices are not on the outer face"
        )
    for f in faces[:-1]:
        if len(f.cycle) % 2:
            raise OddInnerFace(f"inner face {f.id} has odd length {len(f.cycle)}")

    return PlaneBipartiteGraph(rot, tuple(edge_list), colors, tuple(faces), len(inner))


def mirror(g: PlaneBipartiteGraph) -> PlaneBipartiteGraph:
    """The mirror-image embedding: every rotation reversed."""
    o = g.outer.cycle
    return build([r[::-1] for r in g.rotations], (o[1], o[0]), g.colors)


_DOC_KEYS = {"vertices", "rotations", "outer"}


def from_document(doc: dict) -> PlaneBipartiteGraph:
    """Build from ``{"vertices": N, "rotations": [[...], ...], "outer": [u, v]}``."""
    if not isinstance(doc, dict):
        raise InputError("graph document must be a JSON object")
    extra = set(doc) - _DOC_KEYS
    if extra:
        raise InputError(f"unknown keys in graph document: {sorted(extra)}")
    missing = _DOC_KEYS - set(doc)
    if missing:
        raise InputError(f"missing keys in graph document: {sorted(missing)}")
    n = doc["vertices"]
    rotations = doc["rotations"]
    outer = doc["outer"]
    if not isinstance(n, int) or not isinstance(rotations, list) or len(rotations) != n:
        raise InputError("'rotations' must list one rotation per vertex")
    if not all(isinstance(r, list) and all(isinstance(w, int) for w in r) for r in rotations):
        raise InputError("each rotation must be a list of integers")
    if not (isinstance(outer, list) and len(outer) == 2 and all(isinstance(w, int) for w in outer)):
        raise InputError("'outer' must be a dart [u, v]")
    return build(rotations, outer)


def from_json(text: str) -> PlaneBipartiteGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def common_periphery(g: PlaneBipartiteGraph, s: int) -> CommonPeriphery | None:
    """Part of ``∂s`` shared with the outer face, as a clockwise path.

    Returns ``None`` when nothing is shared or the shared part is not a
    single path. When the whole boundary of ``s`` is shared (a graph with
    one inner face) the cycle is returned with ``whole_boundary=True``.
    """
    face = g.faces[s]
    if face.is_outer:
        raise ValueError("common_periphery expects an inner face")
    shared = set(face.edge_ids)
    darts = g.outer.darts
    on = [g.edge_id[d] in shared for d in darts]
    if all(on):
        verts = tuple(a for a, _ in darts) + (darts[0][0],)
        return CommonPeriphery(tuple(g.edge_id[d] for d in darts), verts, True)
    k = len(darts)
    starts = [i for i in range(k) if on[i] and not on[i - 1]]
    if len(starts) != 1:
        return None
    i = starts[0]
    path = []
    while on[i % k]:
        path.append(darts[i % k])
        i += 1
    return CommonPeriphery(
        tuple(g.edge_id[d] for d in path),
        tuple(a for a, _ in path) + (path[-1][1],),
    )


def edge_distance(g: PlaneBipartiteGraph, e: int, f: int) -> int:
    """Distance between edges ``e`` and ``f`` in the line graph of ``g``."""
    return int(g.line_distances[e, f])


@dataclass(frozen=True, eq=False)
class InnerDual:
    nodes: tuple[int, ...]
    shared: dict[tuple[int, int], tuple[int, ...]]

    @cached_property
    def graph(self) -> Graph:
        pos = {x: i for i, x in enumerate(self.nodes)}
        return Graph.from_edges(len(self.nodes), [(pos[a], pos[b]) for a, b in sorted(self.shared)])

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {x: [] for x in self.nodes}
        for a, b in self.shared:
            out[a].append(b)
            out[b].append(a)
        return {x: tuple(sorted(v)) for x, v in out.items()}

    def shared_edge(self, a: int, b: int) -> int:
        (e,) = self.shared[(min(a, b), max(a, b))]
        return e

    def degree(self, x: int) -> int:
        return len(self.neighbors[x])

    def three_paths(self) -> list[tuple[int, int, int]]:
        """Every 3-path ``(x, y, z)`` once, with ``x < z``."""
        out = []
        for y in self.nodes:
            nb = self.neighbors[y]
            for i, x in enumerate(nb):
                for z in nb[i + 1:]:
                    out.append((x, y, z))
        return sorted(out, key=lambda t: (t[1], t[0], t[2]))

    def is_tree(self) -> bool:
        return self.graph.is_tree()


def inner_dual(g: PlaneBipartiteGraph) -> InnerDual:
    owners: dict[int, list[int]] = {}
    for f in g.inner_faces:
        for e in f.edge_ids:
            owners.setdefault(e, []).append(f.id)
    shared: dict[tuple[int, int], list[int]] = {}
    for e, fs in sorted(owners.items()):
        if len(fs) == 2:
            a, b = sorted(fs)
            shared.setdefault((a, b), []).append(e)
    for (a, b), es in shared.items():
        if len(es) > 1:
            raise SharedEdgeMultiplicity(f"inner faces {a} and {b} share {len(es)} edges")
    dual = InnerDual(tuple(f.id for f in g.inner_faces), {k: tuple(v) for k, v in shared.items()})
    if not dual.is_tree():
        raise InternalInvariantViolation("inner dual of an accepted graph is not a tree")
    return dual


@dataclass(frozen=True, eq=False)
class SubEmbedding:
    """A 2-connected piece of a parent graph with its inherited embedding and colors."""

    graph: PlaneBipartiteGraph
    vertex_map: tuple[int, ...]  # sub vertex -> parent vertex
    edge_map: tuple[int, ...]  # sub edge id -> parent edge id
    parent_faces: dict[frozenset[int], int]  # parent inner face edge set -> face id

    def lift(self, mask: int) -> int:
        out = 0
        for i, e in enumerate(self.edge_map):
            if mask >> i & 1:
                out |= 1 << e
        return out

    @cached_property
    def parent_edge_index(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.edge_map)}

    def lower(self, mask: int) -> int:
        """Restrict a parent edge mask to this piece (edges outside are dropped)."""
        out = 0
        for e, i in self.parent_edge_index.items():
            if mask >> e & 1:
                out |= 1 << i
        return out

    @cached_property
    def face_map(self) -> dict[int, int]:
        """Sub inner face id -> parent inner face id with the same boundary."""
        out = {}
        for f in self.graph.inner_faces:
            key = frozenset(self.edge_map[e] for e in f.edge_ids)
            if key in self.parent_faces:
                out[f.id] = self.parent_faces[key]
        return out


def restrict(g: PlaneBipartiteGraph, edge_ids: Iterable[int]) -> SubEmbedding:
    """Sub-embedding spanned by ``edge_ids``; must be 2-connected.

    Vertices are renumbered in ascending parent order and keep their parent
    colors. The outer face is the face that absorbs the parent's outer face.
    """
    keep_edges = sorted(set(edge_ids))
    keep_set = set(keep_edges)
    verts = sorted({x for e in keep_edges for x in g.edges[e]})
    pos = {v: i for i, v in enumerate(verts)}
    rotations = []
    for v in verts:
        rotations.append([pos[w] for w in g.rotations[v] if g.edge_id[(v, w)] in keep_set])

    # parent faces merge across every dropped edge
    parent = list(range(len(g.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in enumerate(g.edges):
        if e not in keep_set:
            parent[find(g.dart_face[(a, b)])] = find(g.dart_face[(b, a)])
    outer_class = find(g.outer_face)
    hint = None
    for e in keep_edges:
        a, b = g.edges[e]
        for d in ((a, b), (b, a)):
            if find(g.dart_face[d]) == outer_class:
                hint = (pos[d[0]], pos[d[1]])
                break
        if hint:
            break
    if hint is None:
        raise InternalInvariantViolation("restricted graph has no dart on the outer face")

    sub = build(rotations, hint, [g.colors[v] for v in verts])
    edge_map = tuple(g.edge_id[(verts[u], verts[w])] for u, w in sub.edges)
    parent_faces = {frozenset(f.edge_ids): f.id for f in g.inner_faces}
    return SubEmbedding(sub, tuple(verts), edge_map, parent_faces)
