"""Three independent ways of deciding whether two resonance graphs are isomorphic.

* :func:`graph_iso` -- backtracking search on the resonance graphs themselves.
* :func:`digraph_iso_modulo_coloring` -- search on resonance digraphs, allowing
  the other coloring of the second graph (which reverses all its arcs).
* :func:`fast_iso` -- isomorphism of inner duals that preserves the parity
  flags of adjacent face triples; never touches a matching.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Mapping, Sequence

from .decomposition import Rfd, rfd
from .errors import DisagreementDetected, NoReducibleFace, SearchBudgetExceeded
from .graphs import Digraph, Graph
from .matching import DEFAULT_CAP
from .plane_graph import InnerDual, PlaneBipartiteGraph, edge_distance, inner_dual
from .resonance import ResonanceDigraph, ResonanceGraph, build_resonance, orient

DEFAULT_BUDGET = 2_000_000
MAX_VERTICES = 5_000


class Answer(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"


@dataclass(frozen=True)
class IsoVerdict:
    answer: Answer
    method: str
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.answer is Answer.ISOMORPHIC

    def to_document(self) -> dict:
        doc: dict = {"answer": self.answer.value, "method": self.method}
        if self.witness is not None:
            w = self.witness
            doc["witness"] = {str(k): v for k, v in sorted(w.items())} if isinstance(w, dict) else list(w)
        if self.detail:
            doc.update(self.detail)
        return doc


def _no(method: str, why: str) -> IsoVerdict:
    return IsoVerdict(Answer.NOT_ISOMORPHIC, method, None, {"reason": why})


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------


def _theta_star_profile(g: Graph) -> list[tuple[int, ...]]:
    """Per vertex, the sorted sizes of the Θ*-classes of its incident edges."""
    m = len(g.edges)
    d = g.distances.tolist()
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        u, v, _ = g.edges[i]
        du, dv = d[u], d[v]
        for j in range(i + 1, m):
            x, y, _ = g.edges[j]
            if du[x] + dv[y] != du[y] + dv[x]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    size = Counter(find(i) for i in range(m))
    prof: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v, _) in enumerate(g.edges):
        s = size[find(i)]
        prof[u].append(s)
        prof[v].append(s)
    return [tuple(sorted(p)) for p in prof]


def _initial_colors(g: Graph | Digraph, use_theta: bool) -> list[tuple]:
    und = g.underlying() if isinstance(g, Digraph) else g
    d = und.distances
    cols = []
    prof = _theta_star_profile(und) if use_theta else None
    for v in range(g.n):
        hist = tuple(sorted(Counter(d[v].tolist()).items()))
        c: tuple = (und.degree(v), hist)
        if isinstance(g, Digraph):
            c += (len(g.succ[v]), len(g.pred[v]))
        if prof is not None:
            c += (prof[v],)
        cols.append(c)
    return cols


def _refine(ga, gb, ca: list, cb: list) -> tuple[list[int], list[int]] | None:
    """Joint colour refinement; ``None`` as soon as the colour histograms differ."""
    directed = isinstance(ga, Digraph)

    def step(g, cols):
        out = []
        for v in range(g.n):
            if directed:
                sig = (cols[v], tuple(sorted(cols[w] for w in g.succ[v])),
                       tuple(sorted(cols[w] for w in g.pred[v])))
            else:
                sig = (cols[v], tuple(sorted(cols[w] for w in g.adj[v])))
            out.append(sig)
        return out

    palette: dict = {}
    ia = [palette.setdefault(c, len(palette)) for c in ca]
    ib = [palette.setdefault(c, len(palette)) for c in cb]
    while True:
        if Counter(ia) != Counter(ib):
            return None
        na, nb = step(ga, ia), step(gb, ib)
        palette = {}
        ja = [palette.setdefault(c, len(palette)) for c in na]
        jb = [palette.setdefault(c, len(palette)) for c in nb]
        if len(set(ja)) == len(set(ia)):
            if Counter(ja) != Counter(jb):
                return None
            return ja, jb
        ia, ib = ja, jb


def _verify_mapping(a, b, phi: list[int]) -> bool:
    if sorted(phi) != list(range(b.n)):
        return False
    if isinstance(a, Digraph):
        return len(a.arcs) == len(b.arcs) and all((phi[u], phi[v]) in b.arc_set for u, v, _ in a.arcs)
    return len(a.edges) == len(b.edges) and all(b.has_edge(phi[u], phi[v]) for u, v, _ in a.edges)


def _search(a, b, method: str, budget: int, use_theta: bool) -> IsoVerdict:
    if a.n != b.n:
        return _no(method, f"vertex counts differ ({a.n} vs {b.n})")
    if a.n > MAX_VERTICES:
        raise SearchBudgetExceeded(f"{a.n} vertices exceeds the bound of {MAX_VERTICES}")
    directed = isinstance(a, Digraph)
    ea = a.arcs if directed else a.edges
    eb = b.arcs if directed else b.edges
    if len(ea) != len(eb):
        return _no(method, f"edge counts differ ({len(ea)} vs {len(eb)})")
    if a.n == 0:
        return IsoVerdict(Answer.ISOMORPHIC, method, [])
    refined = _refine(a, b, _initial_colors(a, use_theta), _initial_colors(b, use_theta))
    if refined is None:
        return _no(method, "vertex invariants differ")
    ca, cb = refined

    if directed:
        nb_a = [set(a.succ[v]) | set(a.pred[v]) for v in range(a.n)]
        succ_a, succ_b = [set(x) for x in a.succ], [set(x) for x in b.succ]
    else:
        nb_a = [set(x) for x in a.adj]
    by_color: dict[int, list[int]] = {}
    for v in range(b.n):
        by_color.setdefault(cb[v], []).append(v)

    # visit a's vertices rarest colour first, then breadth-first
    freq = Counter(ca)
    order: list[int] = []
    placed = [False] * a.n
    while len(order) < a.n:
        start = min((v for v in range(a.n) if not placed[v]), key=lambda v: (freq[ca[v]], v))
        placed[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(nb_a[x], key=lambda v: (freq[ca[v]], v)):
                if not placed[y]:
                    placed[y] = True
                    queue.append(y)

    phi = [-1] * a.n
    used = [False] * b.n
    nodes = 0

    def consistent(x: int, y: int, k: int) -> bool:
        for i in range(k):
            u = order[i]
            w = phi[u]
            if directed:
                if (u in succ_a[x]) != (w in succ_b[y]) or (x in succ_a[u]) != (y in succ_b[w]):
                    return False
            elif a.has_edge(x, u) != b.has_edge(y, w):
                return False
        return True

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == a.n:
            return True
        x = order[k]
        for y in by_color[ca[x]]:
            if used[y]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"more than {budget} search nodes")
            if consistent(x, y, k):
                phi[x] = y
                used[y] = True
                if rec(k + 1):
                    return True
                used[y] = False
                phi[x] = -1
        return False

    if not rec(0):
        return _no(method, "exhaustive search found no isomorphism")
    if not _verify_mapping(a, b, phi):
        raise AssertionError("search produced a mapping that is not an isomorphism")
    return IsoVerdict(Answer.ISOMORPHIC, method, list(phi), {"search_nodes": nodes})


def graph_iso(a: Graph, b: Graph, budget: int = DEFAULT_BUDGET) -> IsoVerdict:
    """Backtracking isomorphism test with invariant pruning; witness maps ``a``'s vertices."""
    use_theta = isinstance(a, ResonanceGraph) and isinstance(b, ResonanceGraph)
    return _search(a, b, "graph", budget, use_theta)


def digraph_iso(a: Digraph, b: Digraph, budget: int = DEFAULT_BUDGET) -> IsoVerdict:
    return _search(a, b, "digraph", budget, False)


def digraph_iso_modulo_coloring(
    d1: ResonanceDigraph, d2: ResonanceDigraph, budget: int = DEFAULT_BUDGET
) -> IsoVerdict:
    """``d1`` against ``d2`` and against ``d2`` reversed (the other coloring of its graph)."""
    direct = digraph_iso(d1, d2, budget)
    if direct:
        return IsoVerdict(Answer.ISOMORPHIC, "digraph", direct.witness, {"coloring": "same"})
    rev = digraph_iso(d1, d2.reverse(), budget)
    if rev:
        return IsoVerdict(Answer.ISOMORPHIC, "digraph", rev.witness, {"coloring": "swapped"})
    return _no("digraph", rev.detail.get("reason", "no isomorphism"))


# ---------------------------------------------------------------------------
# inner duals with triple regularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TripleFlag:
    regular: bool
    e: int  # edge shared by the first two faces
    f: int  # edge shared by the last two faces
    distance: int


@dataclass(frozen=True)
class RegularitySignature:
    triples: Mapping[tuple[int, int, int], TripleFlag]

    def flag(self, x: int, y: int, z: int) -> TripleFlag:
        return self.triples[(x, y, z)] if x < z else self.triples[(z, y, x)]

    def regular(self, x: int, y: int, z: int) -> bool:
        return self.flag(x, y, z).regular

    def __len__(self) -> int:
        return len(self.triples)

    def to_document(self) -> list[dict]:
        return [
            {"triple": list(k), "regular": t.regular, "e": t.e, "f": t.f, "distance": t.distance}
            for k, t in sorted(self.triples.items())
        ]


def regularity_signature(g: PlaneBipartiteGraph, dual: InnerDual | None = None) -> RegularitySignature:
    dual = inner_dual(g) if dual is None else dual
    out = {}
    for x, y, z in dual.three_paths():
        e, f = dual.shared_edge(x, y), dual.shared_edge(y, z)
        d = edge_distance(g, e, f)
        out[(x, y, z)] = TripleFlag(d % 2 == 0, e, f, d)
    return RegularitySignature(out)


def _centroids(dual: InnerDual) -> list[int]:
    nodes = dual.nodes
    n = len(nodes)
    best, out = n + 1, []
    for v in nodes:
        # largest component of the tree minus v
        worst = 0
        for w in dual.neighbors[v]:
            seen = {v, w}
            stack = [w]
            while stack:
                x = stack.pop()
                for y in dual.neighbors[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            worst = max(worst, len(seen) - 1)
        if worst < best:
            best, out = worst, [v]
        elif worst == best:
            out.append(v)
    return out


def verify_dual_isomorphism(
    t1: InnerDual, s1: RegularitySignature, t2: InnerDual, s2: RegularitySignature, alpha: Mapping[int, int]
) -> bool:
    if sorted(alpha) != sorted(t1.nodes) or sorted(alpha.values()) != sorted(t2.nodes):
        return False
    mapped = {tuple(sorted((alpha[a], alpha[b]))) for a, b in t1.shared}
    if mapped != set(t2.shared):
        return False
    return all(
        s1.regular(x, y, z) == s2.regular(alpha[x], alpha[y], alpha[z]) for x, y, z in t1.three_paths()
    )


def _tree_matcher(t1: InnerDual, s1: RegularitySignature, t2: InnerDual, s2: RegularitySignature):
    def children(t: InnerDual, y: int, p: int | None) -> tuple[int, ...]:
        return tuple(c for c in t.neighbors[y] if c != p)

    def pflag(s: RegularitySignature, p: int | None, y: int, c: int):
        return None if p is None else s.regular(p, y, c)

    @lru_cache(maxsize=None)
    def canon1(y: int, p: int | None) -> tuple:
        return tuple(sorted((pflag(s1, p, y, c), canon1(c, y)) for c in children(t1, y, p)))

    @lru_cache(maxsize=None)
    def canon2(y: int, p: int | None) -> tuple:
        return tuple(sorted((pflag(s2, p, y, c), canon2(c, y)) for c in children(t2, y, p)))

    def keys(t, s, canon, y, p):
        ch = children(t, y, p)
        base = {c: (pflag(s, p, y, c), canon(c, y)) for c in ch}
        return {
            c: (base[c], tuple(sorted((s.regular(c, y, o), base[o]) for o in ch if o != c)))
            for c in ch
        }

    @lru_cache(maxsize=None)
    def match(y1: int, p1: int | None, y2: int, p2: int | None):
        ch1, ch2 = children(t1, y1, p1), children(t2, y2, p2)
        if len(ch1) != len(ch2) or canon1(y1, p1) != canon2(y2, p2):
            return None
        k1, k2 = keys(t1, s1, canon1, y1, p1), keys(t2, s2, canon2, y2, p2)
        if sorted(k1.values()) != sorted(k2.values()):
            return None
        assign: dict[int, int] = {}
        sub: dict[int, dict] = {}

        def rec(i: int) -> bool:
            if i == len(ch1):
                return True
            c1 = ch1[i]
            for c2 in ch2:
                if c2 in assign.values() or k2[c2] != k1[c1]:
                    continue
                if any(s1.regular(o1, y1, c1) != s2.regular(o2, y2, c2) for o1, o2 in assign.items()):
                    continue
                m = match(c1, y1, c2, y2)
                if m is None:
                    continue
                assign[c1] = c2
                sub[c1] = m
                if rec(i + 1):
                    return True
                del assign[c1]
                del sub[c1]
            return False

        if not rec(0):
            return None
        out = {y1: y2}
        for m in sub.values():
            out.update(m)
        return out

    return match


def _fast_iso(t1: InnerDual, s1: RegularitySignature, t2: InnerDual, s2: RegularitySignature) -> IsoVerdict:
    if len(t1.nodes) != len(t2.nodes):
        return _no("fast", f"inner face counts differ ({len(t1.nodes)} vs {len(t2.nodes)})")
    c1, c2 = _centroids(t1), _centroids(t2)
    if len(c1) != len(c2):
        return _no("fast", "inner duals are not isomorphic")
    match = _tree_matcher(t1, s1, t2, s2)
    for r2 in c2:
        alpha = match(c1[0], None, r2, None)
        if alpha is not None:
            if not verify_dual_isomorphism(t1, s1, t2, s2, alpha):
                raise AssertionError("tree search produced an invalid witness")
            return IsoVerdict(Answer.ISOMORPHIC, "fast", dict(sorted(alpha.items())))
    return _no("fast", "no inner dual isomorphism preserves triple regularity")


def fast_iso(g1: PlaneBipartiteGraph, g2: PlaneBipartiteGraph) -> IsoVerdict:
    """Regularity-preserving isomorphism between the inner duals; witness is the face map."""
    t1, t2 = inner_dual(g1), inner_dual(g2)
    return _fast_iso(t1, regularity_signature(g1, t1), t2, regularity_signature(g2, t2))


# ---------------------------------------------------------------------------
# cross-check
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class Prepared:
    """Per-graph data reused across many comparisons."""

    graph: PlaneBipartiteGraph
    resonance: ResonanceGraph
    digraph: ResonanceDigraph
    _rfds: dict = field(default_factory=dict, repr=False)

    @classmethod
    def of(cls, g: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> "Prepared":
        r = build_resonance(g, cap)
        return cls(g, r, orient(g, r))

    @cached_property
    def dual(self) -> InnerDual:
        return inner_dual(self.graph)

    @cached_property
    def signature(self) -> RegularitySignature:
        return regularity_signature(self.graph, self.dual)

    def decomposition(self, order: Sequence[int] | None = None) -> Rfd:
        key = None if order is None else tuple(order)
        if key not in self._rfds:
            self._rfds[key] = rfd(self.graph, order)
        return self._rfds[key]


def aligned_rfd_report(p1: Prepared, p2: Prepared, alpha: Mapping[int, int], budget: int = DEFAULT_BUDGET) -> dict:
    """Decompositions of both graphs aligned through ``alpha`` and their ear colors.

    Tries the other coloring of the second graph as well, and for the
    coloring that matches the ear colors checks that the resonance digraphs
    (built with those colorings) are isomorphic without any reversal.
    """
    g2 = p2.graph
    d1 = p1.decomposition()
    try:
        d2 = p2.decomposition([alpha[f] for f in d1.faces])
    except NoReducibleFace as exc:
        return {"aligned_rfd": False, "reason": str(exc), "ear_colors_match": False,
                "digraphs_match": False}
    sig1 = d1.signature(p1.graph.colors)
    report = {"aligned_rfd": True, "rfd_faces": [d1.faces, d2.faces],
              "ear_colors_match": False, "digraphs_match": False}
    for name, colors in (("same", g2.colors), ("swapped", g2.swapped_colors())):
        if d2.signature(colors)[1:] == sig1[1:]:
            report["ear_colors_match"] = True
            report["coloring"] = name
            dg2 = p2.digraph if name == "same" else p2.digraph.reverse()
            report["digraphs_match"] = bool(digraph_iso(p1.digraph, dg2, budget))
            break
    return report


def cross_check(
    g1: PlaneBipartiteGraph | Prepared,
    g2: PlaneBipartiteGraph | Prepared,
    cap: int = DEFAULT_CAP,
    budget: int = DEFAULT_BUDGET,
    raise_on_disagreement: bool = True,
) -> dict:
    """Run all three deciders, require agreement, and certify the decomposition properties."""
    p1 = g1 if isinstance(g1, Prepared) else Prepared.of(g1, cap)
    p2 = g2 if isinstance(g2, Prepared) else Prepared.of(g2, cap)
    fast = _fast_iso(p1.dual, p1.signature, p2.dual, p2.signature)
    brute = graph_iso(p1.resonance, p2.resonance, budget)
    di = digraph_iso_modulo_coloring(p1.digraph, p2.digraph, budget)
    answers = {"fast": fast.answer.value, "graph": brute.answer.value, "digraph": di.answer.value}
    report: dict = {
        "answer": fast.answer.value,
        "agree": len(set(answers.values())) == 1,
        "methods": answers,
    }
    if fast:
        report["witness"] = {str(k): v for k, v in fast.witness.items()}
        report["decomposition"] = aligned_rfd_report(p1, p2, fast.witness, budget)
        if not (report["decomposition"]["ear_colors_match"] and report["decomposition"]["digraphs_match"]):
            report["agree"] = False
    if not report["agree"] and raise_on_disagreement:
        bundle = {
            "g1": p1.graph.to_document(),
            "g2": p2.graph.to_document(),
            "report": report,
            "r1_edges": [list(e) for e in p1.resonance.edges],
            "r2_edges": [list(e) for e in p2.resonance.edges],
        }
        raise DisagreementDetected(f"deciders disagree: {answers}", bundle)
    return report
