"""Command line: generate, analyze, compare, verify, export.

Exit codes: 0 success, 1 bad input or usage, 2 a check failed or the
deciders disagreed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .comparator import Prepared, cross_check, regularity_signature
from .decomposition import (
    extremal_lift_report,
    face_structure_report,
    find_reducible_faces,
    rebuild_resonance,
    rfd,
    same_resonance_graph,
)
from .errors import CapExceeded, DisagreementDetected, InputError, ResonanceError
from .generators import (
    ChainSpec,
    chain_specs,
    even_ring_chain,
    fibonaccene,
    linear_chain,
    random_chain_spec,
)
from .graphs import is_median_graph
from .matching import DEFAULT_CAP, extremal_matchings, mask_edges
from .plane_graph import PlaneBipartiteGraph, from_json, inner_dual
from .resonance import ResonanceGraph, build_resonance, orient, to_document, to_dot
from .theta import matches_inner_dual, theta_classes, theta_graph

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2
MEDIAN_LIMIT = 200


@dataclass
class AnalysisReport:
    counts: dict
    extremal: dict
    theta: list
    inner_dual: dict
    regularity: list
    rfd: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_document(self) -> dict:
        return {
            "counts": self.counts,
            "extremal": self.extremal,
            "theta_classes": self.theta,
            "inner_dual": self.inner_dual,
            "regularity": self.regularity,
            "rfd": self.rfd,
            "checks": self.checks,
            "ok": self.ok,
        }


def _check(checks: list, name: str, passed: bool, **detail) -> None:
    entry = {"check": name, "pass": bool(passed)}
    entry.update(detail)
    checks.append(entry)


def analyze(g: PlaneBipartiteGraph, cap: int = DEFAULT_CAP, r: ResonanceGraph | None = None) -> AnalysisReport:
    r = build_resonance(g, cap) if r is None else r
    d = orient(g, r)
    dual = inner_dual(g)
    checks: list = []

    lo, hi = extremal_matchings(g)
    src, snk = d.sources(), d.sinks()
    _check(
        checks,
        "digraph_unique_source_and_sink_are_extremal",
        src == [r.index_of(lo)] and snk == [r.index_of(hi)],
        sources=src,
        sinks=snk,
    )
    _check(checks, "digraph_acyclic", d.is_acyclic())

    theta_rows: list = []
    try:
        tc = theta_classes(r)
        theta_rows = [
            {"class": k, "face": tc.labels[k], "size": len(c)} for k, c in enumerate(tc.classes)
        ]
        _check(checks, "theta_classes_have_constant_face_labels", True)
        _check(checks, "theta_classes_cover_each_face_once", sorted(tc.labels) == sorted(dual.nodes))
        tg = theta_graph(r, tc)
        _check(checks, "theta_graph_is_inner_dual", matches_inner_dual(tg, dual))
    except ResonanceError as exc:
        tc = None
        _check(checks, "theta_structure", False, error=str(exc))

    decomposition = rfd(g)
    rebuilt = rebuild_resonance(g, decomposition)
    _check(checks, "pce_rebuild_equals_resonance_graph", same_resonance_graph(rebuilt, r))

    for s in find_reducible_faces(g) if len(g.inner_faces) > 1 else []:
        lift = extremal_lift_report(g, s, r)
        _check(checks, f"extremal_lift_face_{s}", lift["ok"], case=lift["case"])
        if tc is not None:
            fs = face_structure_report(g, s, r, tc.edge_class)
            _check(checks, f"face_{s}_flip_structure", fs["ok"],
                   failed=[k for k, v in fs.items() if k != "ok" and not v])

    if r.n <= MEDIAN_LIMIT:
        _check(checks, "median_graph", is_median_graph(r))

    return AnalysisReport(
        counts={
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "inner_faces": len(g.inner_faces),
            "matchings": r.n,
            "resonance_edges": len(r.edges),
        },
        extremal={
            "min": r.index_of(lo),
            "max": r.index_of(hi),
            "min_edges": mask_edges(lo),
            "max_edges": mask_edges(hi),
        },
        theta=theta_rows,
        inner_dual={"nodes": list(dual.nodes), "edges": [list(e) for e in dual.shared]},
        regularity=regularity_signature(g, dual).to_document(),
        rfd=decomposition.to_document(),
        checks=checks,
    )


def verify(specs: Sequence[ChainSpec], cap: int = DEFAULT_CAP) -> dict:
    """Analyze every spec and cross-check every ordered pair."""
    preps = [Prepared.of(even_ring_chain(s), cap) for s in specs]
    failures = []
    for spec, p in zip(specs, preps):
        rep = analyze(p.graph, cap, p.resonance)
        if not rep.ok:
            failures.append({"spec": _spec_doc(spec), "failed": [c["check"] for c in rep.checks if not c["pass"]]})
    verdicts = {"Isomorphic": 0, "NotIsomorphic": 0}
    disagreements = []
    for (i, a), (j, b) in itertools.product(enumerate(preps), repeat=2):
        rep = cross_check(a, b, cap, raise_on_disagreement=False)
        verdicts[rep["answer"]] += 1
        if not rep["agree"]:
            disagreements.append({"pair": [_spec_doc(specs[i]), _spec_doc(specs[j])], "report": rep})
    return {
        "graphs": len(specs),
        "pairs": len(preps) ** 2,
        "verdicts": verdicts,
        "graph_failures": failures,
        "disagreements": disagreements,
        "ok": not failures and not disagreements,
    }


def _spec_doc(spec: ChainSpec) -> dict:
    return {"sizes": list(spec.sizes), "offsets": list(spec.offsets)}


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _read_graph(path: str) -> PlaneBipartiteGraph:
    if path == "-":
        return from_json(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _cmd_generate(args) -> int:
    if args.family == "linear":
        g = linear_chain(args.n)
    elif args.family == "fibonaccene":
        g = fibonaccene(args.n)
    elif args.family == "chain":
        if not args.sizes:
            raise InputError("--sizes is required for the chain family")
        g = even_ring_chain(ChainSpec(tuple(args.sizes), tuple(args.offsets or ())))
    else:
        g = even_ring_chain(random_chain_spec(args.n, args.sizes or [6], args.seed))
    _emit(g.to_document())
    return EXIT_OK


def _cmd_analyze(args) -> int:
    rep = analyze(_read_graph(args.graph), args.cap)
    _emit(rep.to_document())
    return EXIT_OK if rep.ok else EXIT_FAILED


def _cmd_compare(args) -> int:
    g1, g2 = _read_graph(args.first), _read_graph(args.second)
    try:
        rep = cross_check(g1, g2, args.cap)
    except DisagreementDetected as exc:
        _emit({"error": str(exc), "bundle": exc.bundle})
        return EXIT_FAILED
    _emit(rep)
    return EXIT_OK


def _cmd_verify(args) -> int:
    specs = list(chain_specs(args.rings, args.sizes or [6], args.offsets or None))
    rep = verify(specs, args.cap)
    _emit(rep)
    return EXIT_OK if rep["ok"] else EXIT_FAILED


def _cmd_export(args) -> int:
    g = _read_graph(args.graph)
    if args.what == "graph":
        if args.format == "dot":
            raise InputError("the plane graph is exported as JSON only")
        _emit(g.to_document())
        return EXIT_OK
    r = build_resonance(g, args.cap)
    obj = r if args.what == "resonance" else orient(g, r)
    if args.format == "dot":
        sys.stdout.write(to_dot(obj))
    else:
        _emit(to_document(obj))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="resonance-iso", description="Resonance graphs of outerplane bipartite graphs.")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of perfect matchings")
    p.add_argument("--seed", type=int, default=0, help="seed for random generation")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="emit a graph in JSON")
    gen.add_argument("--family", choices=["linear", "fibonaccene", "chain", "random"], required=True)
    gen.add_argument("--n", type=int, default=3, help="number of rings")
    gen.add_argument("--sizes", type=_ints, help="ring sizes, e.g. 6,8,6")
    gen.add_argument("--offsets", type=_ints, help="offsets of the internal rings")
    gen.set_defaults(func=_cmd_generate)

    an = sub.add_parser("analyze", help="full report for one graph")
    an.add_argument("graph", help="JSON file, or - for stdin")
    an.set_defaults(func=_cmd_analyze)

    cmp_ = sub.add_parser("compare", help="decide whether two resonance graphs are isomorphic")
    cmp_.add_argument("first")
    cmp_.add_argument("second")
    cmp_.set_defaults(func=_cmd_compare)

    ver = sub.add_parser("verify", help="run every check over a chain corpus")
    ver.add_argument("--rings", type=int, default=3)
    ver.add_argument("--sizes", type=_ints, help="ring sizes (default 6)")
    ver.add_argument("--offsets", type=_ints, help="allowed offsets (default all)")
    ver.set_defaults(func=_cmd_verify)

    ex = sub.add_parser("export", help="export the graph, R or the oriented R")
    ex.add_argument("graph")
    ex.add_argument("--what", choices=["graph", "resonance", "digraph"], default="resonance")
    ex.add_argument("--format", choices=["json", "dot"], default="json")
    ex.set_defaults(func=_cmd_export)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, CapExceeded, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except DisagreementDetected as exc:
        sys.stderr.write(f"disagreement: {exc}\n")
        return EXIT_FAILED
    except ResonanceError as exc:
        sys.stderr.write(f"check failed: {exc}\n")
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())
