"""Resonance graphs of 2-connected outerplane bipartite graphs and their isomorphism."""

from .comparator import (
    Answer,
    IsoVerdict,
    cross_check,
    digraph_iso_modulo_coloring,
    fast_iso,
    graph_iso,
    regularity_signature,
)
from .decomposition import find_reducible_faces, pce, rebuild_resonance, rfd
from .errors import DisagreementDetected, InputError, ResonanceError
from .generators import (
    ChainSpec,
    even_ring_chain,
    fibonacci_cube,
    fibonaccene,
    linear_chain,
    random_chain,
)
from .graphs import Digraph, Graph
from .matching import enumerate_matchings, extremal_matchings
from .plane_graph import PlaneBipartiteGraph, build, from_json, inner_dual
from .resonance import ResonanceDigraph, ResonanceGraph, build_resonance, orient
from .theta import theta_classes, theta_graph

__all__ = [
    "Answer", "IsoVerdict", "cross_check", "digraph_iso_modulo_coloring", "fast_iso", "graph_iso",
    "regularity_signature", "find_reducible_faces", "pce", "rebuild_resonance", "rfd",
    "DisagreementDetected", "InputError", "ResonanceError", "ChainSpec", "even_ring_chain",
    "fibonacci_cube", "fibonaccene", "linear_chain", "random_chain", "Digraph", "Graph",
    "enumerate_matchings", "extremal_matchings", "PlaneBipartiteGraph", "build", "from_json",
    "inner_dual", "ResonanceDigraph", "ResonanceGraph", "build_resonance", "orient",
    "theta_classes", "theta_graph",
]
