"""Example families: ring chains, hexagonal chains, Fibonacci cubes.

Chains are grown ring by ring on an outer cycle kept in counterclockwise
order. A new ring of size ``m`` is fused onto an outer edge ``(a, b)`` of
the previous ring by inserting ``m - 2`` fresh vertices between ``a`` and
``b``; the old edge becomes the shared edge. All vertices end up in convex
position with non-crossing chords, which gives the rotation system.

The offset of an internal ring is the position (``1..m-1``) of the edge the
next ring is fused onto, counted counterclockwise along the ring's outer
path from the edge it shares with its predecessor. On a hexagon offset 3 is
a linear annelation, offsets 2 and 4 are angular ones.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InvalidSpec
from .graphs import Graph
from .plane_graph import PlaneBipartiteGraph, build

LINEAR = 3
ANGULAR = (2, 4)


@dataclass(frozen=True)
class ChainSpec:
    sizes: tuple[int, ...]
    offsets: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "offsets", tuple(self.offsets))

    def validate(self) -> None:
        if not self.sizes:
            raise InvalidSpec("a chain needs at least one ring")
        for m in self.sizes:
            if m < 4 or m % 2:
                raise InvalidSpec(f"ring size {m} is not an even number >= 4")
        if len(self.offsets) != max(0, len(self.sizes) - 2):
            raise InvalidSpec(
                f"{len(self.sizes)} rings need {max(0, len(self.sizes) - 2)} offsets, "
                f"got {len(self.offsets)}"
            )
        for m, j in zip(self.sizes[1:-1], self.offsets):
            if not 1 <= j <= m - 1:
                raise InvalidSpec(f"offset {j} out of range for a ring of size {m}")


def _convex_embedding(n: int, edges: Iterable[tuple[int, int]]) -> PlaneBipartiteGraph:
    """Vertices ``0..n-1`` counterclockwise on a circle, edges drawn straight."""
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    # clockwise around v = decreasing counterclockwise offset
    rotations = [sorted(nbrs[v], key=lambda w, v=v: -((w - v) % n)) for v in range(n)]
    return build(rotations, (1, 0))


def even_ring_chain(spec: ChainSpec) -> PlaneBipartiteGraph:
    spec.validate()
    m0 = spec.sizes[0]
    outer = list(range(m0))
    edges = [(i, (i + 1) % m0) for i in range(m0)]
    next_id = m0
    a, b = outer[0], outer[1]
    for k, m in enumerate(spec.sizes[1:], start=1):
        fresh = list(range(next_id, next_id + m - 2))
        next_id += m - 2
        at = outer.index(a)
        outer[at + 1:at + 1] = fresh
        path = [a, *fresh, b]
        edges.extend(zip(path, path[1:]))
        if k < len(spec.sizes) - 1:
            j = spec.offsets[k - 1]
            a, b = path[j - 1], path[j]
    relabel = {v: i for i, v in enumerate(outer)}
    return _convex_embedding(len(outer), [(relabel[u], relabel[v]) for u, v in edges])


def linear_chain(n: int) -> PlaneBipartiteGraph:
    if n < 1:
        raise InvalidSpec("need at least one hexagon")
    return even_ring_chain(ChainSpec((6,) * n, (LINEAR,) * max(0, n - 2)))


def fibonaccene(n: int) -> PlaneBipartiteGraph:
    """All-angular hexagonal chain (zigzag: offsets alternate 2, 4)."""
    if n < 1:
        raise InvalidSpec("need at least one hexagon")
    offsets = tuple(ANGULAR[i % 2] for i in range(max(0, n - 2)))
    return even_ring_chain(ChainSpec((6,) * n, offsets))


def hexagonal_chain(offsets: Sequence[int]) -> PlaneBipartiteGraph:
    return even_ring_chain(ChainSpec((6,) * (len(offsets) + 2), tuple(offsets)))


def chain_specs(
    max_rings: int, sizes: Iterable[int], offsets: Sequence[int] | None = None
) -> Iterator[ChainSpec]:
    """Every chain spec with 1..max_rings rings from ``sizes``.

    Internal rings take every offset in ``offsets`` that fits, or all
    offsets ``1..m-1`` when ``offsets`` is None.
    """
    sizes = sorted(set(sizes))
    for k in range(1, max_rings + 1):
        for ring_sizes in itertools.product(sizes, repeat=k):
            choices = [
                [j for j in (offsets or range(1, m)) if 1 <= j <= m - 1]
                for m in ring_sizes[1:-1]
            ]
            for offs in itertools.product(*choices):
                yield ChainSpec(ring_sizes, offs)


def hexagonal_chain_specs(max_rings: int) -> Iterator[ChainSpec]:
    """Hexagonal chains with only linear or angular annelations."""
    return chain_specs(max_rings, [6], (2, 3, 4))


def random_chain(ring_count: int, ring_size_pool: Iterable[int], seed: int) -> PlaneBipartiteGraph:
    return even_ring_chain(random_chain_spec(ring_count, ring_size_pool, seed))


def random_chain_spec(ring_count: int, ring_size_pool: Iterable[int], seed: int) -> ChainSpec:
    pool = sorted(set(ring_size_pool))
    if ring_count < 1 or not pool:
        raise InvalidSpec("need a positive ring count and a non-empty size pool")
    rng = random.Random(seed)
    sizes = tuple(rng.choice(pool) for _ in range(ring_count))
    offsets = tuple(rng.randint(1, m - 1) for m in sizes[1:-1])
    spec = ChainSpec(sizes, offsets)
    spec.validate()
    return spec


def fibonacci_cube(n: int) -> Graph:
    """Binary strings of length ``n`` with no two consecutive 1s, adjacent at Hamming distance 1."""
    if n < 0:
        raise ValueError("order must be non-negative")
    words = [w for w in range(1 << n) if not (w & (w >> 1))]
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for i, w in enumerate(words):
        for bit in range(n):
            x = w ^ (1 << bit)
            j = index.get(x)
            if j is not None and j > i:
                edges.append((i, j))
    return Graph.from_edges(len(words), sorted(edges))
