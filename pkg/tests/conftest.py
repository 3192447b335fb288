import itertools

import pytest

from resonance_iso.generators import chain_specs, even_ring_chain, hexagonal_chain_specs


def corpus_specs():
    """Hexagonal chains with up to 4 rings plus mixed chains with up to 3 rings of sizes 4, 6, 8."""
    seen = dict.fromkeys(itertools.chain(hexagonal_chain_specs(4), chain_specs(3, [4, 6, 8])))
    return list(seen)


@pytest.fixture(scope="session")
def corpus():
    specs = corpus_specs()
    return [(s, even_ring_chain(s)) for s in specs]


def subset_matchings(g):
    """Perfect matchings by filtering every edge subset (exponential oracle)."""
    out = []
    n = g.vertex_count
    for mask in range(1 << g.edge_count):
        if bin(mask).count("1") * 2 != n:
            continue
        covered = set()
        ok = True
        for e in range(g.edge_count):
            if mask >> e & 1:
                u, v = g.edges[e]
                if u in covered or v in covered:
                    ok = False
                    break
                covered.update((u, v))
        if ok and len(covered) == n:
            out.append(mask)
    return out


def hamming_fibonacci_cube(n):
    """Fibonacci cube built from strings, independent of the bitmask generator."""
    words = ["".join(w) for w in itertools.product("01", repeat=n) if "11" not in "".join(w)]
    edges = [
        (i, j)
        for i, a in enumerate(words)
        for j, b in enumerate(words)
        if i < j and sum(x != y for x, y in zip(a, b)) == 1
    ]
    return words, edges


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
