"""Test corpora: small graphs up to isomorphism, seeded random graphs and
the named family list used by the property suites."""

from __future__ import annotations

import functools
import itertools
import random

from .errors import InvalidInput
from .graph import Graph, build, canonical_form

KINDS = ("graph", "loop-graph", "digraph")


def _from_code(n: int, code: int) -> Graph:
    return Graph(n, [(i // n, i % n) for i in range(n * n) if code >> i & 1])


@functools.lru_cache(maxsize=None)
def _classes(n: int, kind: str) -> tuple[Graph, ...]:
    if kind == "digraph":
        slots = [(u, v) for u in range(n) for v in range(n)]
        symmetric = False
    else:
        lo = 0 if kind == "loop-graph" else 1
        slots = [(u, v) for u in range(n) for v in range(u + lo, n)]
        symmetric = True
    codes = set()
    for bits in itertools.product((0, 1), repeat=len(slots)):
        arcs = []
        for b, (u, v) in zip(bits, slots):
            if b:
                arcs.append((u, v))
                if symmetric:
                    arcs.append((v, u))
        codes.add(canonical_form(Graph(n, arcs))[1])
    return tuple(_from_code(n, c) for c in sorted(codes))


def iso_classes(n: int, kind: str = "graph") -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices.

    ``graph``: symmetric and loopless; ``loop-graph``: symmetric, loops
    allowed; ``digraph``: arbitrary arcs, loops allowed.  The representative
    is the one with the least canonical code, so the list is deterministic.
    """
    if kind not in KINDS:
        raise InvalidInput(f"kind must be one of {KINDS}")
    if n < 1 or n > 5:
        raise InvalidInput("iso_classes enumerates 1 <= n <= 5 only")
    return list(_classes(n, kind))


def iso_classes_upto(max_n: int, kind: str = "graph") -> list[Graph]:
    return [G for n in range(1, max_n + 1) for G in iso_classes(n, kind)]


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    """Symmetric loopless G(n, p)."""
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            arcs += [(u, v), (v, u)]
    return Graph(n, arcs)


def random_digraph(n: int, rng: random.Random, p: float = 0.5, loops: bool = True) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < p])


def random_graphs(count: int, sizes: tuple[int, ...], seed: int, p: float = 0.5) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.choice(sizes), rng, p) for _ in range(count)]


def random_digraph_pairs(count: int, n: int, seed: int) -> list[tuple[Graph, Graph]]:
    rng = random.Random(seed)
    return [(random_digraph(n, rng), random_digraph(n, rng)) for _ in range(count)]


FAMILY_SPECS = (
    "clique:2", "clique:3", "clique:4", "clique:5",
    "cycle:5", "cycle:7", "cycle:9",
    "circular:7/2", "circular:8/3", "petersen", "path:4",
)


def family_corpus() -> list[tuple[str, Graph]]:
    return [(s, build(s)) for s in FAMILY_SPECS]
