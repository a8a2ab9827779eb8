"""Finite digraphs on dense integer vertices, named families, tensor
products, exponential graphs and the plain-text graph format.

Undirected graphs are symmetric digraphs: an edge {u, v} is the pair of
arcs (u, v) and (v, u).  Loops are allowed everywhere.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import check_cap
from .errors import InvalidInput, ParseError

Arc = tuple[int, int]


class Graph:
    """Immutable digraph with vertices ``0..n-1``.

    ``labels`` is optional decoration (e.g. the arc a vertex of an arc
    digraph stands for); it takes no part in equality or hashing.
    """

    __slots__ = ("n", "arcs", "labels", "_out", "_in", "_hash")

    def __init__(self, n: int, arcs: Iterable[Arc] = (), labels: Sequence | None = None):
        n = int(n)
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        arcset = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcset:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"arc ({u},{v}) has an endpoint outside 0..{n - 1}")
        if labels is not None and len(labels) != n:
            raise InvalidInput("labels must have one entry per vertex")
        self.n = n
        self.arcs = arcset
        self.labels = tuple(labels) if labels is not None else None
        self._out = None
        self._in = None
        self._hash = None

    # -- structure -----------------------------------------------------
    def _masks(self) -> None:
        out = [0] * self.n
        inn = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self._out = tuple(out)
        self._in = tuple(inn)

    @property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhoods as integer bitsets."""
        if self._out is None:
            self._masks()
        return self._out

    @property
    def in_masks(self) -> tuple[int, ...]:
        if self._in is None:
            self._masks()
        return self._in

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, u: int) -> list[int]:
        return _bits(self.out_masks[u])

    def in_neighbors(self, v: int) -> list[int]:
        return _bits(self.in_masks[v])

    @property
    def is_symmetric(self) -> bool:
        return all((v, u) in self.arcs for u, v in self.arcs)

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.arcs)

    def loops(self) -> list[int]:
        return sorted(u for u, v in self.arcs if u == v)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def edges(self) -> list[Arc]:
        """Undirected edges ``u <= v`` of the symmetric closure, sorted."""
        return sorted({(min(u, v), max(u, v)) for u, v in self.arcs})

    def degree(self, u: int) -> int:
        """Number of distinct neighbours, ignoring direction."""
        return bin((self.out_masks[u] | self.in_masks[u]) & ~(1 << u)).count("1")

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex bijection ``v -> perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.arcs))

    # -- dunder --------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.arcs))
        return self._hash

    def __repr__(self) -> str:
        kind = "graph" if self.is_symmetric else "digraph"
        return f"<{kind} n={self.n} arcs={len(self.arcs)}>"

    def __len__(self) -> int:
        return self.n


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_edges(n: int, edges: Iterable[Arc], labels: Sequence | None = None) -> Graph:
    """Symmetric digraph with both orientations of every listed edge."""
    arcs = set()
    for u, v in edges:
        arcs.add((u, v))
        arcs.add((v, u))
    return Graph(n, arcs, labels)


# ----------------------------------------------------------------------
# named families
# ----------------------------------------------------------------------

FAMILY_KINDS = ("clique", "cycle", "circular_clique", "kneser", "path")


@dataclass(frozen=True)
class GraphFamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise InvalidInput(f"unknown graph family {self.kind!r}")
        if any(int(p) < 1 for p in self.params):
            raise InvalidInput(f"{self.kind}: parameters must be positive integers")
        arity = {"clique": 1, "cycle": 1, "path": 1, "circular_clique": 2, "kneser": 2}[self.kind]
        if len(self.params) != arity:
            raise InvalidInput(f"{self.kind} takes {arity} parameter(s)")
        if self.kind == "circular_clique":
            p, q = self.params
            if p <= 2 * q:
                raise InvalidInput(f"circular clique needs p/q > 2, got {p}/{q}")
        if self.kind == "kneser":
            n, k = self.params
            if n < 2 * k:
                raise InvalidInput(f"Kneser graph needs n >= 2k, got n={n}, k={k}")
        if self.kind == "cycle" and self.params[0] < 3:
            raise InvalidInput("cycle needs at least 3 vertices")

    @classmethod
    def parse(cls, text: str) -> "GraphFamilySpec":
        """Parse ``clique:4``, ``cycle:5``, ``path:3``, ``circular:7/2``,
        ``kneser:5,2`` (also ``petersen`` for ``kneser:5,2``)."""
        text = text.strip().lower()
        if text == "petersen":
            return cls("kneser", (5, 2))
        m = re.fullmatch(r"([a-z_]+)\s*[: ]\s*([0-9 ,/]+)", text)
        if not m:
            raise InvalidInput(f"cannot parse graph family spec {text!r}")
        kind, rest = m.groups()
        kind = {"circular": "circular_clique", "k": "clique", "c": "cycle"}.get(kind, kind)
        try:
            params = tuple(int(x) for x in re.split(r"[,/ ]+", rest.strip()))
        except ValueError:
            raise InvalidInput(f"cannot parse graph family spec {text!r}") from None
        return cls(kind, params)


def build(spec: GraphFamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = GraphFamilySpec.parse(spec)
    kind, params = spec.kind, spec.params
    if kind == "clique":
        return clique(params[0])
    if kind == "cycle":
        return cycle(params[0])
    if kind == "path":
        return path(params[0])
    if kind == "circular_clique":
        return circular_clique(*params)
    return kneser(*params)


def clique(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def cycle(n: int) -> Graph:
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def circular_clique(p: int, q: int) -> Graph:
    """K_{p/q}: vertex set Z_p, i adjacent to j iff (j - i) mod p lies in q..p-q."""
    GraphFamilySpec("circular_clique", (p, q))
    return Graph(p, ((i, j) for i in range(p) for j in range(p) if q <= (j - i) % p <= p - q))


def kneser(n: int, k: int) -> Graph:
    """KG(n, k) on the k-subsets of range(n) in lexicographic order."""
    GraphFamilySpec("kneser", (n, k))
    subsets = list(itertools.combinations(range(n), k))
    masks = [sum(1 << x for x in s) for s in subsets]
    check_cap("kneser graph", len(subsets))
    arcs = [(i, j) for i, a in enumerate(masks) for j, b in enumerate(masks) if not a & b]
    return Graph(len(subsets), arcs, labels=subsets)


def arcless(n: int) -> Graph:
    return Graph(n)


# ----------------------------------------------------------------------
# products
# ----------------------------------------------------------------------

def tensor_product(G: Graph, H: Graph) -> Graph:
    """Categorical product; (g, h) is encoded as ``g * H.n + h``."""
    m = H.n
    check_cap("tensor product", G.n * m)
    arcs = [(g * m + h, g2 * m + h2) for g, g2 in G.arcs for h, h2 in H.arcs]
    return Graph(G.n * m, arcs)


def power(G: Graph, L: int) -> Graph:
    """L-fold tensor power with mixed-radix row-major vertex encoding."""
    if L < 1:
        raise InvalidInput("power needs L >= 1")
    check_cap(f"power L={L}", G.n**L)
    P = G
    for _ in range(L - 1):
        P = tensor_product(P, G)
    return P


def exponential(H: Graph, F: Graph) -> Graph:
    """H^F: vertices are all maps V(F) -> V(H), encoded row-major with
    f(0) most significant; f ~ g iff (f(u), g(v)) is an arc of H for
    every arc (u, v) of F."""
    m, k = F.n, H.n
    size = k**m
    check_cap("exponential graph", size)
    funcs = list(itertools.product(range(k), repeat=m))
    f_arcs = sorted(F.arcs)
    hout = H.out_masks
    arcs = []
    for i, f in enumerate(funcs):
        for j, g in enumerate(funcs):
            if all(hout[f[u]] >> g[v] & 1 for u, v in f_arcs):
                arcs.append((i, j))
    return Graph(size, arcs, labels=funcs)


def add_universal_vertex(G: Graph) -> Graph:
    """Append vertex ``G.n`` joined in both directions to every vertex."""
    u = G.n
    arcs = set(G.arcs)
    for v in range(G.n):
        arcs.add((u, v))
        arcs.add((v, u))
    return Graph(G.n + 1, arcs)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    return Graph(G.n + H.n, list(G.arcs) + [(u + G.n, v + G.n) for u, v in H.arcs])


# ----------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------

def serialize(G: Graph, comments: Sequence[str] = ()) -> str:
    """Canonical text form: ``graph n m`` with sorted edges u <= v when G
    is symmetric, otherwise ``digraph n m`` with sorted arcs."""
    lines = [f"# {c}" for c in comments]
    if G.is_symmetric:
        edges = G.edges()
        lines.append(f"graph {G.n} {len(edges)}")
    else:
        edges = G.sorted_arcs()
        lines.append(f"digraph {G.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Graph:
    header = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = (lineno, line)
        else:
            body.append((lineno, line))
    if header is None:
        raise ParseError("missing header", 1)
    hline, htext = header
    parts = htext.split()
    if len(parts) != 3 or parts[0] not in ("graph", "digraph"):
        raise ParseError(f"malformed header {htext!r}; expected 'graph n m' or 'digraph n m'", hline)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError(f"malformed header {htext!r}", hline) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", hline)
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else hline)
        raise ParseError(f"header declares {m} lines, found {len(body)}", where)
    symmetric = parts[0] == "graph"
    arcs: set[Arc] = set()
    for lineno, line in body:
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1} in {line!r}", lineno)
        new = {(u, v), (v, u)} if symmetric else {(u, v)}
        if (u, v) in arcs or (symmetric and (v, u) in arcs):
            raise ParseError(f"duplicate arc {u} {v}", lineno)
        arcs |= new
    return Graph(n, arcs)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_graph(path: str, G: Graph, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(G, comments))


def graph_hash(G: Graph) -> str:
    """sha256 of the canonical serialization (comments excluded)."""
    return hashlib.sha256(serialize(G).encode()).hexdigest()


# ----------------------------------------------------------------------
# small-graph isomorphism
# ----------------------------------------------------------------------

def _signature(G: Graph) -> list[tuple[int, int, bool]]:
    return [(bin(G.out_masks[v]).count("1"), bin(G.in_masks[v]).count("1"), G.has_arc(v, v)) for v in range(G.n)]


def isomorphism(G: Graph, H: Graph) -> list[int] | None:
    """Brute-force isomorphism G -> H with degree-signature pruning.
    Meant for graphs of at most ~9 vertices."""
    if G.n != H.n or len(G.arcs) != len(H.arcs):
        return None
    sg, sh = _signature(G), _signature(H)
    if sorted(sg) != sorted(sh):
        return None
    cands = [[w for w in range(H.n) if sh[w] == sg[v]] for v in range(G.n)]
    order = sorted(range(G.n), key=lambda v: len(cands[v]))
    perm = [-1] * G.n
    used = [False] * H.n

    def extend(i: int) -> bool:
        if i == G.n:
            return True
        v = order[i]
        for w in cands[v]:
            if used[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if G.has_arc(u, v) != H.has_arc(perm[u], w) or G.has_arc(v, u) != H.has_arc(w, perm[u]):
                    ok = False
                    break
            if ok and G.has_arc(v, v) == H.has_arc(w, w):
                perm[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        perm[v] = -1
        return False

    return list(perm) if extend(0) else None


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return isomorphism(G, H) is not None


def canonical_form(G: Graph) -> tuple[int, int]:
    """Minimum adjacency bit-string over all vertex orders; exhaustive in
    n!, so only for graphs with at most 6 vertices."""
    n = G.n
    if n > 6:
        raise InvalidInput("canonical_form is brute force; n <= 6 only")
    arcs = list(G.arcs)
    best = None
    for perm in itertools.permutations(range(n)):
        code = 0
        for u, v in arcs:
            code |= 1 << (perm[u] * n + perm[v])
        if best is None or code < best:
            best = code
    return (n, best or 0)

