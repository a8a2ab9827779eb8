"""Graph-to-graph constructions: the arc digraph and its two adjoints,
symmetric closure and symmetric interior, k-subdivision, exact-k-walk
power, the subset-tuple construction Omega_k, plus the universal vertex.

All of these are pure functions returning new ``Graph`` objects; vertex
orders are deterministic so results can be hashed and replayed.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .config import check_cap
from .errors import InvalidInput
from .graph import Graph, add_universal_vertex


def central_binomial(n: int) -> int:
    """b(n) = C(n, floor(n/2))."""
    if n < 0:
        raise InvalidInput("central_binomial needs n >= 0")
    return math.comb(n, n // 2)


def inverse_central_binomial(c: int) -> int:
    """Least n with c <= b(n)."""
    n = 0
    while central_binomial(n) < c:
        n += 1
    return n


# ----------------------------------------------------------------------
# arc digraph and adjoints
# ----------------------------------------------------------------------

def arc_digraph(D: Graph) -> Graph:
    """delta(D): one vertex per arc, in sorted arc order; an arc
    ((u,v),(v,w)) for every composable pair, w = u included."""
    arcs = D.sorted_arcs()
    by_tail: dict[int, list[int]] = {}
    for i, (u, _) in enumerate(arcs):
        by_tail.setdefault(u, []).append(i)
    new = [(i, j) for i, (_, v) in enumerate(arcs) for j in by_tail.get(v, ())]
    return Graph(len(arcs), new, labels=arcs)


def delta_left(D: Graph) -> Graph:
    """delta_L(D): an arc s_v -> t_v per vertex, then t_u glued to s_v for
    every arc (u,v), closed transitively.  Classes are numbered by their
    smallest member with s_v = 2v, t_v = 2v+1."""
    parent = list(range(2 * D.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in D.sorted_arcs():
        a, b = find(2 * u + 1), find(2 * v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(2 * D.n)})
    cls = {r: i for i, r in enumerate(roots)}
    arcs = {(cls[find(2 * v)], cls[find(2 * v + 1)]) for v in range(D.n)}
    members = [[] for _ in roots]
    for x in range(2 * D.n):
        members[cls[find(x)]].append(("s" if x % 2 == 0 else "t", x // 2))
    return Graph(len(roots), arcs, labels=[tuple(m) for m in members])


def delta_right(D: Graph) -> Graph:
    """delta_R(D): a vertex per pair (S, T) of vertex sets with S x T
    inside the arc set (empty S or T allowed), ordered by (S mask, T mask);
    an arc (S,T) -> (S',T') iff T meets S'."""
    n = D.n
    out = D.out_masks
    full = (1 << n) - 1
    pairs: list[tuple[int, int]] = []
    for S in range(1 << n):
        common = full
        m = S
        while m:
            low = m & -m
            common &= out[low.bit_length() - 1]
            m ^= low
        # T ranges over subsets of the common out-neighbourhood, ascending
        for T in _submasks_ascending(common):
            pairs.append((S, T))
        check_cap("delta_R", len(pairs))
    S_arr = np.array([s for s, _ in pairs], dtype=object if n > 62 else np.int64)
    arcs = []
    for i, (_, T) in enumerate(pairs):
        if T == 0:
            continue
        hits = np.nonzero((S_arr & T) != 0)[0]
        arcs.extend((i, int(j)) for j in hits)
    labels = [(_mask_set(S), _mask_set(T)) for S, T in pairs]
    return Graph(len(pairs), arcs, labels=labels)


def _submasks_ascending(mask: int) -> list[int]:
    subs = []
    sub = 0
    while True:
        subs.append(sub)
        if sub == mask:
            break
        sub = (sub - mask) & mask
    return subs


def _mask_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def sym(D: Graph) -> Graph:
    """Symmetric closure."""
    return Graph(D.n, D.arcs | {(v, u) for u, v in D.arcs})


def sub(D: Graph) -> Graph:
    """Largest symmetric subgraph: keep (u,v) iff (v,u) is also an arc."""
    return Graph(D.n, {(u, v) for u, v in D.arcs if (v, u) in D.arcs})


# ----------------------------------------------------------------------
# Lambda_k, Gamma_k, Omega_k
# ----------------------------------------------------------------------

def _check_odd(k: int, least: int = 1) -> None:
    if k < least or k % 2 == 0:
        raise InvalidInput(f"k must be odd and >= {least}, got {k}")


def subdivide(G: Graph, k: int) -> Graph:
    """Lambda_k: every edge becomes a path of k edges (a loop becomes a
    closed k-cycle through its vertex).  New vertices follow the originals,
    edge by edge in sorted order."""
    _check_odd(k)
    if not G.is_symmetric:
        raise InvalidInput("subdivide needs a symmetric graph")
    if k == 1:
        return G
    edges = G.edges()
    check_cap("subdivision", G.n + (k - 1) * len(edges))
    arcs = []
    nxt = G.n
    for u, v in edges:
        chain = [u] + list(range(nxt, nxt + k - 1)) + [v]
        nxt += k - 1
        for a, b in zip(chain, chain[1:]):
            arcs.append((a, b))
            arcs.append((b, a))
    return Graph(nxt, arcs)


def _bool_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u, v in G.arcs:
        A[u, v] = 1
    return A


def power_graph(G: Graph, k: int) -> Graph:
    """Gamma_k: arc (u,v) iff some walk of exactly k arcs leads from u to
    v; closed walks give loops."""
    _check_odd(k)
    A = _bool_matrix(G)
    R = A.copy()
    for _ in range(k - 1):
        R = np.minimum(R @ A, 1)
    us, vs = np.nonzero(R)
    return Graph(G.n, zip(us.tolist(), vs.tolist()))


def omega(G: Graph, k: int) -> Graph:
    """Omega_k for k = 2l+1 >= 3.

    Vertices are tuples (A_0, .., A_l) of vertex sets with |A_0| = 1, in
    lexicographic order of (A_0, A_1 mask, .., A_l mask).  A ~ B iff
    A_i is inside B_{i+1} and B_i inside A_{i+1} for i < l, and every
    a in A_l has an arc to every b in B_l.
    """
    _check_odd(k, 3)
    if G.n > 62:
        raise InvalidInput("omega supports graphs with at most 62 vertices")
    ell = (k - 1) // 2
    n = G.n
    check_cap(f"omega_{k}", n * (2 ** (ell * n)))
    tuples = [
        (1 << a0,) + rest
        for a0 in range(n)
        for rest in itertools.product(range(1 << n), repeat=ell)
    ]
    N = len(tuples)
    M = np.array(tuples, dtype=np.int64).reshape(N, ell + 1)
    full = (1 << n) - 1
    out = G.out_masks
    # common out-neighbourhood of each possible last coordinate
    last = M[:, ell]
    common = np.empty(N, dtype=np.int64)
    for idx in range(N):
        c = full
        m = int(last[idx])
        while m:
            low = m & -m
            c &= out[low.bit_length() - 1]
            m ^= low
        common[idx] = c
    arcs = []
    for i in range(N):
        ok = (last & ~common[i]) == 0
        for j in range(ell):
            ok &= (M[i, j] & ~M[:, j + 1]) == 0
            ok &= (M[:, j] & ~M[i, j + 1]) == 0
        arcs.extend((i, int(j)) for j in np.nonzero(ok)[0])
    labels = [tuple(_mask_set(int(x)) for x in t) for t in tuples]
    return Graph(N, arcs, labels=labels)


def omega_projection(G: Graph, k: int) -> list[int]:
    """The map Omega_k G -> G sending a tuple to the vertex in A_0, listed
    in Omega_k's vertex order."""
    _check_odd(k, 3)
    ell = (k - 1) // 2
    return [a0 for a0 in range(G.n) for _ in range((1 << G.n) ** ell)]


universal = add_universal_vertex


# ----------------------------------------------------------------------
# named functor dispatch (CLI, pipelines)
# ----------------------------------------------------------------------

FUNCTOR_NAMES = ("delta", "delta_l", "delta_r", "sym", "sub", "lambda", "gamma", "omega", "universal")


def parse_functor(text: str) -> tuple[str, int | None]:
    name, _, arg = text.strip().lower().partition(":")
    if name not in FUNCTOR_NAMES:
        raise InvalidInput(f"unknown functor {name!r}; expected one of {', '.join(FUNCTOR_NAMES)}")
    needs_k = name in ("lambda", "gamma", "omega")
    if needs_k != bool(arg):
        raise InvalidInput(f"functor {name!r} {'needs' if needs_k else 'takes no'} ':k' parameter")
    try:
        return name, int(arg) if arg else None
    except ValueError:
        raise InvalidInput(f"bad functor parameter in {text!r}") from None


def apply_functor(name: str, G: Graph, k: int | None = None) -> Graph:
    if name == "delta":
        return arc_digraph(G)
    if name == "delta_l":
        return delta_left(G)
    if name == "delta_r":
        return delta_right(G)
    if name == "sym":
        return sym(G)
    if name == "sub":
        return sub(G)
    if name == "lambda":
        return subdivide(G, k)
    if name == "gamma":
        return power_graph(G, k)
    if name == "omega":
        return omega(G, k)
    if name == "universal":
        return add_universal_vertex(G)
    raise InvalidInput(f"unknown functor {name!r}")
