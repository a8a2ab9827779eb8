"""Exact homomorphism search: decision with certificates, enumeration,
chromatic number and odd girth.

The backtracking kernel is compiled when the ``_search_ext`` extension is
importable and the target has at most 64 vertices; otherwise the
pure-Python kernel runs.  Both explore the same tree in the same order, so
witnesses and node counts do not depend on which one is active.
"""

from __future__ import annotations

import contextlib
import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from . import _search_py
from .config import default_budget
from .errors import BudgetExceeded, HasLoop, InvalidInput, PcspError
from .graph import Graph, clique

try:  # pragma: no cover - depends on the build
    if os.environ.get("PCSP_ADJOINT_PURE"):
        raise ImportError("pure kernel forced by environment")
    from . import _search_ext
except ImportError:  # pragma: no cover
    _search_ext = None

COMPILED_MAX_TARGET = 64
_kernel_pref = "compiled" if _search_ext is not None else "python"


def available_kernels() -> list[str]:
    return ["python"] + (["compiled"] if _search_ext is not None else [])


def kernel_name() -> str:
    return _kernel_pref


@contextlib.contextmanager
def use_kernel(name: str):
    """Temporarily force ``"python"`` or ``"compiled"``."""
    global _kernel_pref
    if name not in available_kernels():
        raise InvalidInput(f"kernel {name!r} is not available")
    old = _kernel_pref
    _kernel_pref = name
    try:
        yield
    finally:
        _kernel_pref = old


def _kernel_for(target_size: int):
    if _kernel_pref == "compiled" and target_size <= COMPILED_MAX_TARGET:
        return _search_ext.search, "compiled"
    return _search_py.search, "python"


# ----------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class VertexMap:
    """Image of every source vertex; a homomorphism witness once validated."""

    image: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.image)

    def __getitem__(self, v: int) -> int:
        return self.image[v]

    def bad_arc(self, G: Graph, H: Graph) -> tuple[int, int] | None:
        """First source arc (in sorted order) not mapped onto a target arc."""
        if len(self.image) != G.n or any(not 0 <= x < H.n for x in self.image):
            return (-1, -1)
        img = self.image
        for u, v in sorted(G.arcs):
            if (img[u], img[v]) not in H.arcs:
                return (u, v)
        return None

    def is_homomorphism(self, G: Graph, H: Graph) -> bool:
        return self.bad_arc(G, H) is None


@dataclass(frozen=True)
class Coloring:
    k: int
    assignment: tuple[int, ...]

    def violation(self, G: Graph) -> tuple[int, int] | None:
        """A monochromatic arc (loops included), or None when proper."""
        if any(not 0 <= c < self.k for c in self.assignment):
            raise InvalidInput("colour index out of range")
        a = self.assignment
        for u, v in sorted(G.arcs):
            if a[u] == a[v]:
                return (u, v)
        return None

    def is_proper(self, G: Graph) -> bool:
        return len(self.assignment) == G.n and self.violation(G) is None

    @property
    def colours_used(self) -> int:
        return len(set(self.assignment))


@dataclass
class HomResult:
    status: Literal["found", "none", "unknown"]
    witness: VertexMap | None
    nodes: int
    budget: int | None
    folds: tuple[tuple[int, int], ...] = ()
    kernel: str = "python"
    searched_vertices: int = 0

    @property
    def exists(self) -> bool | None:
        return {"found": True, "none": False, "unknown": None}[self.status]


@dataclass
class FoldResult:
    """Retraction sequence: vertex ``u`` copies the image of ``v``."""

    alive: list[int]
    folds: list[tuple[int, int]] = field(default_factory=list)

    def extend(self, partial: dict[int, int], n: int) -> list[int]:
        image = [-1] * n
        for v, x in partial.items():
            image[v] = x
        for u, v in reversed(self.folds):
            image[u] = image[v]
        return image


def fold_dominated(G: Graph) -> FoldResult:
    """Repeatedly fold a vertex ``u`` onto ``v`` when ``u -> v`` (identity
    elsewhere) is a homomorphism of the current graph onto the graph minus
    ``u``; any homomorphism of the core then extends to G.  Deterministic:
    smallest ``u`` first, then smallest admissible ``v``."""
    n = G.n
    out = list(G.out_masks)
    inn = list(G.in_masks)
    alive = (1 << n) - 1
    folds: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for u in range(n):
            if not alive >> u & 1:
                continue
            bu = 1 << u
            others = alive & ~bu
            if not others:
                break
            ou = out[u] & others
            iu = inn[u] & others
            loop_u = out[u] & bu
            if ou:
                w = (ou & -ou).bit_length() - 1
                cands = inn[w] & others
            elif iu:
                w = (iu & -iu).bit_length() - 1
                cands = out[w] & others
            else:
                cands = others
            while cands:
                low = cands & -cands
                v = low.bit_length() - 1
                cands ^= low
                if ou & ~out[v] or iu & ~inn[v]:
                    continue
                if loop_u and not out[v] >> v & 1:
                    continue
                folds.append((u, v))
                alive &= ~bu
                changed = True
                break
    return FoldResult([v for v in range(n) if alive >> v & 1], folds)


# ----------------------------------------------------------------------
# search driver
# ----------------------------------------------------------------------

def _prepare(G: Graph, H: Graph, vertices: Sequence[int]):
    index = {v: i for i, v in enumerate(vertices)}
    k = len(vertices)
    outs: list[list[int]] = [[] for _ in range(k)]
    ins: list[list[int]] = [[] for _ in range(k)]
    for u, v in sorted(G.arcs):
        if u == v or u not in index or v not in index:
            continue
        outs[index[u]].append(index[v])
        ins[index[v]].append(index[u])
    out_ptr, out_idx, in_ptr, in_idx = [0], [], [0], []
    for i in range(k):
        out_idx.extend(outs[i])
        out_ptr.append(len(out_idx))
        in_idx.extend(ins[i])
        in_ptr.append(len(in_idx))
    degree = [len(set(outs[i]) | set(ins[i])) for i in range(k)]
    full = (1 << H.n) - 1
    loop_mask = sum(1 << x for x in H.loops())
    domains = [loop_mask if G.has_arc(v, v) else full for v in vertices]
    return out_ptr, out_idx, in_ptr, in_idx, degree, domains


def _resolve_budget(budget: int | None) -> int | None:
    return default_budget() if budget is None else budget


def find_homomorphism(G: Graph, H: Graph, budget: int | None = None, fold: bool = True) -> HomResult:
    """Decide ``G -> H``.  ``budget`` caps search nodes (value
    assignments); on exhaustion the status is ``"unknown"``, never a guess.
    The returned witness has been checked against every arc of G."""
    budget = _resolve_budget(budget)
    if G.n == 0:
        return HomResult("found", VertexMap(()), 0, budget)
    if H.n == 0:
        return HomResult("none", None, 0, budget)
    folding = fold_dominated(G) if fold else FoldResult(list(range(G.n)))
    core = folding.alive
    kernel, kname = _kernel_for(H.n)
    out_ptr, out_idx, in_ptr, in_idx, degree, domains = _prepare(G, H, core)
    status, sols, nodes, _ = kernel(
        len(core), out_ptr, out_idx, in_ptr, in_idx, degree,
        list(H.out_masks), list(H.in_masks), domains,
        -1 if budget is None else budget, 1,
    )
    folds = tuple(folding.folds)
    if sols:
        image = folding.extend(dict(zip(core, sols[0])), G.n)
        witness = VertexMap(tuple(image))
        bad = witness.bad_arc(G, H)
        if bad is not None:  # pragma: no cover - would be a kernel bug
            raise PcspError(f"internal error: witness violates arc {bad}")
        return HomResult("found", witness, nodes, budget, folds, kname, len(core))
    if status == _search_py.STATUS_BUDGET:
        return HomResult("unknown", None, nodes, budget, folds, kname, len(core))
    return HomResult("none", None, nodes, budget, folds, kname, len(core))


def hom_exists(G: Graph, H: Graph, budget: int | None = None) -> VertexMap | None:
    """Witness of ``G -> H`` or None; raises BudgetExceeded when undecided."""
    res = find_homomorphism(G, H, budget)
    if res.status == "unknown":
        raise BudgetExceeded(res.nodes, res.budget)
    return res.witness


def homomorphic(G: Graph, H: Graph, budget: int | None = None) -> bool:
    return hom_exists(G, H, budget) is not None


def _run_all(G: Graph, H: Graph, limit: int | None, budget: int | None, pick):
    budget = _resolve_budget(budget)
    kernel, _ = _kernel_for(H.n)
    out_ptr, out_idx, in_ptr, in_idx, degree, domains = _prepare(G, H, list(range(G.n)))
    status, sols, nodes, count = kernel(
        G.n, out_ptr, out_idx, in_ptr, in_idx, degree,
        list(H.out_masks), list(H.in_masks), domains,
        -1 if budget is None else budget, -1 if limit is None else limit, pick,
    )
    if status == _search_py.STATUS_BUDGET:
        raise BudgetExceeded(nodes, budget)
    return sols, count


def enumerate_homomorphisms(G: Graph, H: Graph, limit: int | None = None,
                            budget: int | None = None) -> Iterator[VertexMap]:
    """All homomorphisms G -> H (no folding), each exactly once, in the
    kernel's deterministic order.  Stops after ``limit`` maps."""
    if G.n == 0:
        yield VertexMap(())
        return
    if H.n == 0:
        return
    sols, _ = _run_all(G, H, limit, budget, None)
    for s in sols:
        yield VertexMap(tuple(s))


def count_homomorphisms(G: Graph, H: Graph, budget: int | None = None) -> int:
    """Number of homomorphisms G -> H, without storing them."""
    if G.n == 0:
        return 1
    if H.n == 0:
        return 0
    # ordinal -1 is never met, so nothing is stored and the search runs to the end
    return _run_all(G, H, None, budget, [-1])[1]


def homomorphisms_at(G: Graph, H: Graph, ordinals: Sequence[int],
                     budget: int | None = None) -> list[VertexMap]:
    """The homomorphisms with the given positions in enumeration order."""
    picks = sorted(set(ordinals))
    if not picks:
        return []
    if G.n == 0:
        return [VertexMap(())] if picks == [0] else []
    if H.n == 0:
        return []
    sols, _ = _run_all(G, H, None, budget, picks)
    return [VertexMap(tuple(s)) for s in sols]


# ----------------------------------------------------------------------
# colouring
# ----------------------------------------------------------------------

def greedy_coloring(G: Graph) -> Coloring:
    """Largest-degree-first greedy colouring of the symmetric closure."""
    if G.has_loops:
        raise HasLoop("graph has a loop")
    nbrs = [G.out_masks[v] | G.in_masks[v] for v in range(G.n)]
    colour = [-1] * G.n
    for v in sorted(range(G.n), key=lambda v: (-G.degree(v), v)):
        used = {colour[w] for w in range(G.n) if nbrs[v] >> w & 1 and colour[w] >= 0}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    return Coloring(max(colour, default=-1) + 1, tuple(colour))


def find_coloring(G: Graph, k: int, budget: int | None = None) -> Coloring | None:
    if G.has_loops:
        return None
    w = hom_exists(G, clique(k), budget)
    return None if w is None else Coloring(k, w.image)


def chromatic_bounds(G: Graph, budget: int | None = None) -> tuple[int, int]:
    """``(lower, upper)``; equal when the search settled the value."""
    if G.has_loops:
        raise HasLoop("a graph with a loop has no proper colouring")
    if G.n == 0:
        return (0, 0)
    if not G.arcs:
        return (1, 1)
    upper = greedy_coloring(G).k
    k = 2
    while k < upper:
        res = find_homomorphism(G, clique(k), budget)
        if res.status == "found":
            return (k, k)
        if res.status == "unknown":
            return (k, upper)
        k += 1
    return (upper, upper)


def chromatic_number(G: Graph, budget: int | None = None) -> int:
    """Least k with G -> K_k, for the symmetric closure of G.  Raises
    HasLoop for graphs with a loop and BudgetExceeded (carrying the bound
    pair) when a search hits the budget."""
    lo, hi = chromatic_bounds(G, budget)
    if lo != hi:
        raise BudgetExceeded(0, _resolve_budget(budget) or 0, lo, hi)
    return lo


def odd_girth(G: Graph) -> int | float:
    """Length of the shortest odd closed walk; ``math.inf`` if bipartite."""
    if not G.is_symmetric:
        raise InvalidInput("odd_girth needs a symmetric graph")
    best: int | float = math.inf
    nbrs = [G.out_neighbors(v) for v in range(G.n)]
    for s in range(G.n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            v, par = queue.popleft()
            d = dist[(v, par)]
            if d + 1 >= best:
                break
            for w in nbrs[v]:
                key = (w, par ^ 1)
                if key not in dist:
                    dist[key] = d + 1
                    queue.append(key)
        if (s, 1) in dist:
            best = min(best, dist[(s, 1)])
    return best
