"""Box and hom complexes with their Z2-action, low-dimensional homology,
quotients by the action and simplicial maps induced by polymorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import check_cap
from .errors import CapExceeded, InvalidInput
from .graph import Graph, power
from .polymorphisms import Polymorphism
from .snf import smith_diagonal_sparse

FACE_CAP = 1_000_000

Face = tuple[int, ...]


class SimplicialComplex:
    """A complex stored by its maximal faces (sorted vertex tuples).

    ``vertices`` holds a label per vertex index; a vertex index that lies in
    no face is not a 0-simplex.
    """

    def __init__(self, vertices: Sequence, facets: Iterable[Iterable[int]]):
        self.vertices = list(vertices)
        n = len(self.vertices)
        fs = {tuple(sorted(set(f))) for f in facets}
        fs.discard(())
        for f in fs:
            if f[0] < 0 or f[-1] >= n:
                raise InvalidInput("face vertex out of range")
        # keep only inclusion-maximal faces
        by_size = sorted(fs, key=len, reverse=True)
        kept: list[Face] = []
        kept_sets: list[frozenset] = []
        for f in by_size:
            s = frozenset(f)
            if not any(s <= k for k in kept_sets if len(k) > len(s)):
                kept.append(f)
                kept_sets.append(s)
        self.facets: tuple[Face, ...] = tuple(sorted(kept))
        self._facet_sets = [frozenset(f) for f in self.facets]

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_face(self, sigma: Iterable[int]) -> bool:
        s = frozenset(sigma)
        if not s:
            return True
        return any(s <= f for f in self._facet_sets)

    def faces(self, max_size: int | None = None, cap: int = FACE_CAP) -> set[Face]:
        """Every non-empty face with at most ``max_size`` vertices."""
        out: set[Face] = set()
        for f in self.facets:
            top = len(f) if max_size is None else min(len(f), max_size)
            for r in range(1, top + 1):
                out.update(itertools.combinations(f, r))
                if len(out) > cap:
                    raise CapExceeded("faces", len(out), cap)
        return out

    def f_vector(self, cap: int = FACE_CAP) -> list[int]:
        counts: dict[int, int] = {}
        for face in self.faces(cap=cap):
            counts[len(face)] = counts.get(len(face), 0) + 1
        return [counts.get(r, 0) for r in range(1, self.dimension + 2)]

    def euler_characteristic(self, cap: int = FACE_CAP) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector(cap)))

    def homology(self, cap: int = FACE_CAP) -> "HomologySummary":
        return homology(self, cap)


class Z2Complex(SimplicialComplex):
    """A simplicial complex with a vertex involution mapping faces to faces."""

    def __init__(self, vertices: Sequence, facets: Iterable[Iterable[int]], involution: Sequence[int]):
        super().__init__(vertices, facets)
        self.involution = tuple(involution)
        n = len(self.vertices)
        if len(self.involution) != n or any(self.involution[self.involution[v]] != v for v in range(n)):
            raise InvalidInput("involution must be a self-inverse map on the vertices")
        for f in self.facets:
            if not self.is_face(self.image(f)):
                raise InvalidInput(f"face {f} is not mapped to a face")

    def image(self, sigma: Iterable[int]) -> Face:
        return tuple(sorted(self.involution[v] for v in sigma))

    def is_free(self) -> bool:
        return all(not (set(f) & set(self.image(f))) for f in self.facets)

    def quotient(self) -> "QuotientComplex":
        """The orbit space: vertices are orbits {v, nu(v)}; faces listed by
        their image sets, homology computed from orbits of simplices."""
        if not self.is_free():
            raise InvalidInput("quotient needs a free action")
        return QuotientComplex(self)

    def orbit_sign(self, sigma: Face) -> tuple[Face, int]:
        """Representative of the orbit of ``sigma`` and the sign relating the
        sorted orientations: [sigma] = sign * [representative]."""
        image = self.image(sigma)
        if sigma <= image:
            return sigma, 1
        # nu maps the sorted image (the representative) onto sigma; the sign is
        # the parity of the induced ordering of sigma
        seq = [self.involution[v] for v in image]
        return image, _parity(seq)


def _parity(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


class QuotientComplex(SimplicialComplex):
    """Orbit space of a free Z2-complex.

    The listed facets are the images of the parent's facets.  Since the image
    of a face can merge cells that are distinct in the orbit space, homology
    is computed from the chain complex whose k-cells are the orbits of
    k-faces of the parent, which is the cell structure of the quotient space.
    """

    def __init__(self, parent: Z2Complex):
        nu = parent.involution
        n = len(parent.vertices)
        reps = sorted({min(v, nu[v]) for v in range(n)})
        cls = {r: i for i, r in enumerate(reps)}
        labels = [(parent.vertices[r], parent.vertices[nu[r]]) for r in reps]
        super().__init__(labels, [[cls[min(v, nu[v])] for v in f] for f in parent.facets])
        self.parent = parent

    def euler_characteristic(self, cap: int = FACE_CAP) -> int:
        return sum((-1) ** i * (c // 2) for i, c in enumerate(self.parent.f_vector(cap)))

    def homology(self, cap: int = FACE_CAP) -> "HomologySummary":
        P = self.parent
        euler = self.euler_characteristic(cap)
        low = P.faces(max_size=3, cap=cap)
        verts = sorted({P.orbit_sign((f[0],))[0][0] for f in low if len(f) == 1})
        edges = sorted({P.orbit_sign(f)[0] for f in low if len(f) == 2})
        triangles = sorted({P.orbit_sign(f)[0] for f in low if len(f) == 3})
        vindex = {v: i for i, v in enumerate(verts)}
        parent = list(range(len(verts)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edges:
            a = vindex[P.orbit_sign((e[0],))[0][0]]
            b = vindex[P.orbit_sign((e[1],))[0][0]]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        betti0 = sum(1 for i in range(len(verts)) if find(i) == i)
        rank1 = len(verts) - betti0
        eindex = {e: i for i, e in enumerate(edges)}
        rows = []
        for a, b, c in triangles:
            row: dict[int, int] = {}
            for face, coeff in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
                rep, sign = P.orbit_sign(face)
                j = eindex[rep]
                row[j] = row.get(j, 0) + coeff * sign
            rows.append({j: x for j, x in row.items() if x})
        diag = smith_diagonal_sparse(rows)
        betti1 = len(edges) - rank1 - len(diag)
        return HomologySummary(euler, betti0, betti1, tuple(d for d in diag if d > 1))


@dataclass(frozen=True)
class HomologySummary:
    euler_characteristic: int
    betti0: int
    betti1: int
    torsion1: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "euler": self.euler_characteristic,
            "betti0": self.betti0,
            "betti1": self.betti1,
            "torsion1": list(self.torsion1),
        }


def _boundary2(edges: list[Face], triangles: list[Face]) -> list[dict[int, int]]:
    """Sparse rows of the transposed boundary map: one row per triangle."""
    index = {e: i for i, e in enumerate(edges)}
    rows = []
    for a, b, c in triangles:
        rows.append({index[(b, c)]: 1, index[(a, c)]: -1, index[(a, b)]: 1})
    return rows


def homology(K: SimplicialComplex, cap: int = FACE_CAP) -> HomologySummary:
    """Euler characteristic over all faces; H_0 and H_1 from the 2-skeleton."""
    euler = K.euler_characteristic(cap)
    low = K.faces(max_size=3, cap=cap)
    verts = sorted(f[0] for f in low if len(f) == 1)
    edges = sorted(f for f in low if len(f) == 2)
    triangles = sorted(f for f in low if len(f) == 3)

    parent = {v: v for v in verts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    betti0 = sum(1 for v in verts if find(v) == v)
    rank1 = len(verts) - betti0
    diag = smith_diagonal_sparse(_boundary2(edges, triangles))
    betti1 = len(edges) - rank1 - len(diag)
    return HomologySummary(euler, betti0, betti1, tuple(d for d in diag if d > 1))


# ----------------------------------------------------------------------
# complexes of graphs
# ----------------------------------------------------------------------

def maximal_bicliques(G: Graph) -> list[tuple[int, int]]:
    """All pairs (A, B) of non-empty vertex masks with A x B inside the arc
    set, B the common out-neighbourhood of A and A the common
    in-neighbourhood of B, sorted by (A, B)."""
    n = G.n
    full = (1 << n) - 1
    out, inn = G.out_masks, G.in_masks

    def common(mask: int, nbr: Sequence[int]) -> int:
        c = full
        while mask:
            low = mask & -mask
            c &= nbr[low.bit_length() - 1]
            mask ^= low
        return c

    # closed B-sides are exactly the non-empty intersections of out-neighbourhoods
    seen: set[int] = set()
    frontier = [m for m in set(out) if m]
    while frontier:
        nxt = []
        for m in frontier:
            if m in seen:
                continue
            seen.add(m)
            check_cap("bicliques", len(seen))
            for nb in out:
                x = m & nb
                if x and x not in seen:
                    nxt.append(x)
        frontier = nxt
    pairs = []
    for B in seen:
        A = common(B, inn)
        if A:
            pairs.append((A, B))
    return sorted(pairs)


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def box_complex(G: Graph) -> Z2Complex:
    """Vertices (v, side) with index v + side*n; maximal faces are the
    maximal bicliques of G x K_2 with both sides non-empty."""
    if not G.is_symmetric:
        raise InvalidInput("box complex needs a symmetric graph")
    n = G.n
    vertices = [(v, s) for s in (0, 1) for v in range(n)]
    facets = [_bits(A) + [n + b for b in _bits(B)] for A, B in maximal_bicliques(G)]
    check_cap("box complex facets", len(facets))
    nu = [v + n if v < n else v - n for v in range(2 * n)]
    return Z2Complex(vertices, facets, nu)


def hom_complex(G: Graph) -> Z2Complex:
    """Vertices are the arcs of G in sorted order; a set of arcs is a face
    iff (u, v') is an arc for any two members (u, v), (u', v')."""
    if not G.is_symmetric:
        raise InvalidInput("hom complex needs a symmetric graph")
    arcs = G.sorted_arcs()
    index = {a: i for i, a in enumerate(arcs)}
    facets = []
    for A, B in maximal_bicliques(G):
        facets.append([index[(u, v)] for u in _bits(A) for v in _bits(B)])
    check_cap("hom complex facets", len(facets))
    nu = [index[(v, u)] for u, v in arcs]
    return Z2Complex(arcs, facets, nu)


def build_complex(kind: str, G: Graph) -> Z2Complex:
    if kind == "box":
        return box_complex(G)
    if kind == "hom":
        return hom_complex(G)
    raise InvalidInput(f"unknown complex {kind!r}; expected box or hom")


# ----------------------------------------------------------------------
# induced maps
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialMap:
    domain: Z2Complex
    codomain: Z2Complex
    vertex_map: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def is_simplicial(self) -> bool:
        return all(self.codomain.is_face(self.vertex_map[v] for v in f) for f in self.domain.facets)

    def is_equivariant(self) -> bool:
        nu, mu = self.domain.involution, self.codomain.involution
        return all(self.vertex_map[nu[v]] == mu[self.vertex_map[v]] for v in range(len(self.vertex_map)))


def induced_map(f: Polymorphism, G: Graph, H: Graph) -> SimplicialMap:
    """f' on Hom(K_2, G^L) -> Hom(K_2, H): the arc ((u_1..u_L), (v_1..v_L))
    goes to (f(u_1..u_L), f(v_1..v_L))."""
    if not f.is_polymorphism(G, H):
        raise InvalidInput("f is not a polymorphism G^L -> H")
    P = power(G, f.arity)
    dom = hom_complex(P)
    cod = hom_complex(H)
    index = {a: i for i, a in enumerate(cod.vertices)}
    vm = tuple(index[(f.table[x], f.table[y])] for x, y in dom.vertices)
    out = SimplicialMap(dom, cod, vm)
    if not out.is_simplicial() or not out.is_equivariant():
        raise AssertionError("induced map failed its simplicial/equivariance check")
    return out
