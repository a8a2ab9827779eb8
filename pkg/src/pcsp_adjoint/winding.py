"""Winding numbers of closed walks in circular cliques K_{p/q} (p odd,
2 < p/q < 4) and winding profiles of polymorphisms C_n^L -> K_{p/q}.

A step i -> j with d = (j - i) mod p in {q, .., p-q} is lifted to the odd
integer p - 2d in {-(p-2q), .., -1, 1, .., p-2q}; a step of +q is positive.
The lift sum of a closed walk is a multiple of p and the winding number
is that multiple.  Every lift has absolute value below p/2, so a
backtrack or a 4-cycle in the target always sums to zero, which is what
makes the number a homotopy invariant of the walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput
from .graph import circular_clique, cycle
from .polymorphisms import Polymorphism, tuple_index


def _check_target(p: int, q: int) -> None:
    if p % 2 == 0:
        raise InvalidInput("winding is only defined here for odd p")
    if not 2 < Fraction(p, q) < 4:
        raise InvalidInput(f"winding needs 2 < p/q < 4, got {p}/{q}")


def step_lift(i: int, j: int, p: int, q: int) -> int:
    d = (j - i) % p
    if not q <= d <= p - q:
        raise InvalidInput(f"{i} -> {j} is not an arc of K_{p}/{q}")
    return p - 2 * d


def winding(walk: Sequence[int], p: int, q: int) -> int:
    """Winding number of a closed walk given as its vertex sequence
    (first vertex repeated at the end)."""
    _check_target(p, q)
    if len(walk) < 1 or walk[0] != walk[-1]:
        raise InvalidInput("walk must be closed (first vertex repeated at the end)")
    total = sum(step_lift(a, b, p, q) for a, b in zip(walk, walk[1:]))
    if total % p:
        raise AssertionError(f"lift sum {total} of a closed walk is not a multiple of {p}")
    return total // p


def cycle_to_circular(n: int) -> list[int]:
    """The isomorphism C_n -> K_{n/k} for n = 2k+1: i -> k*i mod n."""
    if n < 3 or n % 2 == 0:
        raise InvalidInput("need an odd cycle")
    k = (n - 1) // 2
    return [(k * i) % n for i in range(n)]


def coordinate_walk(n: int, L: int, coord: int) -> list[tuple[int, ...]]:
    """Closed walk in C_n^L from (0,..,0): coordinate ``coord`` (1-based)
    makes two laps of +1 steps, every other coordinate alternates 0, 1."""
    walk = []
    for t in range(2 * n + 1):
        walk.append(tuple(t % n if c == coord - 1 else t % 2 for c in range(L)))
    return walk


def diagonal_walk(n: int, L: int) -> list[tuple[int, ...]]:
    """One lap with every coordinate stepping +1."""
    return [tuple([t % n] * L) for t in range(n + 1)]


@dataclass(frozen=True)
class WindingProfile:
    a: tuple[int, ...]
    d: int

    def violations(self) -> list[str]:
        out = []
        if sum(self.a) != 2 * self.d:
            out.append(f"sum of a = {sum(self.a)} but 2d = {2 * self.d}")
        if self.d % 2 == 0:
            out.append(f"d = {self.d} is even")
        odd = [x for x in self.a if x % 2]
        if odd:
            out.append(f"odd entries in a: {odd}")
        return out

    @property
    def nonzero(self) -> int:
        return sum(1 for x in self.a if x)

    def as_dict(self) -> dict:
        return {"a": list(self.a), "d": self.d}


def winding_profile(f: Polymorphism, p: int, q: int) -> WindingProfile:
    """(a_1..a_L; d) for a polymorphism C_n^L -> K_{p/q}, n = f.base_size."""
    _check_target(p, q)
    n, L = f.base_size, f.arity
    if n % 2 == 0:
        raise InvalidInput("the source cycle must be odd")
    if not f.is_polymorphism(cycle(n), circular_clique(p, q)):
        raise InvalidInput(f"not a polymorphism C_{n}^{L} -> K_{p}/{q}")

    def image(walk):
        return [f.table[tuple_index(x, n)] for x in walk]

    a = tuple(winding(image(coordinate_walk(n, L, c)), p, q) for c in range(1, L + 1))
    d = winding(image(diagonal_walk(n, L)), p, q)
    return WindingProfile(a, d)


def mirror(f: Polymorphism, coords: Sequence[int] | None = None) -> Polymorphism:
    """Precompose with the reflection i -> 1 - i (mod n), which fixes the
    edge {0, 1}, on the given coordinates (all when None; 1-based)."""
    n, L = f.base_size, f.arity
    chosen = set(range(1, L + 1) if coords is None else coords)
    table = []
    for xs in itertools.product(range(n), repeat=L):
        ys = [(1 - x) % n if c + 1 in chosen else x for c, x in enumerate(xs)]
        table.append(f.table[tuple_index(ys, n)])
    return Polymorphism(n, L, tuple(table))


def compose_target(f: Polymorphism, g: Sequence[int]) -> Polymorphism:
    """Post-compose f with the vertex map g."""
    return Polymorphism(f.base_size, f.arity, tuple(g[x] for x in f.table))
