"""Polymorphisms G^L -> H stored as dense tables, their minors and
essential coordinates.

Coordinates are numbered 1..L, matching the usual x_1, .., x_L; a minor
map pi: [m] -> [n] is given as the sequence (pi(1), .., pi(m)).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import check_cap
from .errors import InvalidInput
from .graph import Graph, power
from .search import VertexMap, count_homomorphisms, enumerate_homomorphisms, homomorphisms_at


def tuple_index(xs: Sequence[int], n: int) -> int:
    """Row-major index of ``xs`` in V(G)^L with first coordinate most significant."""
    idx = 0
    for x in xs:
        idx = idx * n + x
    return idx


def index_tuple(idx: int, n: int, L: int) -> tuple[int, ...]:
    out = [0] * L
    for i in range(L - 1, -1, -1):
        idx, out[i] = divmod(idx, n)
    return tuple(out)


@dataclass(frozen=True)
class Polymorphism:
    """An L-ary function V(G)^L -> V(H) with values listed in row-major
    order over ``power(G, L)``; ``base_size`` is |V(G)|."""

    base_size: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.base_size**self.arity:
            raise InvalidInput("table size must be |V(G)|^arity")

    def __call__(self, *xs: int) -> int:
        if len(xs) != self.arity:
            raise InvalidInput(f"expected {self.arity} arguments, got {len(xs)}")
        return self.table[tuple_index(xs, self.base_size)]

    def is_polymorphism(self, G: Graph, H: Graph) -> bool:
        if G.n != self.base_size:
            return False
        return VertexMap(self.table).is_homomorphism(power(G, self.arity), H)

    @classmethod
    def from_function(cls, n: int, arity: int, fn) -> "Polymorphism":
        return cls(n, arity, tuple(fn(*xs) for xs in itertools.product(range(n), repeat=arity)))

    @classmethod
    def projection(cls, n: int, arity: int, coord: int) -> "Polymorphism":
        if not 1 <= coord <= arity:
            raise InvalidInput(f"coordinate must lie in 1..{arity}")
        return cls.from_function(n, arity, lambda *xs: xs[coord - 1])


def enumerate_polymorphisms(G: Graph, H: Graph, L: int, limit: int | None = None,
                            budget: int | None = None) -> Iterator[Polymorphism]:
    """Every homomorphism power(G, L) -> H exactly once."""
    check_cap(f"polymorphism domain |V(G)|^{L}", G.n**L)
    P = power(G, L)
    for vm in enumerate_homomorphisms(P, H, limit=limit, budget=budget):
        yield Polymorphism(G.n, L, vm.image)


def count_polymorphisms(G: Graph, H: Graph, L: int, budget: int | None = None) -> int:
    check_cap(f"polymorphism domain |V(G)|^{L}", G.n**L)
    return count_homomorphisms(power(G, L), H, budget=budget)


def sample_polymorphisms(G: Graph, H: Graph, L: int, count: int, seed: int = 0,
                         total: int | None = None) -> list[Polymorphism]:
    """``count`` distinct polymorphisms drawn uniformly (seeded) from the
    whole of Pol(G, H) at arity L, in enumeration order; all of them when
    there are at most ``count``.  ``total`` skips the counting pass."""
    if total is None:
        total = count_polymorphisms(G, H, L)
    if total <= count:
        return list(enumerate_polymorphisms(G, H, L))
    picks = random.Random(seed).sample(range(total), count)
    return [Polymorphism(G.n, L, vm.image) for vm in homomorphisms_at(power(G, L), H, picks)]


def minor(f: Polymorphism, pi: Sequence[int], n: int) -> Polymorphism:
    """The n-ary minor ``(x_1..x_n) -> f(x_pi(1), .., x_pi(m))`` where m is
    the arity of f and ``pi[i-1] = pi(i)``."""
    if len(pi) != f.arity:
        raise InvalidInput(f"minor map has {len(pi)} entries but f has arity {f.arity}")
    if any(not 1 <= p <= n for p in pi):
        raise InvalidInput(f"minor map must send [{f.arity}] into [{n}]")
    b = f.base_size
    table = []
    for xs in itertools.product(range(b), repeat=n):
        table.append(f.table[tuple_index([xs[p - 1] for p in pi], b)])
    return Polymorphism(b, n, tuple(table))


def all_minor_maps(m: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, n + 1), repeat=m)


def essential_coordinates(f: Polymorphism) -> set[int]:
    """Coordinates i for which changing x_i alone can change the value."""
    b, L, t = f.base_size, f.arity, f.table
    out = set()
    for i in range(L):
        stride = b ** (L - 1 - i)
        for idx in range(len(t)):
            digit = (idx // stride) % b
            if digit and t[idx] != t[idx - digit * stride]:
                out.add(i + 1)
                break
    return out


def essential_arity(f: Polymorphism) -> int:
    return len(essential_coordinates(f))
