from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from pcsp_adjoint.errors import InvalidInput
from pcsp_adjoint.search import homomorphisms_at
from pcsp_adjoint.graph import circular_clique, cycle, power
from pcsp_adjoint.polymorphisms import Polymorphism, enumerate_polymorphisms, minor, sample_polymorphisms
from pcsp_adjoint.winding import (WindingProfile, compose_target, coordinate_walk, cycle_to_circular,
                                  diagonal_walk, mirror, step_lift, winding, winding_profile)


def iso_poly(n: int, L: int, coord: int) -> Polymorphism:
    iso = cycle_to_circular(n)
    return compose_target(Polymorphism.projection(n, L, coord), iso)


def test_step_lift_is_odd_and_small():
    for p, q in ((5, 2), (7, 2), (7, 3), (9, 4), (3, 1)):
        for i in range(p):
            for j in circular_clique(p, q).out_neighbors(i):
                s = step_lift(i, j, p, q)
                assert s % 2 == 1 and abs(s) <= p - 2 * q
        assert step_lift(0, q, p, q) > 0


def test_winding_examples():
    lap = [0, 2, 4, 1, 3, 0]
    assert winding(lap, 5, 2) == 1
    assert winding(lap + lap[1:], 5, 2) == 2
    assert winding([0, 2, 0], 5, 2) == 0
    assert winding(list(reversed(lap)), 5, 2) == -1


def test_winding_errors():
    with pytest.raises(InvalidInput):
        winding([0, 2, 4], 5, 2)
    with pytest.raises(InvalidInput):
        winding([0, 3, 0], 6, 2)
    with pytest.raises(InvalidInput):
        winding([0, 1, 0], 5, 1)  # 5/1 is outside (2, 4)
    with pytest.raises(InvalidInput):
        winding([0, 1, 0], 5, 2)  # not an arc


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_sum_divisible_on_random_closed_walks(seed):
    rng = random.Random(seed)
    p, q = rng.choice([(5, 2), (7, 2), (7, 3), (3, 1), (9, 4), (11, 4)])
    K = circular_clique(p, q)
    walk = [rng.randrange(p)]
    for _ in range(rng.randint(1, 20)):
        walk.append(rng.choice(K.out_neighbors(walk[-1])))
    # close it with a walk back, which exists since K is connected and non-bipartite
    back = [walk[-1]]
    while back[-1] != walk[0] or len(back) < 2:
        back.append(rng.choice(K.out_neighbors(back[-1])))
        if len(back) > 400:
            return
    closed = walk + back[1:]
    w = winding(closed, p, q)
    assert winding(list(reversed(closed)), p, q) == -w


def test_walk_shapes():
    cw = coordinate_walk(5, 2, 1)
    assert len(cw) == 11 and cw[0] == cw[-1] == (0, 0)
    assert [x[0] for x in cw] == [t % 5 for t in range(11)]
    assert [x[1] for x in cw] == [t % 2 for t in range(11)]
    assert diagonal_walk(3, 2) == [(0, 0), (1, 1), (2, 2), (0, 0)]


def test_cycle_to_circular_is_iso():
    for n in (3, 5, 7, 9):
        iso = cycle_to_circular(n)
        k = (n - 1) // 2
        assert cycle(n).relabel(iso) == circular_clique(n, k)


def test_projection_profiles():
    assert winding_profile(iso_poly(5, 1, 1), 5, 2) == WindingProfile((2,), 1)
    prof = winding_profile(iso_poly(5, 2, 1), 5, 2)
    assert prof == WindingProfile((2, 0), 1)
    assert winding_profile(mirror(iso_poly(5, 2, 1)), 5, 2) == WindingProfile((-2, 0), -1)


def test_profile_rejects_non_polymorphism():
    with pytest.raises(InvalidInput):
        winding_profile(Polymorphism(5, 1, (0, 0, 0, 0, 0)), 5, 2)
    with pytest.raises(InvalidInput):
        winding_profile(Polymorphism(4, 1, (0, 1, 0, 1)), 5, 2)


def members(n, p, q, L):
    G, H = cycle(n), circular_clique(p, q)
    if (n, p, q, L) == (5, 7, 2, 2):
        # too many to count; take seeded ordinals from the first 2*10^5 in enumeration order
        picks = random.Random(2).sample(range(200_000), 60)
        return [Polymorphism(n, L, vm.image) for vm in homomorphisms_at(power(G, L), H, picks)]
    return sample_polymorphisms(G, H, L, 60, seed=2)


CASES = [(5, 3, 1, 1), (5, 3, 1, 2), (5, 5, 2, 1), (5, 5, 2, 2), (7, 5, 2, 1), (7, 3, 1, 1),
         (5, 7, 2, 1), (7, 7, 2, 1), (5, 7, 2, 2)]


@pytest.mark.parametrize("n,p,q,L", CASES)
def test_profile_identities(n, p, q, L):
    fs = members(n, p, q, L)
    assert fs
    for f in fs:
        prof = winding_profile(f, p, q)
        assert prof.violations() == []
        assert prof.nonzero < p**n
        m = winding_profile(mirror(f), p, q)
        assert m.a == tuple(-x for x in prof.a) and m.d == -prof.d
        if L == 2:
            merged = winding_profile(minor(f, (1, 1), 1), p, q)
            assert merged.a == (prof.a[0] + prof.a[1],)
            assert merged.d == prof.d


def test_as_dict():
    assert WindingProfile((2, 0), 1).as_dict() == {"a": [2, 0], "d": 1}
    assert WindingProfile((2, 2), 1).violations()


def test_all_c5_to_k3_unary():
    for f in enumerate_polymorphisms(cycle(5), circular_clique(3, 1), 1):
        prof = winding_profile(f, 3, 1)
        assert prof.d % 2 == 1 and prof.a == (2 * prof.d,)
