from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pcsp_adjoint import functors
from pcsp_adjoint.corpus import iso_classes_upto, random_graphs
from pcsp_adjoint.errors import BudgetExceeded, HasLoop, InvalidInput
from pcsp_adjoint.graph import Graph, build, circular_clique, clique, cycle, kneser, path, power
from pcsp_adjoint.search import (Coloring, VertexMap, available_kernels, chromatic_bounds, chromatic_number,
                                 count_homomorphisms, enumerate_homomorphisms, find_coloring,
                                 find_homomorphism, fold_dominated, hom_exists, homomorphic,
                                 homomorphisms_at, odd_girth, use_kernel)


def naive_hom(G: Graph, H: Graph) -> bool:
    """Reference oracle: try every map V(G) -> V(H)."""
    arcs = sorted(G.arcs)
    for image in itertools.product(range(H.n), repeat=G.n):
        if all((image[u], image[v]) in H.arcs for u, v in arcs):
            return True
    return False


def naive_count(G: Graph, H: Graph) -> int:
    arcs = sorted(G.arcs)
    return sum(all((im[u], im[v]) in H.arcs for u, v in arcs) for im in itertools.product(range(H.n), repeat=G.n))


def test_c5_to_k3(kernel):
    w = hom_exists(cycle(5), clique(3))
    assert w is not None and w.is_homomorphism(cycle(5), clique(3))


def test_k4_not_to_k72(kernel):
    assert hom_exists(clique(4), circular_clique(7, 2)) is None


def test_circular_order(kernel):
    pairs = [(p, q) for p in range(2, 10) for q in range(1, p) if p > 2 * q]
    for p, q in pairs:
        for p2, q2 in pairs:
            expect = p * q2 <= p2 * q
            assert homomorphic(circular_clique(p, q), circular_clique(p2, q2)) == expect, (p, q, p2, q2)


def test_chromatic_examples():
    assert chromatic_number(cycle(5)) == 3
    assert chromatic_number(kneser(5, 2)) == 3
    for n in range(1, 9):
        assert chromatic_number(clique(n)) == n
    assert chromatic_number(Graph(0)) == 0
    assert chromatic_number(Graph(3)) == 1
    with pytest.raises(HasLoop):
        chromatic_number(Graph(2, [(0, 0), (0, 1), (1, 0)]))


def test_kneser_formula():
    for n, k in [(5, 2), (6, 2), (7, 3), (8, 3)]:
        assert chromatic_number(kneser(n, k)) == n - 2 * k + 2


def test_odd_girth():
    assert odd_girth(cycle(7)) == 7
    assert odd_girth(clique(2)) == float("inf")
    assert odd_girth(circular_clique(7, 2)) == 3
    assert odd_girth(build("petersen")) == 5
    with pytest.raises(InvalidInput):
        odd_girth(Graph(2, [(0, 1)]))


def test_completeness_against_naive(kernel):
    targets = [clique(2), clique(3), clique(4)]
    for G in iso_classes_upto(5, "graph"):
        for H in targets:
            assert homomorphic(G, H) == naive_hom(G, H), (G.arcs, H.n)


def test_digraph_targets_against_naive(kernel):
    rng = random.Random(3)
    for _ in range(300):
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        G = Graph(n, [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.3])
        H = Graph(m, [(u, v) for u in range(m) for v in range(m) if rng.random() < 0.5])
        res = find_homomorphism(G, H)
        assert (res.status == "found") == naive_hom(G, H)
        if res.witness:
            assert res.witness.is_homomorphism(G, H)


def test_counts_against_naive(kernel):
    rng = random.Random(5)
    for _ in range(60):
        G = random_graphs(1, (3, 4, 5), rng.randint(0, 10**6))[0]
        H = Graph(3, [(u, v) for u in range(3) for v in range(3) if rng.random() < 0.6])
        assert count_homomorphisms(G, H) == naive_count(G, H)
        assert len(list(enumerate_homomorphisms(G, H))) == naive_count(G, H)


def test_kernels_agree():
    if len(available_kernels()) < 2:
        pytest.skip("compiled kernel not built")
    cases = [(functors.arc_digraph(functors.arc_digraph(clique(4))), clique(3)), (build("petersen"), clique(3)),
             (clique(4), circular_clique(7, 2)), (power(cycle(5), 2), clique(3))]
    for G, H in cases:
        out = {}
        for k in available_kernels():
            with use_kernel(k):
                r = find_homomorphism(G, H)
                out[k] = (r.status, r.nodes, r.witness, count_homomorphisms(G, H))
        assert out["python"] == out["compiled"]


def test_enumeration_is_duplicate_free_and_ordered(kernel):
    sols = [v.image for v in enumerate_homomorphisms(power(cycle(5), 2), clique(3))]
    assert len(sols) == len(set(sols)) == 7560
    picked = homomorphisms_at(power(cycle(5), 2), clique(3), [0, 17, 7559])
    assert [p.image for p in picked] == [sols[0], sols[17], sols[7559]]


def test_budget_gives_unknown(kernel):
    G = kneser(6, 2)
    res = find_homomorphism(G, clique(3), budget=3)
    assert res.status == "unknown" and res.exists is None
    with pytest.raises(BudgetExceeded):
        hom_exists(G, clique(3), budget=3)
    lo, hi = chromatic_bounds(G, budget=3)
    assert lo < hi
    with pytest.raises(BudgetExceeded):
        chromatic_number(G, budget=3)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("PCSP_ADJOINT_BUDGET", "2")
    assert find_homomorphism(kneser(6, 2), clique(3)).status == "unknown"


def test_folding_witness_reconstruction():
    omega = functors.omega(circular_clique(7, 2), 3)
    folded = fold_dominated(omega)
    assert len(folded.alive) < omega.n
    res = find_homomorphism(omega, clique(3))
    assert res.status == "found" and res.witness.is_homomorphism(omega, clique(3))
    assert res.searched_vertices == len(folded.alive)


def test_folding_respects_loops():
    G = Graph(3, [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1)])
    folded = fold_dominated(G)
    for u, v in folded.folds:
        assert not G.has_arc(u, u) or G.has_arc(v, v)
    for H in (clique(2), Graph(2, [(1, 1), (0, 1), (1, 0)])):
        assert homomorphic(G, H) == naive_hom(G, H)


def test_coloring_checks():
    c = Coloring(3, (0, 1, 0, 1, 2))
    assert c.is_proper(cycle(5)) and c.colours_used == 3
    assert not Coloring(2, (0, 1, 0, 1, 0)).is_proper(cycle(5))
    assert find_coloring(cycle(5), 2) is None
    assert find_coloring(Graph(1, [(0, 0)]), 5) is None
    assert VertexMap((0, 1, 0, 1, 2)).bad_arc(cycle(5), clique(3)) is None
    assert VertexMap((0, 1, 0, 1, 0)).bad_arc(cycle(5), clique(2)) == (0, 4)


def test_identity_is_always_found(kernel):
    for G in iso_classes_upto(4, "digraph")[:60]:
        assert homomorphic(G, G)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_transitivity_and_chromatic_monotone(seed):
    G, H, K = random_graphs(3, (3, 4, 5), seed)
    if homomorphic(G, H) and homomorphic(H, K):
        assert homomorphic(G, K)
    if homomorphic(G, H):
        assert chromatic_number(G) <= chromatic_number(H)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_witnesses_validate(seed):
    G, H = random_graphs(2, (4, 5, 6), seed, p=0.4)
    res = find_homomorphism(G, H)
    if res.witness is not None:
        assert res.witness.is_homomorphism(G, H)
    else:
        assert res.status == "none"


def test_deterministic_witness():
    a = find_homomorphism(build("petersen"), clique(3))
    b = find_homomorphism(build("petersen"), clique(3))
    assert a.witness == b.witness and a.nodes == b.nodes


def test_path_into_edge():
    assert homomorphic(path(5), clique(2))
