from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pcsp_adjoint.config import cap_override
from pcsp_adjoint.corpus import iso_classes
from pcsp_adjoint.errors import CapExceeded, InvalidInput, ParseError
from pcsp_adjoint.graph import (Graph, GraphFamilySpec, add_universal_vertex, arcless, build, circular_clique,
                                clique, cycle, exponential, graph_hash, is_isomorphic, isomorphism, kneser,
                                parse, path, power, serialize, tensor_product)
from pcsp_adjoint.search import chromatic_number, homomorphic


def digraphs(max_n=4, loops=True):
    @st.composite
    def build_one(draw):
        n = draw(st.integers(1, max_n))
        slots = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
        chosen = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
        return Graph(n, chosen)
    return build_one()


def test_clique_counts():
    K3 = build("clique:3")
    assert K3.n == 3 and len(K3.arcs) == 6 and not K3.has_loops
    assert len(build("clique:4").arcs) == 12


def test_circular_5_2_is_c5():
    assert is_isomorphic(build("circular:5/2"), cycle(5))


def test_circular_7_2_neighbourhoods():
    K = circular_clique(7, 2)
    assert K.n == 7
    for i in range(7):
        assert set(K.out_neighbors(i)) == {(i + d) % 7 for d in (2, 3, 4, 5)}
    # residues at least 2 apart: 7 * 4 / 2 undirected edges
    assert len(K.edges()) == 14


@pytest.mark.parametrize("p", range(3, 9))
def test_circular_p_1_is_clique(p):
    assert circular_clique(p, 1) == clique(p)


def test_kneser_5_2_is_petersen():
    P = kneser(5, 2)
    assert P.n == 10 and len(P.edges()) == 15
    assert all(P.degree(v) == 3 for v in range(10))
    assert is_isomorphic(P, build("petersen"))


@pytest.mark.parametrize("spec", ["circular:4/2", "circular:3/2", "kneser:3,2", "clique:0", "cycle:x", "blob:3", "circular:7"])
def test_bad_specs_rejected(spec):
    with pytest.raises(InvalidInput):
        build(spec)


def test_spec_parse_round_trip():
    s = GraphFamilySpec.parse("circular:7/2")
    assert s.kind == "circular_clique"
    assert build(s) == circular_clique(7, 2)


def test_tensor_examples():
    K2 = clique(2)
    P = tensor_product(K2, K2)
    assert P.n == 4 and len(P.edges()) == 2
    assert tensor_product(cycle(5), Graph(1)).arcs == frozenset()
    C = tensor_product(cycle(5), cycle(5))
    assert C.n == 25 and all(len(C.out_neighbors(v)) == 4 for v in range(25))


def test_row_major_encoding():
    G, H = path(2), cycle(3)
    P = tensor_product(G, H)
    for (g, g2), (h, h2) in itertools.product(G.arcs, H.arcs):
        assert (g * 3 + h, g2 * 3 + h2) in P.arcs
    assert len(P.arcs) == len(G.arcs) * len(H.arcs)


def test_power_examples():
    K2 = clique(2)
    assert power(K2, 1) == K2
    assert power(cycle(5), 2) == tensor_product(cycle(5), cycle(5))
    assert power(clique(3), 3).n == 27
    with pytest.raises(InvalidInput):
        power(K2, 0)
    with cap_override(100), pytest.raises(CapExceeded):
        power(clique(3), 5)


def test_exponential_examples():
    E = exponential(clique(2), Graph(1))
    assert E.n == 2 and len(E.arcs) == 4  # complete with loops
    E = exponential(clique(2), clique(2))
    assert E.n == 4
    # functions encoded row-major over F's vertices: (0,0) and (1,1) are constants
    assert not E.has_arc(0, 0) and not E.has_arc(3, 3)
    with cap_override(10), pytest.raises(CapExceeded):
        exponential(clique(3), clique(3))


def test_universal_vertex():
    for n in range(1, 5):
        assert add_universal_vertex(clique(n)) == clique(n + 1)
    assert add_universal_vertex(arcless(1)) == clique(2)
    assert chromatic_number(add_universal_vertex(cycle(5))) == 4


def test_parse_examples():
    assert parse("graph 2 1\n0 1") == clique(2)
    D = parse("digraph 2 1\n0 1")
    assert D.arcs == {(0, 1)} and not D.is_symmetric
    text = "# c\ndigraph 3 3\n2 0\n0 1\n1 1\n"
    assert serialize(parse(text)) == "digraph 3 3\n0 1\n1 1\n2 0\n"


@pytest.mark.parametrize("text,line", [
    ("grph 2 1\n0 1", 1),
    ("graph 2 1\n0 5", 2),
    ("graph 3 2\n0 1\n1 0", 3),
    ("digraph 2 2\n0 1\n0 1", 3),
    ("graph 2 2\n0 1", 2),
    ("graph 2 1\n0 one", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line


def test_graph_rejects_bad_arcs():
    with pytest.raises(InvalidInput):
        Graph(2, [(0, 2)])


def test_hash_ignores_comments():
    G = cycle(5)
    assert graph_hash(G) == graph_hash(parse(serialize(G, ["hello"])))


@settings(max_examples=200, deadline=None)
@given(digraphs(5))
def test_round_trip(G):
    assert parse(serialize(G)) == G
    assert G.is_symmetric == all((v, u) in G.arcs for u, v in G.arcs)


@settings(max_examples=60, deadline=None)
@given(digraphs(3), digraphs(3))
def test_tensor_commutes_up_to_reindexing(G, H):
    GH, HG = tensor_product(G, H), tensor_product(H, G)
    swap = [h * G.n + g for g in range(G.n) for h in range(H.n)]
    assert GH.relabel(swap) == HG


@settings(max_examples=40, deadline=None)
@given(digraphs(2), digraphs(2), digraphs(3))
def test_tensor_associative_up_to_reindexing(A, B, C):
    left = tensor_product(tensor_product(A, B), C)
    right = tensor_product(A, tensor_product(B, C))
    # both use the mixed-radix code a*|B||C| + b*|C| + c
    assert left == right


def test_exponential_adjunction_exhaustive():
    Fs = [F for n in (1, 2, 3) for F in iso_classes(n, "loop-graph")]
    Gs = [G for n in (1, 2, 3, 4) for G in iso_classes(n, "graph")]
    Hs = [H for n in (1, 2, 3) for H in iso_classes(n, "graph")][:6]
    for F in Fs:
        for H in Hs:
            HF = exponential(H, F)
            for G in Gs:
                assert homomorphic(tensor_product(F, G), H) == homomorphic(G, HF), (F, G, H)


def test_isomorphism_returns_a_bijection():
    G = circular_clique(5, 2)
    perm = isomorphism(cycle(5), G)
    assert sorted(perm) == list(range(5))
    assert cycle(5).relabel(perm) == G
    assert isomorphism(cycle(5), clique(5)) is None
