from __future__ import annotations

import pytest

from pcsp_adjoint.corpus import (FAMILY_SPECS, family_corpus, iso_classes, iso_classes_upto, random_digraph_pairs,
                                 random_graphs)
from pcsp_adjoint.errors import InvalidInput
from pcsp_adjoint.graph import is_isomorphic


# OEIS A000088, A000666, A000595
@pytest.mark.parametrize("kind,counts", [
    ("graph", [1, 2, 4, 11, 34]),
    ("loop-graph", [2, 6, 20, 90]),
    ("digraph", [2, 10, 104]),
])
def test_class_counts(kind, counts):
    assert [len(iso_classes(n, kind)) for n in range(1, len(counts) + 1)] == counts


def test_representatives_pairwise_non_isomorphic():
    reps = iso_classes(4, "graph")
    for i, G in enumerate(reps):
        assert G.is_symmetric and not G.has_loops
        for H in reps[i + 1:]:
            assert not is_isomorphic(G, H)


def test_bad_arguments():
    with pytest.raises(InvalidInput):
        iso_classes(6)
    with pytest.raises(InvalidInput):
        iso_classes(3, "hypergraph")


def test_random_corpora_are_seeded():
    a = random_graphs(10, (6, 7), seed=1)
    assert a == random_graphs(10, (6, 7), seed=1)
    assert all(G.n in (6, 7) and G.is_symmetric and not G.has_loops for G in a)
    pairs = random_digraph_pairs(5, 4, seed=3)
    assert pairs == random_digraph_pairs(5, 4, seed=3)
    assert len(iso_classes_upto(3, "graph")) == 7


def test_family_corpus():
    names = [name for name, _ in family_corpus()]
    assert tuple(names) == FAMILY_SPECS
