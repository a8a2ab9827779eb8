"""The eight acceptance criteria, each at its stated scale and time limit.

Every test records one PASS/FAIL line; the lines are printed directly and
again in the pytest terminal summary.
"""

from __future__ import annotations

import logging
import time

import pytest

from conftest import ACCEPTANCE
from pcsp_adjoint import functors as fn
from pcsp_adjoint.graph import circular_clique, clique, cycle, is_isomorphic
from pcsp_adjoint.reductions import color_push, colex_subsets
from pcsp_adjoint.search import Coloring, find_homomorphism, fold_dominated, hom_exists
from pcsp_adjoint.suites import poljak_rodl_corpus, run_suite

log = logging.getLogger(__name__)


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        if exc_type is None and elapsed >= self.limit:
            extra += f"; over the {self.limit:.0f}s limit"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} ({elapsed:.1f}s{extra})"
        ACCEPTANCE[self.number] = (ok, line)
        print(line)
        if exc_type is None:
            assert elapsed < self.limit, line
        return False


def assert_suite(result: list[dict]) -> int:
    checked = 0
    for prop in result:
        assert prop["passed"], (prop["property"], prop["counterexamples"])
        checked += prop["checked"]
    return checked


def test_criterion_1_poljak_rodl_identity():
    with Criterion(1, "chi(delta G) = min{n : chi(G) <= b(n)}", 120) as c:
        result = run_suite("poljak-rodl")
        identity = next(p for p in result if p["property"].startswith("chi(delta G)"))
        assert identity["passed"] and identity["checked"] == len(poljak_rodl_corpus()) == 52 + 30
        assert_suite(result)
        c.notes.append(f"{identity['checked']} graphs, 0 counterexamples")


def test_criterion_2_colouring_transfers():
    with Criterion(2, "color_push / color_lift round trip, delta K6 4-coloured", 60) as c:
        result = run_suite("poljak-rodl")
        trip = next(p for p in result if p["property"] == "color_push then color_lift")
        assert trip["passed"] and trip["checked"] == 82
        K6 = clique(6)
        pushed = color_push(Coloring(6, tuple(range(6))), K6, 4)
        dK6 = fn.arc_digraph(K6)
        assert pushed.k == 4 and pushed.is_proper(dK6)
        assert len(colex_subsets(4, 2)) == 6  # colours of K6 are the 2-subsets of [4]
        c.notes.append(f"{trip['checked']} graphs; delta K6 uses {pushed.colours_used} colours")


def test_criterion_3_concrete_facts():
    with Criterion(3, "Gamma_3 C5 = K5, delta K6 -> K4, delta delta K4 -> K3, K4 -/-> K_7/2", 60) as c:
        assert is_isomorphic(fn.power_graph(cycle(5), 3), clique(5))
        w = hom_exists(fn.arc_digraph(clique(6)), clique(4))
        assert w is not None
        dd = fn.arc_digraph(fn.arc_digraph(clique(4)))
        assert dd.n == 36
        res = find_homomorphism(dd, clique(3), budget=10**7)
        assert res.status == "found" and res.witness.is_homomorphism(dd, clique(3))
        assert find_homomorphism(clique(4), circular_clique(7, 2)).status == "none"
        c.notes.append(f"delta delta K4 coloured in {res.nodes} nodes")


def test_criterion_4_adjunctions():
    with Criterion(4, "adjointness biconditionals", 600) as c:
        checked = assert_suite(run_suite("adjunctions"))
        c.notes.append(f"{checked} checks, 0 counterexamples")


def test_criterion_5_topology_table():
    with Criterion(5, "box complex homology table and Bx(K4)/Z2", 300) as c:
        result = run_suite("topology")
        assert_suite(result)
        names = {p["property"] for p in result}
        assert {"box complex homology table", "quotients of box complexes"} <= names
        c.notes.append("K2..K5, C5, C7, C9, K_7/2, Petersen; quotient torsion {2}")


def test_criterion_6_winding():
    with Criterion(6, "winding profiles of Pol(C_n, K_p/q)", 600) as c:
        checked = assert_suite(run_suite("winding"))
        c.notes.append(f"{checked} polymorphisms, 0 violations")


def test_criterion_7_omega_k72():
    with Criterion(7, "Omega_3(K_7/2) -> K3", 1800) as c:
        O = fn.omega(circular_clique(7, 2), 3)
        folded = fold_dominated(O)
        res = find_homomorphism(O, clique(3), budget=10**8)
        stats = f"{O.n} raw vertices, {len(folded.folds)} folds, {len(folded.alive)} searched, {res.nodes} nodes"
        log.info("omega fold statistics: %s", stats)
        if res.status != "found":
            # the criterion allows a downgrade to a warning with the statistics logged
            c.notes.append(f"WARNING {res.status}: {stats}")
            pytest.skip(f"Omega_3(K_7/2) search inconclusive: {stats}")
        assert O.n == 896 and res.witness.is_homomorphism(O, clique(3))
        c.notes.append(stats)


def test_criterion_8_minion_closure():
    with Criterion(8, "minor closure and essential coordinates of Pol(K2,K2), Pol(C5,K3)", 120) as c:
        checked = assert_suite(run_suite("minion"))
        c.notes.append(f"{checked} polymorphisms checked")
