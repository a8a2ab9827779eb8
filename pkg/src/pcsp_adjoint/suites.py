"""Property suites behind ``pcsp-adjoint check``.

Each suite is an ordered list of properties.  A property is a top-level
function returning a ``PropertyResult``; suites may fan the properties out
over worker processes, and results always come back in declared order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import functors as fn
from .corpus import iso_classes_upto, random_digraph_pairs, random_graphs
from .errors import InvalidInput
from .graph import (Graph, build, circular_clique, clique, cycle, exponential, kneser, serialize,
                    tensor_product)
from .polymorphisms import (Polymorphism, all_minor_maps, count_polymorphisms, enumerate_polymorphisms,
                            essential_coordinates, minor, sample_polymorphisms)
from .reductions import color_lift, color_push
from .search import chromatic_number, find_coloring, homomorphic
from .topology import box_complex, hom_complex
from .winding import mirror, winding_profile

MAX_COUNTEREXAMPLES = 5
POLJAK_RODL_SEED = 20240611
DIGRAPH_PAIR_SEED = 7
WINDING_SEED = 11
WINDING_FULL_LIMIT = 10_000
WINDING_SAMPLE = 200


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, example: dict) -> None:
        self.failures += 1
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(example)

    def as_dict(self) -> dict:
        return {
            "property": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
        }


# ----------------------------------------------------------------------
# adjunctions
# ----------------------------------------------------------------------

def _adjunction(name: str, lefts: list[Graph], rights: list[Graph], left: Callable, right: Callable,
                pairs: list[tuple[Graph, Graph]] = ()) -> PropertyResult:
    """left(A) -> B  iff  A -> right(B), over lefts x rights and extra pairs."""
    res = PropertyResult(name)
    lcache: dict[Graph, Graph] = {}
    rcache: dict[Graph, Graph] = {}

    def check(A: Graph, B: Graph) -> None:
        if A not in lcache:
            lcache[A] = left(A)
        if B not in rcache:
            rcache[B] = right(B)
        lhs = homomorphic(lcache[A], B)
        rhs = homomorphic(A, rcache[B])
        res.checked += 1
        if lhs != rhs:
            res.fail({"left": serialize(A), "right": serialize(B), "lhs": lhs, "rhs": rhs})

    for A in lefts:
        for B in rights:
            check(A, B)
    for A, B in pairs:
        check(A, B)
    return res


def prop_lambda_gamma(k: int) -> PropertyResult:
    graphs = iso_classes_upto(4, "loop-graph")
    return _adjunction(f"lambda_{k} -| gamma_{k}", graphs, graphs,
                       lambda G: fn.subdivide(G, k), lambda H: fn.power_graph(H, k))


def prop_gamma_omega() -> PropertyResult:
    return _adjunction("gamma_3 -| omega_3", iso_classes_upto(4, "loop-graph"), iso_classes_upto(3, "loop-graph"),
                       lambda G: fn.power_graph(G, 3), lambda H: fn.omega(H, 3))


def _digraph_pairs() -> tuple[list[Graph], list[tuple[Graph, Graph]]]:
    return iso_classes_upto(3, "digraph"), random_digraph_pairs(100, 4, DIGRAPH_PAIR_SEED)


def prop_sym_sub() -> PropertyResult:
    ds, extra = _digraph_pairs()
    return _adjunction("sym -| sub", ds, ds, fn.sym, fn.sub, extra)


def prop_deltaL_delta() -> PropertyResult:
    ds, extra = _digraph_pairs()
    return _adjunction("delta_L -| delta", ds, ds, fn.delta_left, fn.arc_digraph, extra)


def prop_delta_deltaR() -> PropertyResult:
    ds, extra = _digraph_pairs()
    return _adjunction("delta -| delta_R", ds, ds, fn.arc_digraph, fn.delta_right, extra)


def prop_product_exponential() -> PropertyResult:
    res = PropertyResult("F x - -| (-)^F")
    Fs = iso_classes_upto(3, "loop-graph")
    Gs = iso_classes_upto(4, "loop-graph")
    Hs = Fs
    for F in Fs:
        exps = {H: exponential(H, F) for H in Hs}
        for G in Gs:
            FG = tensor_product(F, G)
            for H in Hs:
                lhs = homomorphic(FG, H)
                rhs = homomorphic(G, exps[H])
                res.checked += 1
                if lhs != rhs:
                    res.fail({"F": serialize(F), "G": serialize(G), "H": serialize(H), "lhs": lhs, "rhs": rhs})
    return res


def prop_unit_counit() -> PropertyResult:
    """Lambda_3 G -> Omega_3 G and Gamma_3 Lambda_3 G -> G."""
    res = PropertyResult("lambda_3 G -> omega_3 G, gamma_3 lambda_3 G -> G")
    for G in iso_classes_upto(4, "loop-graph"):
        LG = fn.subdivide(G, 3)
        for ok, what in ((homomorphic(LG, fn.omega(G, 3)), "lambda->omega"),
                         (homomorphic(fn.power_graph(LG, 3), G), "gamma lambda->id")):
            res.checked += 1
            if not ok:
                res.fail({"graph": serialize(G), "failed": what})
    return res


# ----------------------------------------------------------------------
# arc digraph identity and colouring transfers
# ----------------------------------------------------------------------

def poljak_rodl_corpus() -> list[Graph]:
    return iso_classes_upto(5, "graph") + random_graphs(30, (6, 7), POLJAK_RODL_SEED)


def prop_poljak_rodl() -> PropertyResult:
    res = PropertyResult("chi(delta G) = min{n : chi(G) <= b(n)}")
    for G in poljak_rodl_corpus():
        lhs = chromatic_number(fn.arc_digraph(G))
        rhs = fn.inverse_central_binomial(chromatic_number(G))
        res.checked += 1
        if lhs != rhs:
            res.fail({"graph": serialize(G), "chi_delta": lhs, "predicted": rhs})
    return res


def prop_color_round_trip() -> PropertyResult:
    res = PropertyResult("color_push then color_lift")
    for G in poljak_rodl_corpus():
        n = chromatic_number(fn.arc_digraph(G))
        res.checked += 1
        try:
            c = find_coloring(G, fn.central_binomial(n))
            pushed = color_push(c, G, n)
            lifted = color_lift(pushed, G)
            ok = lifted.is_proper(G) and pushed.k == n and lifted.k <= 2**n
        except (InvalidInput, AssertionError) as exc:
            ok = False
            res.fail({"graph": serialize(G), "error": str(exc)})
            continue
        if not ok:
            res.fail({"graph": serialize(G), "n": n})
    return res


def prop_delta_sym_cliques() -> PropertyResult:
    res = PropertyResult("delta(sym K_b(n)) -> K_n")
    for n in (2, 3, 4):
        res.checked += 1
        if not homomorphic(fn.arc_digraph(fn.sym(clique(fn.central_binomial(n)))), clique(n)):
            res.fail({"n": n})
    return res


# ----------------------------------------------------------------------
# topology
# ----------------------------------------------------------------------

TOPOLOGY_TABLE = (
    ("clique:2", (2, 0, (), 2)),
    ("clique:3", (1, 1, (), 0)),
    ("clique:4", (1, 0, (), 2)),
    ("clique:5", (1, 0, (), 0)),
    ("cycle:5", (1, 1, (), 0)),
    ("cycle:7", (1, 1, (), 0)),
    ("cycle:9", (1, 1, (), 0)),
    ("circular:7/2", (1, 1, (), 0)),
)


def _summary(h) -> tuple:
    return (h.betti0, h.betti1, tuple(h.torsion1), h.euler_characteristic)


def prop_box_table() -> PropertyResult:
    res = PropertyResult("box complex homology table")
    for spec, expected in TOPOLOGY_TABLE:
        got = _summary(box_complex(build(spec)).homology())
        res.checked += 1
        if got != expected:
            res.fail({"graph": spec, "expected": list(expected), "got": list(got)})
    h = box_complex(kneser(5, 2)).homology()
    res.checked += 1
    if h.torsion1:
        res.fail({"graph": "petersen", "torsion1": list(h.torsion1)})
    return res


def prop_quotients() -> PropertyResult:
    res = PropertyResult("quotients of box complexes")
    for spec, expected in (("clique:4", (1, 0, (2,), 1)), ("clique:3", (1, 1, (), 0))):
        got = _summary(box_complex(build(spec)).quotient().homology())
        res.checked += 1
        if got != expected:
            res.fail({"graph": spec, "expected": list(expected), "got": list(got)})
    return res


def prop_box_hom_agree() -> PropertyResult:
    from .corpus import family_corpus

    res = PropertyResult("box and hom complexes agree")
    for spec, G in family_corpus():
        b = box_complex(G).homology()
        h = hom_complex(G).homology()
        res.checked += 1
        if (b.betti0, b.betti1, b.torsion1) != (h.betti0, h.betti1, h.torsion1):
            res.fail({"graph": spec, "box": b.as_dict(), "hom": h.as_dict()})
    return res


def prop_free() -> PropertyResult:
    from .corpus import family_corpus

    res = PropertyResult("box complexes of loopless graphs are free")
    for spec, G in family_corpus():
        res.checked += 1
        if not box_complex(G).is_free():
            res.fail({"graph": spec})
    return res


def prop_hom_product() -> PropertyResult:
    """Hom(K_2, G x H) matches Hom(K_2, G) x Hom(K_2, H) on facets."""
    res = PropertyResult("hom complex of a product")
    G, H = cycle(5), clique(3)
    P = hom_complex(tensor_product(G, H))
    hg, hh = hom_complex(G), hom_complex(H)
    m = H.n
    # arc ((g,h),(g',h')) -> ((g,g'),(h,h'))
    split = {}
    for i, (x, y) in enumerate(P.vertices):
        split[i] = ((x // m, y // m), (x % m, y % m))
    expected = set()
    gi = {a: i for i, a in enumerate(hg.vertices)}
    hi = {a: i for i, a in enumerate(hh.vertices)}
    for fg in hg.facets:
        for fh in hh.facets:
            expected.add(frozenset((a, b) for a in fg for b in fh))
    got = {frozenset((gi[split[v][0]], hi[split[v][1]]) for v in f) for f in P.facets}
    res.checked += 1
    if len(P.vertices) != len(hg.vertices) * len(hh.vertices) or got != expected:
        res.fail({"graphs": ["cycle:5", "clique:3"], "facets": len(P.facets), "expected": len(expected)})
    return res


# ----------------------------------------------------------------------
# winding
# ----------------------------------------------------------------------

WINDING_CASES = tuple((n, p, q, L) for n in (5, 7) for p, q in ((3, 1), (5, 2)) for L in (1, 2))


def winding_members(n: int, p: int, q: int, L: int) -> list[Polymorphism]:
    G, H = cycle(n), circular_clique(p, q)
    total = count_polymorphisms(G, H, L)
    if total <= WINDING_FULL_LIMIT:
        return list(enumerate_polymorphisms(G, H, L))
    return sample_polymorphisms(G, H, L, WINDING_SAMPLE, seed=WINDING_SEED, total=total)


def prop_winding_case(n: int, p: int, q: int, L: int) -> PropertyResult:
    res = PropertyResult(f"winding profiles C_{n}^{L} -> K_{p}/{q}")
    for f in winding_members(n, p, q, L):
        res.checked += 1
        problems = winding_checks(f, p, q)
        if problems:
            res.fail({"table": list(f.table), "problems": problems})
    return res


def winding_checks(f: Polymorphism, p: int, q: int) -> list[str]:
    n, L = f.base_size, f.arity
    prof = winding_profile(f, p, q)
    problems = list(prof.violations())
    if not prof.nonzero < p**n:
        problems.append(f"{prof.nonzero} non-zero entries, not below |H|^n")
    neg = winding_profile(mirror(f), p, q)
    if neg.a != tuple(-x for x in prof.a) or neg.d != -prof.d:
        problems.append(f"mirror gave {neg.as_dict()} for {prof.as_dict()}")
    for c in range(1, L + 1):
        one = winding_profile(mirror(f, [c]), p, q)
        want = tuple(-x if i == c - 1 else x for i, x in enumerate(prof.a))
        if one.a != want:
            problems.append(f"mirroring coordinate {c} gave {list(one.a)}")
    if L == 2:
        merged = winding_profile(minor(f, (1, 1), 1), p, q)
        if merged.a != (prof.a[0] + prof.a[1],):
            problems.append(f"merged minor gave {list(merged.a)} for {list(prof.a)}")
        swapped = winding_profile(minor(f, (2, 1), 2), p, q)
        if swapped.a != prof.a[::-1]:
            problems.append(f"swapped minor gave {list(swapped.a)}")
    else:
        padded = winding_profile(minor(f, (1,), 2), p, q)
        if padded.a != (prof.a[0], 0):
            problems.append(f"dummy coordinate gave {list(padded.a)}")
    return problems


# ----------------------------------------------------------------------
# minions
# ----------------------------------------------------------------------

def essential_bruteforce(f: Polymorphism) -> set[int]:
    """Coordinate i is essential iff f(a, rest) != f(a', rest) for some
    a, a' and some assignment of the other coordinates."""
    b, L = f.base_size, f.arity
    out = set()
    for i in range(L):
        for rest in itertools.product(range(b), repeat=L - 1):
            values = {f(*(rest[:i] + (a,) + rest[i:])) for a in range(b)}
            if len(values) > 1:
                out.add(i + 1)
                break
    return out


def prop_minion(G: Graph, H: Graph, label: str) -> PropertyResult:
    res = PropertyResult(f"minor closure and essential coordinates of Pol({label})")
    pols = {L: set(enumerate_polymorphisms(G, H, L)) for L in (1, 2)}
    for m in (1, 2):
        for f in sorted(pols[m], key=lambda f: f.table):
            res.checked += 1
            if essential_coordinates(f) != essential_bruteforce(f):
                res.fail({"table": list(f.table), "kind": "essential"})
            for n in (1, 2):
                for pi in all_minor_maps(m, n):
                    if minor(f, pi, n) not in pols[n]:
                        res.fail({"table": list(f.table), "pi": list(pi), "n": n})
    return res


def prop_minion_k2() -> PropertyResult:
    return prop_minion(clique(2), clique(2), "K_2, K_2")


def prop_minion_c5k3() -> PropertyResult:
    return prop_minion(cycle(5), clique(3), "C_5, K_3")


# ----------------------------------------------------------------------
# registry and runner
# ----------------------------------------------------------------------

SUITES: dict[str, list[tuple[Callable, tuple]]] = {
    "adjunctions": [
        (prop_lambda_gamma, (3,)),
        (prop_lambda_gamma, (5,)),
        (prop_gamma_omega, ()),
        (prop_sym_sub, ()),
        (prop_deltaL_delta, ()),
        (prop_delta_deltaR, ()),
        (prop_product_exponential, ()),
        (prop_unit_counit, ()),
    ],
    "poljak-rodl": [
        (prop_poljak_rodl, ()),
        (prop_color_round_trip, ()),
        (prop_delta_sym_cliques, ()),
    ],
    "topology": [
        (prop_box_table, ()),
        (prop_quotients, ()),
        (prop_box_hom_agree, ()),
        (prop_free, ()),
        (prop_hom_product, ()),
    ],
    "winding": [(prop_winding_case, case) for case in WINDING_CASES],
    "minion": [
        (prop_minion_k2, ()),
        (prop_minion_c5k3, ()),
    ],
}


def _call(task: tuple[Callable, tuple]) -> dict:
    f, args = task
    return f(*args).as_dict()


def run_suite(name: str, jobs: int = 1) -> list[dict]:
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    tasks = SUITES[name]
    if jobs <= 1 or len(tasks) == 1:
        return [_call(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_call, tasks))

