"""PCSP templates, instance-level reduction steps and replayable traces.

A step carries an instance transformation (a short list of named graph
operations) and, optionally, the source and target templates it
connects.  ``compose`` checks that consecutive templates agree and
returns a ``Pipeline``; running it yields the transformed instance
together with a ``ReductionTrace`` that can be serialized and replayed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import InvalidInput, TemplateMismatch
from .functors import (
    apply_functor,
    arc_digraph,
    central_binomial,
    delta_right,
    omega,
    parse_functor,
    power_graph,
    sub,
)
from .graph import Graph, clique, exponential, graph_hash, parse, serialize, tensor_product
from .search import Coloring, VertexMap, hom_exists

TRACE_SCHEMA_VERSION = 1


# ----------------------------------------------------------------------
# templates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PcspTemplate:
    """A pair (G, H) together with a witness G -> H."""

    G: Graph
    H: Graph
    witness: VertexMap

    def __post_init__(self) -> None:
        bad = self.witness.bad_arc(self.G, self.H)
        if bad is not None or len(self.witness) != self.G.n:
            raise InvalidInput(f"template witness is not a homomorphism (arc {bad})")

    @classmethod
    def of(cls, G: Graph, H: Graph, witness: Sequence[int] | None = None,
           budget: int | None = None) -> "PcspTemplate":
        if witness is None:
            found = hom_exists(G, H, budget=budget)
            if found is None:
                raise TemplateMismatch("no homomorphism G -> H, so (G, H) is not a PCSP template")
            return cls(G, H, found)
        return cls(G, H, VertexMap(tuple(witness)))

    def same_as(self, other: "PcspTemplate") -> bool:
        return self.G == other.G and self.H == other.H


def clique_template(a: int, b: int) -> PcspTemplate:
    if not 1 <= a <= b:
        raise InvalidInput(f"(K_{a}, K_{b}) needs 1 <= {a} <= {b}")
    return PcspTemplate(clique(a), clique(b), VertexMap(tuple(range(a))))


# ----------------------------------------------------------------------
# instance operations
# ----------------------------------------------------------------------

# An op is (name, param): a functor name from ``functors.FUNCTOR_NAMES``
# with its odd parameter, ("product", graph text) for F0 x -, or
# ("identity", None).

Op = tuple[str, Any]


def op_from_text(text: str) -> Op:
    if text == "identity":
        return ("identity", None)
    if text.startswith("product:"):
        return ("product", text[len("product:"):])
    return parse_functor(text)


def op_to_text(op: Op) -> str:
    name, param = op
    if param is None:
        return name
    return f"{name}:{param}"


def apply_op(op: Op, F: Graph) -> Graph:
    name, param = op
    if name == "identity":
        return F
    if name == "product":
        return tensor_product(parse(param), F)
    return apply_functor(name, F, param)


def apply_ops(ops: Sequence[Op], F: Graph) -> Graph:
    for op in ops:
        F = apply_op(op, F)
    return F


# ----------------------------------------------------------------------
# steps
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    name: str
    ops: tuple[Op, ...]
    params: dict = field(default_factory=dict, hash=False, compare=False)
    source: PcspTemplate | None = None
    target: PcspTemplate | None = None

    def apply(self, F: Graph) -> Graph:
        return apply_ops(self.ops, F)


def identity_step() -> Step:
    return Step("identity", (("identity", None),))


def arc_step(n: int, k: int) -> Step:
    """PCSP(K_b(n), K_b(k)) to PCSP(K_n, K_k) via F -> delta F."""
    return Step("arc", (("delta", None),), {"n": n, "k": k},
                clique_template(central_binomial(n), central_binomial(k)), clique_template(n, k))


def universal_step(n: int, k: int) -> Step:
    """PCSP(K_n, K_k) to PCSP(K_{n+1}, K_{k+1}) by adding a universal vertex.
    Correct for cliques because deleting any vertex of K_{k+1} leaves K_k."""
    return Step("universal", (("universal", None),), {"n": n, "k": k},
                clique_template(n, k), clique_template(n + 1, k + 1))


def relax_step(source: PcspTemplate, G2: Graph, H2: Graph, budget: int | None = None) -> Step:
    """Homomorphic relaxation: needs G -> G2 and H2 -> H; instances pass unchanged."""
    if hom_exists(source.G, G2, budget=budget) is None:
        raise TemplateMismatch("relaxation needs G -> G'")
    if hom_exists(H2, source.H, budget=budget) is None:
        raise TemplateMismatch("relaxation needs H' -> H")
    return Step("relax", (("identity", None),), {}, source, PcspTemplate.of(G2, H2, budget=budget))


def _product_ops(F0: Graph) -> tuple[Op, ...]:
    return (("product", serialize(F0)),)


# name -> (left ops builder, right functor) for thin adjoint pairs (L, R)
def _pair(name: str, k: int | None, F0: Graph | None):
    if name == "lambda-gamma":
        return (("lambda", k),), lambda H: power_graph(H, k)
    if name == "gamma-omega":
        return (("gamma", k),), lambda H: omega(H, k)
    if name == "deltaL-delta":
        return (("delta_l", None),), arc_digraph
    if name == "delta-deltaR":
        return (("delta", None),), delta_right
    if name == "sym-sub":
        return (("sym", None),), sub
    if name == "symdelta-subdeltaR":
        return (("sym", None), ("delta", None)), lambda H: sub(delta_right(H))
    if name == "product":
        if F0 is None:
            raise InvalidInput("the product pair needs a fixed factor F0")
        return _product_ops(F0), lambda H: exponential(H, F0)
    raise InvalidInput(f"unknown adjoint pair {name!r}")


ADJOINT_PAIRS = ("lambda-gamma", "gamma-omega", "deltaL-delta", "delta-deltaR", "sym-sub",
                 "symdelta-subdeltaR", "product")


def adjoint_step(pair: str, G: Graph, H: Graph, k: int | None = None, F0: Graph | None = None,
                 budget: int | None = None) -> Step:
    """PCSP(G, R H) to PCSP(L G, H) via F -> L F for a thin adjoint pair (L, R)."""
    ops, right = _pair(pair, k, F0)
    source = PcspTemplate.of(G, right(H), budget=budget)
    target = PcspTemplate.of(apply_ops(ops, G), H, budget=budget)
    return Step(f"adjoint:{pair}", ops, {"k": k}, source, target)


# (L, R, O) triples with (L, R) and (R, O) thin adjoint pairs
def _triple(name: str, k: int | None):
    if name == "lambda-gamma-omega":
        return (("lambda", k),), lambda G: power_graph(G, k), lambda H: omega(H, k)
    if name == "deltaL-delta-deltaR":
        return (("delta_l", None),), arc_digraph, delta_right
    raise InvalidInput(f"unknown adjoint triple {name!r}")


def equivalence_step(triple: str, G: Graph, H: Graph, k: int | None = None,
                     budget: int | None = None) -> Step:
    """PCSP(R G, H) to PCSP(G, O H) via F -> L F."""
    ops, right, outer = _triple(triple, k)
    source = PcspTemplate.of(right(G), H, budget=budget)
    target = PcspTemplate.of(G, outer(H), budget=budget)
    return Step(f"equivalence:{triple}", ops, {"k": k}, source, target)


# ----------------------------------------------------------------------
# traces and pipelines
# ----------------------------------------------------------------------

@dataclass
class ReductionTrace:
    input_hash: str
    output_hash: str
    steps: list[dict]

    def to_json(self) -> dict:
        return {
            "schema_version": TRACE_SCHEMA_VERSION,
            "input_hash": self.input_hash,
            "output_hash": self.output_hash,
            "steps": self.steps,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "ReductionTrace":
        if data.get("schema_version") != TRACE_SCHEMA_VERSION:
            raise InvalidInput(f"unsupported trace schema_version {data.get('schema_version')!r}")
        steps = data["steps"]
        prev = data["input_hash"]
        for s in steps:
            if s["input_hash"] != prev:
                raise InvalidInput(f"trace hashes do not chain at step {s['step']!r}")
            prev = s["output_hash"]
        if prev != data["output_hash"]:
            raise InvalidInput("trace output hash does not match its last step")
        return cls(data["input_hash"], data["output_hash"], steps)

    def replay(self, F: Graph) -> Graph:
        """Re-run every step from ``F``; raises if any hash differs."""
        if graph_hash(F) != self.input_hash:
            raise InvalidInput("instance does not match the trace input hash")
        for s in self.steps:
            F = apply_ops([op_from_text(t) for t in s["ops"]], F)
            if graph_hash(F) != s["output_hash"]:
                raise InvalidInput(f"replay diverged at step {s['step']!r}")
        return F


class Pipeline:
    def __init__(self, steps: Sequence[Step]):
        self.steps = list(steps)

    @property
    def source(self) -> PcspTemplate | None:
        return next((s.source for s in self.steps if s.source is not None), None)

    @property
    def target(self) -> PcspTemplate | None:
        return next((s.target for s in reversed(self.steps) if s.target is not None), None)

    def run(self, F: Graph) -> tuple[Graph, ReductionTrace]:
        start = graph_hash(F)
        records = []
        for s in self.steps:
            before = graph_hash(F)
            F = s.apply(F)
            records.append({
                "step": s.name,
                "ops": [op_to_text(op) for op in s.ops],
                "params": {k: v for k, v in s.params.items() if v is not None},
                "input_hash": before,
                "output_hash": graph_hash(F),
            })
        return F, ReductionTrace(start, graph_hash(F), records)


def compose(steps: Sequence[Step]) -> Pipeline:
    """Assemble steps, checking each declared target against the next
    declared source.  Steps without templates are accepted anywhere."""
    last: PcspTemplate | None = None
    for i, s in enumerate(steps):
        if s.source is not None and last is not None and not last.same_as(s.source):
            raise TemplateMismatch(f"step {i} ({s.name}) source template does not match the previous target")
        if s.target is not None:
            last = s.target
    return Pipeline(steps)


def log_chain(n: int, k: int) -> Pipeline:
    """PCSP(K_b(n), K_k) relaxed to PCSP(K_b(n), K_b(m)) with m = floor(log2 k),
    then reduced by the arc construction to PCSP(K_n, K_m)."""
    m = k.bit_length() - 1
    source = clique_template(central_binomial(n), k)
    relax = relax_step(source, clique(central_binomial(n)), clique(central_binomial(m)))
    return compose([relax, arc_step(n, m)])


def arc_chain_via_adjoints(n: int, k: int) -> Pipeline:
    """PCSP(K_b(n), K_b(k)) to PCSP(K_n, K_k) spelled out as a relaxation to
    (K_b(n), sub delta_R K_k), the (delta sym, sub delta_R) adjoint step and
    a final relaxation."""
    Kb = clique(central_binomial(n))
    source = clique_template(central_binomial(n), central_binomial(k))
    first = relax_step(source, Kb, sub(delta_right(clique(k))))
    middle = adjoint_step("symdelta-subdeltaR", Kb, clique(k))
    last = relax_step(middle.target, clique(n), clique(k))
    return compose([first, middle, last])


def reduce_adjoint(pair: str, F: Graph, k: int | None = None, F0: Graph | None = None
                   ) -> tuple[Graph, ReductionTrace]:
    """Apply the left functor of ``pair`` to the instance ``F``."""
    ops, _ = _pair(pair, k, F0)
    return Pipeline([Step(f"adjoint:{pair}", ops, {"k": k})]).run(F)


def reduce_arc(F: Graph, n: int, k: int) -> tuple[Graph, ReductionTrace]:
    return Pipeline([Step("arc", (("delta", None),), {"n": n, "k": k})]).run(F)


# ----------------------------------------------------------------------
# named pipelines (instance level)
# ----------------------------------------------------------------------

BUILTIN_PIPELINES = ("identity", "arc", "universal", "lambda:k", "gamma-omega:k")


def builtin_pipeline(name: str) -> Pipeline:
    base, _, arg = name.partition(":")
    if base in ("lambda", "gamma-omega"):
        try:
            k = int(arg)
        except ValueError:
            raise InvalidInput(f"pipeline {base!r} needs an odd parameter, e.g. {base}:3") from None
        if k < 1 or k % 2 == 0:
            raise InvalidInput(f"pipeline parameter must be odd, got {k}")
        label = "adjoint:lambda-gamma" if base == "lambda" else "equivalence:lambda-gamma-omega"
        return Pipeline([Step(label, (("lambda", k),), {"k": k})])
    if arg:
        raise InvalidInput(f"pipeline {base!r} takes no parameter")
    if base == "identity":
        return Pipeline([identity_step()])
    if base == "arc":
        return Pipeline([Step("arc", (("delta", None),))])
    if base == "universal":
        return Pipeline([Step("universal", (("universal", None),))])
    raise InvalidInput(f"unknown pipeline {name!r}; built-ins: {', '.join(BUILTIN_PIPELINES)}")


def pipeline_from_json(data: dict) -> Pipeline:
    """``{"steps": [{"name": ..., "ops": ["delta", "lambda:3", ...]}, ...]}``"""
    try:
        steps = [Step(s.get("name", "custom"), tuple(op_from_text(t) for t in s["ops"]))
                 for s in data["steps"]]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed pipeline file: {exc}") from None
    return Pipeline(steps)


# ----------------------------------------------------------------------
# constructive colouring transfers
# ----------------------------------------------------------------------

def colex_subsets(n: int, r: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), r), key=lambda s: s[::-1])


def _mask(xs) -> int:
    out = 0
    for x in xs:
        out |= 1 << x
    return out


def color_lift(coloring: Coloring, G: Graph) -> Coloring:
    """From a proper n-colouring of delta G to a proper colouring of G by
    subsets of [n] (as bitmasks): each vertex gets the colours of its
    incoming arcs."""
    dG = arc_digraph(G)
    if len(coloring.assignment) != dG.n:
        raise InvalidInput(f"colouring has {len(coloring.assignment)} entries, delta G has {dG.n} vertices")
    bad = coloring.violation(dG)
    if bad is not None:
        raise InvalidInput(f"colouring of delta G is improper on arc {dG.labels[bad[0]]} -> {dG.labels[bad[1]]}")
    phi = [0] * G.n
    for i, (_, v) in enumerate(dG.labels):
        phi[v] |= 1 << coloring.assignment[i]
    out = Coloring(1 << coloring.k, tuple(phi))
    if out.violation(G) is not None:
        raise AssertionError("lifted colouring is improper")
    return out


def color_push(coloring: Coloring, G: Graph, n: int) -> Coloring:
    """From a proper b(n)-colouring of G to a proper n-colouring of delta G:
    colour c becomes the c-th floor(n/2)-subset of [n] in colex order and
    the arc (u, v) gets min(phi(u) minus phi(v))."""
    b = central_binomial(n)
    if len(coloring.assignment) != G.n:
        raise InvalidInput("colouring length does not match the graph")
    if any(not 0 <= c < b for c in coloring.assignment):
        raise InvalidInput(f"colours must lie in range(b({n})) = range({b})")
    bad = coloring.violation(G)
    if bad is not None:
        raise InvalidInput(f"colouring of G is improper on arc {bad}")
    subsets = [_mask(s) for s in colex_subsets(n, n // 2)]
    phi = [subsets[c] for c in coloring.assignment]
    dG = arc_digraph(G)
    colours = []
    for u, v in dG.labels:
        diff = phi[u] & ~phi[v]
        colours.append((diff & -diff).bit_length() - 1)
    out = Coloring(n, tuple(colours))
    if out.violation(dG) is not None:
        raise AssertionError("pushed colouring is improper")
    return out


__all__ = [
    "ADJOINT_PAIRS", "BUILTIN_PIPELINES", "Pipeline", "PcspTemplate", "ReductionTrace", "Step",
    "adjoint_step", "apply_op", "apply_ops", "arc_chain_via_adjoints", "arc_step", "builtin_pipeline",
    "clique_template", "color_lift", "color_push", "colex_subsets", "compose", "equivalence_step",
    "identity_step", "log_chain", "op_from_text", "op_to_text", "pipeline_from_json", "reduce_adjoint",
    "reduce_arc", "relax_step", "universal_step",
]
