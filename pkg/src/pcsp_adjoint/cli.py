"""Command-line entry point: ``pcsp-adjoint <command> ...``.

Exit codes: 0 for a definitive answer, 1 for a usage or input error (and
for a failed property suite), 2 when a search budget ran out before a
verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import functors as fn
from .config import BUDGET_ENV, set_size_cap
from .errors import BudgetExceeded, CapExceeded, HasLoop, PcspError
from .graph import (Graph, build, circular_clique, cycle, graph_hash, isomorphism, parse, read_graph,
                    serialize, write_graph)
from .polymorphisms import Polymorphism, count_polymorphisms, enumerate_polymorphisms
from .reductions import builtin_pipeline, pipeline_from_json
from .schemas import SCHEMA_VERSION
from .search import chromatic_bounds, find_coloring, find_homomorphism, greedy_coloring
from .suites import SUITES, run_suite
from .topology import build_complex
from .verify import verify_certificate
from .winding import compose_target, winding_profile

log = logging.getLogger("pcsp_adjoint")

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class Run:
    """Collects input hashes and budget counters for the run report."""

    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.args = args
        self.argv = argv
        self.inputs: dict[str, str] = {}
        self.nodes = 0
        self.start = time.perf_counter()

    def graph(self, path: str) -> Graph:
        G = read_graph(path)
        self.inputs[path] = graph_hash(G)
        return G

    def report(self, result: dict) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.argv,
            "inputs": self.inputs,
            "result": result,
            "wall_time": round(time.perf_counter() - self.start, 6),
            "budget": {"limit": self.args.budget, "nodes": self.nodes},
        }


def _emit(run: Run, result: dict, text: str) -> None:
    if run.args.json:
        print(json.dumps(run.report(result), indent=2, sort_keys=True))
    else:
        print(text)


def _write_json(path: str, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _emit_graph(run: Run, G: Graph, comments: list[str], result: dict) -> None:
    if run.args.out:
        write_graph(run.args.out, G, comments)
    if run.args.json:
        print(json.dumps(run.report(result), indent=2, sort_keys=True))
    elif not run.args.out:
        sys.stdout.write(serialize(G, comments))


def _reverify(cert: dict) -> bool:
    # round-trip through JSON text so the checker sees what a reader would
    ok, reason = verify_certificate(json.loads(json.dumps(cert)))
    if not ok:
        raise PcspError(f"certificate failed re-verification: {reason}")
    return ok


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_gen(run: Run) -> int:
    G = build(run.args.spec)
    result = {"graph": serialize(G), "n": G.n, "arcs": len(G.arcs), "hash": graph_hash(G)}
    _emit_graph(run, G, [f"family {run.args.spec}"], result)
    return EXIT_OK


def cmd_hom(run: Run) -> int:
    G, H = run.graph(run.args.source), run.graph(run.args.target)
    res = find_homomorphism(G, H, budget=run.args.budget, fold=not run.args.no_fold)
    run.nodes = res.nodes
    result: dict = {"status": res.status, "nodes": res.nodes, "folds": len(res.folds),
                    "searched_vertices": res.searched_vertices, "certificate": None}
    if res.witness is not None:
        cert = {"type": "hom", "source": serialize(G), "target": serialize(H),
                "map": list(res.witness.image), "folds": [list(f) for f in res.folds]}
        result["certificate"] = cert
        if run.args.verify:
            result["verified"] = _reverify(cert)
        if run.args.out:
            _write_json(run.args.out, cert)
    text = {"found": "found: " + " ".join(map(str, res.witness.image)) if res.witness else "",
            "none": "none", "unknown": f"unknown: budget of {res.budget} nodes exhausted"}[res.status]
    _emit(run, result, text)
    return EXIT_UNKNOWN if res.status == "unknown" else EXIT_OK


def cmd_chi(run: Run) -> int:
    G = run.graph(run.args.input)
    if G.has_loops:
        _emit(run, {"status": "has-loop"}, "has-loop")
        return EXIT_OK
    lo, hi = chromatic_bounds(G, budget=run.args.budget)
    if lo != hi:
        result = {"status": "unknown", "lower": lo, "upper": hi}
        _emit(run, result, f"unknown: between {lo} and {hi}")
        return EXIT_UNKNOWN
    try:
        colouring = find_coloring(G, hi, budget=run.args.budget)
    except BudgetExceeded:
        # the upper bound came from the greedy colouring, which is a witness already
        colouring = greedy_coloring(G)
    cert = {"type": "coloring", "graph": serialize(G), "k": hi, "assignment": list(colouring.assignment)}
    result = {"status": "exact", "chromatic_number": hi, "certificate": cert}
    if run.args.verify:
        result["verified"] = _reverify(cert)
    if run.args.out:
        _write_json(run.args.out, cert)
    _emit(run, result, str(hi))
    return EXIT_OK


def cmd_apply(run: Run) -> int:
    name, k = fn.parse_functor(run.args.functor)
    G = run.graph(run.args.input)
    out = fn.apply_functor(name, G, k)
    h = graph_hash(G)
    result = {"functor": run.args.functor, "input_hash": h, "graph": serialize(out), "n": out.n,
              "arcs": len(out.arcs)}
    _emit_graph(run, out, [f"functor {run.args.functor} input {h}"], result)
    return EXIT_OK


def cmd_reduce(run: Run) -> int:
    spec = run.args.pipeline
    if Path(spec).is_file():
        pipeline = pipeline_from_json(json.loads(Path(spec).read_text(encoding="utf-8")))
    else:
        pipeline = builtin_pipeline(spec)
    F = run.graph(run.args.input)
    out, trace = pipeline.run(F)
    if run.args.trace:
        Path(run.args.trace).write_text(trace.dumps() + "\n", encoding="utf-8")
    result = {"pipeline": spec, "graph": serialize(out), "trace": trace.to_json()}
    _emit_graph(run, out, [f"pipeline {spec} input {trace.input_hash}"], result)
    return EXIT_OK


def cmd_topo(run: Run) -> int:
    G = run.graph(run.args.input)
    K = build_complex(run.args.complex, G)
    h = K.homology()
    free = K.is_free()
    result = {
        "complex": run.args.complex,
        "vertices": [list(v) for v in K.vertices],
        "maximal_faces": [list(f) for f in K.facets],
        **h.as_dict(),
        "free": free,
        "quotient": K.quotient().homology().as_dict() if free else None,
    }
    text = (f"euler={h.euler_characteristic} betti0={h.betti0} betti1={h.betti1} "
            f"torsion1={list(h.torsion1)} free={free}")
    _emit(run, result, text)
    return EXIT_OK


def _parse_ratio(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split("/"))
    except ValueError:
        raise PcspError(f"target must look like p/q, got {text!r}") from None
    return p, q


def _load_polymorphism(data: dict) -> tuple[Polymorphism, tuple[Graph, Graph]]:
    """A polymorphism certificate, or a hom certificate read as arity 1."""
    if "certificate" in data.get("result", {}):
        data = data["result"]["certificate"]
    kind = data.get("type")
    if kind == "polymorphism":
        base, target = parse(data["base"]), parse(data["target"])
        return Polymorphism(base.n, int(data["arity"]), tuple(data["table"])), (base, target)
    if kind == "hom":
        base, target = parse(data["source"]), parse(data["target"])
        return Polymorphism(base.n, 1, tuple(data["map"])), (base, target)
    raise PcspError(f"expected a hom or polymorphism certificate, got type {kind!r}")


def cmd_wind(run: Run) -> int:
    p, q = _parse_ratio(run.args.target)
    data = json.loads(Path(run.args.hom).read_text(encoding="utf-8"))
    f, (base, target) = _load_polymorphism(data)
    if base != cycle(base.n):
        raise PcspError("the source of the map must be the cycle C_n in its standard labelling")
    K = circular_clique(p, q)
    if target != K:
        iso = isomorphism(target, K)
        if iso is None:
            raise PcspError(f"the certificate's target is not isomorphic to K_{p}/{q}")
        log.info("relabelling target through an isomorphism onto K_%d/%d", p, q)
        f = compose_target(f, iso)
    prof = winding_profile(f, p, q)
    result = {**prof.as_dict(), "violations": prof.violations(), "target": f"{p}/{q}",
              "ratio": str(Fraction(p, q))}
    _emit(run, result, f"a={list(prof.a)} d={prof.d}")
    return EXIT_OK


def cmd_check(run: Run) -> int:
    props = run_suite(run.args.suite, jobs=run.args.jobs)
    passed = all(r["passed"] for r in props)
    result = {"suite": run.args.suite, "passed": passed, "properties": props}
    lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['property']}  ({r['checked']} checked)" for r in props]
    _emit(run, result, "\n".join(lines))
    return EXIT_OK if passed else EXIT_ERROR


def cmd_verify(run: Run) -> int:
    data = json.loads(Path(run.args.certificate).read_text(encoding="utf-8"))
    if "certificate" in data.get("result", {}):
        data = data["result"]["certificate"]
    ok, reason = verify_certificate(data)
    _emit(run, {"valid": ok, "reason": reason}, "valid" if ok else f"invalid: {reason}")
    return EXIT_OK if ok else EXIT_ERROR


def cmd_pol(run: Run) -> int:
    G, H = run.graph(run.args.base), run.graph(run.args.target)
    L = run.args.arity
    result: dict = {"arity": L}
    if run.args.count:
        result["count"] = count_polymorphisms(G, H, L, budget=run.args.budget)
        text = str(result["count"])
    else:
        certs = [
            {"type": "polymorphism", "base": serialize(G), "target": serialize(H), "arity": L,
             "table": list(f.table)}
            for f in enumerate_polymorphisms(G, H, L, limit=run.args.limit, budget=run.args.budget)
        ]
        if run.args.verify:
            for c in certs:
                _reverify(c)
        result["count"] = len(certs)
        result["certificates"] = certs
        if run.args.out and certs:
            _write_json(run.args.out, certs[0])
        text = "\n".join(" ".join(map(str, c["table"])) for c in certs)
    _emit(run, result, text)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _budget(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("budget must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    common.add_argument("--budget", type=_budget, default=None,
                        help=f"search node budget (default: ${BUDGET_ENV} or unlimited)")
    common.add_argument("--cap", type=int, default=None, help="vertex cap for blow-up constructions")
    common.add_argument("--verify", action="store_true", help="re-validate emitted certificates")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for check suites")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="pcsp-adjoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a named graph")
    p.add_argument("spec", help="e.g. clique:4, cycle:5, circular:7/2, kneser:5,2, petersen, path:3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hom", parents=[common], help="decide G -> H and print a witness")
    p.add_argument("--from", "--in", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--out", help="write the certificate here")
    p.add_argument("--no-fold", action="store_true", help="skip dominated-vertex folding")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("chi", parents=[common], help="chromatic number")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", help="write the colouring certificate here")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("apply", parents=[common], help="apply a graph functor")
    p.add_argument("--functor", required=True,
                   help="delta, delta_l, delta_r, sym, sub, lambda:k, gamma:k, omega:k, universal")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("reduce", parents=[common], help="run a reduction pipeline on an instance")
    p.add_argument("--pipeline", required=True, help="arc, universal, lambda:k, gamma-omega:k, identity or a JSON file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("topo", parents=[common], help="box or hom complex invariants")
    p.add_argument("--complex", choices=("box", "hom"), default="box")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_topo)

    p = sub.add_parser("wind", parents=[common], help="winding profile of a map into K_p/q")
    p.add_argument("--hom", required=True, help="hom or polymorphism certificate (JSON)")
    p.add_argument("--target", required=True, help="p/q with p odd and 2 < p/q < 4")
    p.set_defaults(func=cmd_wind)

    p = sub.add_parser("check", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=tuple(SUITES))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="validate a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pol", parents=[common], help="enumerate polymorphisms G^L -> H")
    p.add_argument("--base", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--count", action="store_true", help="only count them")
    p.add_argument("--out", help="write the first certificate here")
    p.set_defaults(func=cmd_pol)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.cap is not None:
        set_size_cap(args.cap)
    run = Run(args, argv)
    try:
        return args.func(run)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (PcspError, CapExceeded, HasLoop, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
