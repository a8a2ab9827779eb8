"""Independent certificate checker.

Re-validates JSON certificates using only the graph parser and plain
loops; nothing from the search code is imported here, so a bug there
cannot vouch for itself.
"""

from __future__ import annotations

import itertools
import json
from typing import Any

from .errors import InvalidInput
from .graph import Graph, parse

CERT_TYPES = ("hom", "coloring", "polymorphism")


def _graph(obj: Any, what: str) -> Graph:
    if not isinstance(obj, str):
        raise InvalidInput(f"certificate field {what!r} must hold a graph in text format")
    return parse(obj)


def check_map(G: Graph, H: Graph, image: list[int]) -> str | None:
    """None when ``image`` is a homomorphism G -> H, else a reason."""
    if len(image) != G.n:
        return f"map has {len(image)} entries for {G.n} source vertices"
    for x in image:
        if not isinstance(x, int) or not 0 <= x < H.n:
            return f"image {x!r} is not a target vertex"
    for u, v in sorted(G.arcs):
        if (image[u], image[v]) not in H.arcs:
            return f"arc ({u},{v}) maps to non-arc ({image[u]},{image[v]})"
    return None


def verify_certificate(cert: dict) -> tuple[bool, str]:
    kind = cert.get("type")
    if kind == "hom":
        G, H = _graph(cert.get("source"), "source"), _graph(cert.get("target"), "target")
        reason = check_map(G, H, list(cert.get("map", [])))
    elif kind == "coloring":
        G = _graph(cert.get("graph"), "graph")
        k = cert.get("k")
        if not isinstance(k, int) or k < 0:
            return False, "coloring certificate needs a non-negative integer k"
        Kk = Graph(k, [(a, b) for a in range(k) for b in range(k) if a != b])
        reason = check_map(G, Kk, list(cert.get("assignment", [])))
    elif kind == "polymorphism":
        G, H = _graph(cert.get("base"), "base"), _graph(cert.get("target"), "target")
        L = cert.get("arity")
        table = list(cert.get("table", []))
        if not isinstance(L, int) or L < 1:
            return False, "polymorphism certificate needs a positive arity"
        reason = _check_polymorphism(G, H, L, table)
    else:
        return False, f"unknown certificate type {kind!r}; expected one of {CERT_TYPES}"
    return (reason is None), (reason or "ok")


def _check_polymorphism(G: Graph, H: Graph, L: int, table: list[int]) -> str | None:
    n = G.n
    if len(table) != n**L:
        return f"table has {len(table)} entries, expected {n ** L}"
    if any(not isinstance(x, int) or not 0 <= x < H.n for x in table):
        return "table value is not a target vertex"
    arcs = sorted(G.arcs)
    weights = [n ** (L - 1 - i) for i in range(L)]
    for combo in itertools.product(arcs, repeat=L):
        x = sum(w * a for w, (a, _) in zip(weights, combo))
        y = sum(w * b for w, (_, b) in zip(weights, combo))
        if (table[x], table[y]) not in H.arcs:
            return f"tuple arc {combo} maps to non-arc ({table[x]},{table[y]})"
    return None


def verify_file(path: str) -> tuple[bool, str]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    # accept a bare certificate or a run report carrying one
    if "certificate" in data.get("result", {}):
        data = data["result"]["certificate"]
    return verify_certificate(data)
