"""JSON schemas (draft 2020-12) for run reports and per-command results."""

from __future__ import annotations

SCHEMA_VERSION = 1

_graph_text = {"type": "string", "pattern": "^(graph|digraph) "}

HOM_CERT = {
    "type": "object",
    "required": ["type", "source", "target", "map"],
    "properties": {
        "type": {"const": "hom"},
        "source": _graph_text,
        "target": _graph_text,
        "map": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "folds": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
    },
}

COLORING_CERT = {
    "type": "object",
    "required": ["type", "graph", "k", "assignment"],
    "properties": {
        "type": {"const": "coloring"},
        "graph": _graph_text,
        "k": {"type": "integer", "minimum": 0},
        "assignment": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

POLY_CERT = {
    "type": "object",
    "required": ["type", "base", "target", "arity", "table"],
    "properties": {
        "type": {"const": "polymorphism"},
        "base": _graph_text,
        "target": _graph_text,
        "arity": {"type": "integer", "minimum": 1},
        "table": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

_homology = {
    "type": "object",
    "required": ["euler", "betti0", "betti1", "torsion1"],
    "properties": {
        "euler": {"type": "integer"},
        "betti0": {"type": "integer", "minimum": 0},
        "betti1": {"type": "integer", "minimum": 0},
        "torsion1": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}

RESULTS = {
    "gen": {
        "type": "object",
        "required": ["graph", "n", "arcs", "hash"],
        "properties": {"graph": _graph_text, "n": {"type": "integer"}, "arcs": {"type": "integer"},
                       "hash": {"type": "string"}},
    },
    "hom": {
        "type": "object",
        "required": ["status", "nodes", "folds"],
        "properties": {
            "status": {"enum": ["found", "none", "unknown"]},
            "nodes": {"type": "integer"},
            "folds": {"type": "integer"},
            "searched_vertices": {"type": "integer"},
            "certificate": {"oneOf": [HOM_CERT, {"type": "null"}]},
            "verified": {"type": "boolean"},
        },
    },
    "chi": {
        "type": "object",
        "required": ["status"],
        "properties": {
            "status": {"enum": ["exact", "has-loop", "unknown"]},
            "chromatic_number": {"type": "integer"},
            "lower": {"type": "integer"},
            "upper": {"type": "integer"},
            "certificate": COLORING_CERT,
            "verified": {"type": "boolean"},
        },
    },
    "apply": {
        "type": "object",
        "required": ["functor", "input_hash", "graph", "n", "arcs"],
        "properties": {"functor": {"type": "string"}, "input_hash": {"type": "string"}, "graph": _graph_text,
                       "n": {"type": "integer"}, "arcs": {"type": "integer"}},
    },
    "reduce": {
        "type": "object",
        "required": ["pipeline", "graph", "trace"],
        "properties": {
            "pipeline": {"type": "string"},
            "graph": _graph_text,
            "trace": {
                "type": "object",
                "required": ["schema_version", "input_hash", "output_hash", "steps"],
                "properties": {"steps": {"type": "array"}},
            },
        },
    },
    "topo": {
        "type": "object",
        "required": ["complex", "vertices", "maximal_faces", "euler", "betti0", "betti1", "torsion1", "free"],
        "properties": {
            "complex": {"enum": ["box", "hom"]},
            "vertices": {"type": "array"},
            "maximal_faces": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "euler": {"type": "integer"},
            "betti0": {"type": "integer"},
            "betti1": {"type": "integer"},
            "torsion1": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            "free": {"type": "boolean"},
            "quotient": {"oneOf": [_homology, {"type": "null"}]},
        },
    },
    "wind": {
        "type": "object",
        "required": ["a", "d", "violations"],
        "properties": {"a": {"type": "array", "items": {"type": "integer"}}, "d": {"type": "integer"},
                       "violations": {"type": "array", "items": {"type": "string"}}},
    },
    "check": {
        "type": "object",
        "required": ["suite", "passed", "properties"],
        "properties": {
            "suite": {"type": "string"},
            "passed": {"type": "boolean"},
            "properties": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["property", "passed", "checked", "failures", "counterexamples"],
                },
            },
        },
    },
    "verify": {
        "type": "object",
        "required": ["valid", "reason"],
        "properties": {"valid": {"type": "boolean"}, "reason": {"type": "string"}},
    },
    "pol": {
        "type": "object",
        "required": ["arity", "count"],
        "properties": {"arity": {"type": "integer"}, "count": {"type": "integer"},
                       "certificates": {"type": "array", "items": POLY_CERT}},
    },
}

RUN_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "inputs", "result", "wall_time", "budget"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "array", "items": {"type": "string"}},
        "inputs": {"type": "object", "additionalProperties": {"type": "string"}},
        "result": {"type": "object"},
        "wall_time": {"type": "number", "minimum": 0},
        "budget": {
            "type": "object",
            "required": ["limit", "nodes"],
            "properties": {"limit": {"type": ["integer", "null"]}, "nodes": {"type": "integer"}},
        },
    },
}


def report_schema(command: str) -> dict:
    schema = dict(RUN_REPORT)
    schema["properties"] = dict(RUN_REPORT["properties"], result=RESULTS[command])
    return schema
