"""Graph homomorphisms, adjoint graph functors and box-complex invariants
for reductions between promise constraint satisfaction problems."""

from __future__ import annotations

from .errors import (BudgetExceeded, CapExceeded, HasLoop, InvalidInput, ParseError, PcspError,
                     TemplateMismatch)
from .graph import (Graph, build, circular_clique, clique, cycle, exponential, graph_hash, is_isomorphic,
                    kneser, parse, path, power, serialize, tensor_product)
from .search import (Coloring, HomResult, VertexMap, chromatic_number, find_coloring, find_homomorphism,
                     fold_dominated, hom_exists, kernel_name)
from .functors import (arc_digraph, central_binomial, delta_left, delta_right, omega, power_graph, subdivide,
                       sub, sym)
from .polymorphisms import Polymorphism, enumerate_polymorphisms, essential_coordinates, minor
from .reductions import PcspTemplate, Pipeline, ReductionTrace, color_lift, color_push, compose
from .topology import SimplicialComplex, Z2Complex, box_complex, hom_complex
from .winding import WindingProfile, winding_profile

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CapExceeded", "HasLoop", "InvalidInput", "ParseError", "PcspError", "TemplateMismatch",
    "Graph", "build", "circular_clique", "clique", "cycle", "exponential", "graph_hash", "is_isomorphic",
    "kneser", "parse", "path", "power", "serialize", "tensor_product",
    "Coloring", "HomResult", "VertexMap", "chromatic_number", "find_coloring", "find_homomorphism",
    "fold_dominated", "hom_exists", "kernel_name",
    "arc_digraph", "central_binomial", "delta_left", "delta_right", "omega", "power_graph", "subdivide",
    "sub", "sym",
    "Polymorphism", "enumerate_polymorphisms", "essential_coordinates", "minor",
    "PcspTemplate", "Pipeline", "ReductionTrace", "color_lift", "color_push", "compose",
    "SimplicialComplex", "Z2Complex", "box_complex", "hom_complex",
    "WindingProfile", "winding_profile",
]
