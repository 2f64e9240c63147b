"""
Labeled combinatorial polytopes: simplices, truncation, gluing, vertex links,
perfection, prismatic circuits and gluing trees.
"""

from .labeled_polytope import (
    LabeledPolytope,
    Perfection,
    VertexLink,
    facet_isomorphisms,
    is_isomorphic,
    perfection,
    simplex,
    truncate,
    vertex_group,
    vertex_link,
)
from .constructions import (
    glue,
    labeled_cube,
    polytope_from_construct,
    polytope_from_json,
    polytope_to_construct,
    polytope_to_json,
)
from .prismatic import (
    CircuitKind,
    PrismaticCircuit,
    Split,
    find_prismatic,
    is_simplex,
    is_truncation_polytope,
    prismatic_circuits,
    split,
)
from .gluing_tree import GluingEdge, GluingNode, GluingTree, gluing_tree

__all__ = [
    "LabeledPolytope",
    "VertexLink",
    "Perfection",
    "simplex",
    "truncate",
    "glue",
    "vertex_link",
    "vertex_group",
    "perfection",
    "is_isomorphic",
    "facet_isomorphisms",
    "labeled_cube",
    "polytope_from_construct",
    "polytope_to_construct",
    "polytope_from_json",
    "polytope_to_json",
    "CircuitKind",
    "PrismaticCircuit",
    "Split",
    "find_prismatic",
    "prismatic_circuits",
    "split",
    "is_simplex",
    "is_truncation_polytope",
    "GluingNode",
    "GluingEdge",
    "GluingTree",
    "gluing_tree",
]
