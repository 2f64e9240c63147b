"""
Cartan matrices: validation, Perron-Frobenius typing, cyclic products,
relevant circuits, equivalence and gauge normalization.
"""

from .cartan_matrix import CartanMatrix, CyclicRatio, coxeter_of, cosine_matrix, is_valid, validate_cartan
from .circuits import (
    Circuit,
    canonical_circuit,
    cyclic_product,
    edge_product_of,
    fundamental_cycles,
    normalized_cyclic_product,
    relevant_circuits,
)
from .gauge import canonical_gauge, equivalent, invariant_signature, signature_key, tree_diagonal
from .perron import PerronReport, PerronType, components, is_loxodromic, perron_type

__all__ = [
    "CartanMatrix",
    "CyclicRatio",
    "cosine_matrix",
    "coxeter_of",
    "validate_cartan",
    "is_valid",
    "Circuit",
    "canonical_circuit",
    "cyclic_product",
    "normalized_cyclic_product",
    "relevant_circuits",
    "fundamental_cycles",
    "edge_product_of",
    "equivalent",
    "canonical_gauge",
    "invariant_signature",
    "signature_key",
    "tree_diagonal",
    "PerronType",
    "PerronReport",
    "perron_type",
    "components",
    "is_loxodromic",
]
