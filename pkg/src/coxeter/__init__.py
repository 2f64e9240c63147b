"""
Coxeter matrices, diagrams and their spherical / affine / large classification.
"""

from .coxeter_matrix import CoxeterMatrix, Violation, standard_subgroup, validate_coxeter
from .classification import GroupClass, GroupType, classify, is_affine_A_tilde, is_spherical, refine

__all__ = [
    "CoxeterMatrix",
    "Violation",
    "validate_coxeter",
    "standard_subgroup",
    "GroupClass",
    "GroupType",
    "classify",
    "refine",
    "is_spherical",
    "is_affine_A_tilde",
]
