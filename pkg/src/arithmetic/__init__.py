"""
Exact arithmetic: the field Q(sqrt2, sqrt3), approximate scalars,
certified interval signs and exact linear algebra.
"""

from .alg_scalar import AlgScalar, ONE, SQRT2, SQRT3, SQRT6, ZERO, rational_sqrt
from .scalar import (
    INF,
    Approx,
    Label,
    Scalar,
    cos_product,
    exact,
    is_exact,
    label_to_json,
    make_cos_entry,
    parse_label,
    scalar_sqrt,
)

__all__ = [
    "AlgScalar",
    "Approx",
    "Scalar",
    "Label",
    "INF",
    "ZERO",
    "ONE",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "rational_sqrt",
    "make_cos_entry",
    "cos_product",
    "exact",
    "is_exact",
    "scalar_sqrt",
    "parse_label",
    "label_to_json",
]
