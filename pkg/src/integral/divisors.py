"""
Candidate integer values of the cyclic products of one circuit.

For an integral point C(A) and C-bar(A) are integers with
C(A) * C-bar(A) = M_C, the product of the edge products along C, so C(A)
runs over the divisors of M_C. Entries are negative, which fixes the
common sign (-1)^k.
"""

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.arithmetic.alg_scalar import AlgScalar
from src.utils.errors import BadEdgeProduct

EDGE_PRODUCTS = (1, 2, 3)


def positive_divisors(n: int) -> List[int]:
    small = [t for t in range(1, math.isqrt(n) + 1) if n % t == 0]
    return sorted(set(small) | {n // t for t in small})


def _as_edge_product(p) -> int:
    if isinstance(p, AlgScalar):
        ok, value = p.is_integer()
        if not ok:
            raise BadEdgeProduct(f"edge product {p} is not an integer")
        p = value
    if p not in EDGE_PRODUCTS:
        raise BadEdgeProduct(f"edge product {p} is not in {list(EDGE_PRODUCTS)}")
    return int(p)


def divisor_pairs(edge_products: Sequence, k: Optional[int] = None) -> List[Tuple[int, int]]:
    """
    All integer pairs (C, C-bar) with C * C-bar = M_C.

    Args:
        edge_products: products A_st A_ts along the circuit, each in {1, 2, 3}
        k: circuit length (defaults to the number of edge products)

    Returns:
        ((-1)^k t, (-1)^k M_C / t) over the positive divisors t of M_C, in
        increasing t

    Raises:
        BadEdgeProduct: for a product outside {1, 2, 3}
    """
    products = [_as_edge_product(p) for p in edge_products]
    k = len(products) if k is None else k
    M = math.prod(products)
    sign = -1 if k % 2 else 1
    return [(sign * t, sign * (M // t)) for t in positive_divisors(M)]


def pair_ratio(pair: Tuple[int, int]) -> Fraction:
    """C / C-bar as an exact positive ratio."""
    C, Cbar = pair
    return Fraction(C, Cbar)
