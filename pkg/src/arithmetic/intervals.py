"""
Certified sign decisions with mpmath interval arithmetic.

Used only where entries leave the exact field, i.e. labels outside
{2, 3, 4, 6, inf}. Precision doubles until every pivot sign is certain.
"""

import logging
import math
from contextlib import contextmanager
from typing import Callable, List, Optional

from mpmath import iv

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.scalar import Approx
from src.utils.errors import Inconclusive

logger = logging.getLogger(__name__)

START_BITS = 64


@contextmanager
def precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def label_entry_interval(m):
    """Interval around -2cos(pi/m); an infinite label gives exactly -2."""
    if m == math.inf:
        return iv.mpf(-2)
    return -2 * iv.cos(iv.pi / m)


def scalar_interval(x, eps: float = 0.0):
    """Enclosure of an exact scalar, or of an approximate one widened by eps."""
    if isinstance(x, Approx):
        return iv.mpf([x.value - eps, x.value + eps])
    x = AlgScalar.coerce(x)
    total = iv.mpf(x.a.numerator) / x.a.denominator
    for coeff, r in zip((x.b, x.c, x.d), (2, 3, 6)):
        if coeff:
            total += (iv.mpf(coeff.numerator) / coeff.denominator) * iv.sqrt(r)
    return total


def interval_sign(x) -> Optional[int]:
    """+1 / -1 when certain, None when the interval meets zero."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return None


def _pivot_signs(rows: List[list]) -> Optional[List[int]]:
    n = len(rows)
    rows = [[x if isinstance(x, iv.mpf) else iv.mpf(x) for x in r] for r in rows]
    signs: List[int] = []
    for k in range(n):
        s = interval_sign(rows[k][k])
        if s is None:
            return None
        signs.append(s)
        if s < 0:
            break
        for r in range(k + 1, n):
            factor = rows[r][k] / rows[k][k]
            for c in range(k, n):
                rows[r][c] = rows[r][c] - factor * rows[k][c]
    return signs


def certified_pivot_signs(build: Callable[[], List[list]], max_bits: int = 4096) -> List[int]:
    """
    Leading pivot signs of the interval matrix produced by ``build``.

    ``build`` is called again at every precision so that transcendental
    entries are recomputed rather than reused.
    """
    bits = START_BITS
    while bits <= max_bits:
        with precision(bits):
            signs = _pivot_signs(build())
        if signs is not None:
            return signs
        logger.debug("pivot sign uncertain at %d bits, refining", bits)
        bits *= 2
    raise Inconclusive(f"pivot signs undecided at {max_bits} bits")
