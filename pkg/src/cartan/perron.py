"""
Perron-Frobenius type of Cartan matrices.

For a valid irreducible A, 2I - A is non-negative and irreducible, so A is
a Z-matrix. The sign of the smallest eigenvalue is read off the leading
pivots: all positive means a non-singular M-matrix (Positive), positive up
to a vanishing last pivot means a singular irreducible M-matrix (Zero),
anything else is Negative.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import networkx as nx
import numpy as np

from src.arithmetic.alg_scalar import ZERO
from src.arithmetic.intervals import certified_pivot_signs, scalar_interval
from src.arithmetic.linalg import leading_pivot_signs, rank
from src.arithmetic.scalar import Approx, Scalar
from src.cartan.cartan_matrix import CartanMatrix
from src.utils.errors import Reducible

logger = logging.getLogger(__name__)


class PerronType(Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class PerronReport:
    type: PerronType
    lam: Scalar
    rank: int

    def to_json(self) -> dict:
        return {"type": self.type.value, "lambda": float(self.lam), "rank": self.rank}


def _pivot_signs(A: CartanMatrix, eps: float, max_bits: int) -> List[int]:
    if A.is_exact:
        return leading_pivot_signs(A.rows())
    return certified_pivot_signs(
        lambda: [[scalar_interval(x, eps) for x in row] for row in A.rows()], max_bits
    )


def _matrix_rank(A: CartanMatrix, eps: float) -> int:
    if A.is_exact:
        return rank(A.rows())
    return int(np.linalg.matrix_rank(A.float_array(), tol=max(eps, 1.0e-12) * A.size))


def _smallest_eigenvalue(A: CartanMatrix) -> float:
    """2 minus the Perron root of the non-negative matrix 2I - A."""
    B = 2.0 * np.eye(A.size) - A.float_array()
    return 2.0 - float(np.max(np.linalg.eigvals(B).real))


def perron_type(A: CartanMatrix, eps: float = 0.0, max_bits: int = 4096) -> PerronReport:
    """
    Certified sign of lambda_A for an irreducible valid Cartan matrix.

    Raises:
        Reducible: if the adjacency graph is disconnected
        Inconclusive: if interval precision is exhausted on approximate entries
    """
    if not A.is_connected():
        raise Reducible("perron_type needs an irreducible matrix")
    n = A.size
    signs = _pivot_signs(A, eps, max_bits)
    if len(signs) == n and all(s > 0 for s in signs):
        kind = PerronType.POSITIVE
    elif len(signs) == n and signs[-1] == 0:
        kind = PerronType.ZERO
    else:
        kind = PerronType.NEGATIVE
    lam = ZERO if kind is PerronType.ZERO else Approx(_smallest_eigenvalue(A))
    report = PerronReport(type=kind, lam=lam, rank=_matrix_rank(A, eps))
    logger.debug("perron type of %s: %s", list(A.index), kind.value)
    return report


def components(A: CartanMatrix, eps: float = 0.0) -> List[Tuple[Tuple[str, ...], PerronReport]]:
    """Connected components of the adjacency graph in index order, each with its report."""
    pos = {s: i for i, s in enumerate(A.index)}
    comps = sorted(
        (tuple(sorted(c, key=pos.__getitem__)) for c in nx.connected_components(A.adjacency())),
        key=lambda c: pos[c[0]],
    )
    return [(c, perron_type(A.restrict(c), eps)) for c in comps]


def split_by_type(A: CartanMatrix) -> dict:
    """Index sets of the A+, A0 and A- parts."""
    out = {kind: [] for kind in PerronType}
    for comp, report in components(A):
        out[report.type].extend(comp)
    return out


def is_loxodromic(A: CartanMatrix, dimension: int) -> bool:
    """Every component Negative and rank d + 1."""
    return all(r.type is PerronType.NEGATIVE for _, r in components(A)) and _matrix_rank(A, 0.0) == dimension + 1
