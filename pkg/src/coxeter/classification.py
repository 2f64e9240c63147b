"""
Spherical / affine / large recognition for Coxeter matrices.

The decision uses the leading pivots of the cosine matrix (Tits form) with
entries -2cos(pi/m), an infinite label contributing exactly -2:

* every pivot positive                      -> spherical
* first n-1 pivots positive, last one zero  -> affine
* anything else                             -> large

Exact in AlgScalar when all labels lie in {2, 3, 4, 6, inf}; other labels
go through certified mpmath intervals.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Tuple

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.intervals import certified_pivot_signs, label_entry_interval
from src.arithmetic.linalg import leading_pivot_signs
from src.arithmetic.scalar import EXACT_LABELS, INF, make_cos_entry
from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.utils.errors import Ambiguous, Inconclusive, Reducible

logger = logging.getLogger(__name__)

MAX_INTERVAL_BITS = 4096


class GroupType(Enum):
    SPHERICAL = "spherical"
    AFFINE = "affine"
    LARGE = "large"


@dataclass(frozen=True)
class GroupClass:
    kind: GroupType
    rank: int
    is_lanner: bool = False
    is_2lanner: bool = False
    is_affine_A_tilde: bool = False

    @property
    def is_spherical(self) -> bool:
        return self.kind is GroupType.SPHERICAL

    @property
    def is_affine(self) -> bool:
        return self.kind is GroupType.AFFINE

    @property
    def is_large(self) -> bool:
        return self.kind is GroupType.LARGE

    def to_json(self) -> dict:
        return {
            "class": self.kind.value,
            "rank": self.rank,
            "is_lanner": self.is_lanner,
            "is_2lanner": self.is_2lanner,
            "is_affine_A_tilde": self.is_affine_A_tilde,
        }


def _exact_cosine_rows(table: Tuple[Tuple, ...]):
    n = len(table)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            m = table[i][j]
            if i == j:
                row.append(AlgScalar(2))
            elif m == INF:
                row.append(AlgScalar(-2))
            else:
                row.append(make_cos_entry(m))
        rows.append(row)
    return rows


def _interval_cosine_rows(table: Tuple[Tuple, ...]):
    n = len(table)
    return [
        [2 if i == j else label_entry_interval(table[i][j]) for j in range(n)]
        for i in range(n)
    ]


@lru_cache(maxsize=None)
def _connected_type(table: Tuple[Tuple, ...], max_bits: int = MAX_INTERVAL_BITS) -> GroupType:
    n = len(table)
    if n <= 1:
        return GroupType.SPHERICAL
    labels = {table[i][j] for i in range(n) for j in range(i + 1, n)}
    if labels <= set(EXACT_LABELS) | {INF}:
        signs = leading_pivot_signs(_exact_cosine_rows(table))
    else:
        try:
            signs = certified_pivot_signs(lambda: _interval_cosine_rows(table), max_bits)
        except Inconclusive as exc:
            if INF in labels:
                raise Ambiguous(f"diagram with infinite labels left undecided: {exc}") from exc
            raise
    if len(signs) == n and all(s > 0 for s in signs):
        return GroupType.SPHERICAL
    if len(signs) == n and signs[-1] == 0:
        return GroupType.AFFINE
    return GroupType.LARGE


def classify(M: CoxeterMatrix, require_irreducible: bool = True) -> GroupClass:
    """
    Class of the Coxeter group of M.

    For reducible input (``require_irreducible=False``) the group is
    spherical when every component is, affine when every component is
    spherical or affine and at least one is affine, large otherwise.
    """
    comps = M.components() if M.size else []
    if require_irreducible and len(comps) > 1:
        raise Reducible(f"diagram has {len(comps)} components")
    kinds = [_connected_type(M.restrict(c).key()) for c in comps]
    if any(k is GroupType.LARGE for k in kinds):
        kind = GroupType.LARGE
    elif any(k is GroupType.AFFINE for k in kinds):
        kind = GroupType.AFFINE
    else:
        kind = GroupType.SPHERICAL
    return GroupClass(kind=kind, rank=M.size)


def is_spherical(M: CoxeterMatrix) -> bool:
    return classify(M, require_irreducible=False).is_spherical


def is_affine_A_tilde(M: CoxeterMatrix) -> bool:
    """Diagram is one cycle through all n >= 3 nodes with every label 3."""
    n = M.size
    if n < 3:
        return False
    g = M.diagram()
    if g.number_of_edges() != n or any(deg != 2 for _, deg in g.degree()):
        return False
    if any(data["label"] != 3 for _, _, data in g.edges(data=True)):
        return False
    return M.is_connected()


def refine(M: CoxeterMatrix) -> GroupClass:
    """Class plus the Lannér, 2-Lannér and affine-A-tilde flags."""
    base = classify(M, require_irreducible=True)
    index = M.index
    lanner = two_lanner = False
    if base.is_large:
        lanner = all(is_spherical(M.restrict(sub)) for sub in combinations(index, len(index) - 1))
        two_lanner = lanner or all(
            is_spherical(M.restrict(sub)) for sub in combinations(index, len(index) - 2)
        )
    logger.debug("refined %s: lanner=%s 2-lanner=%s", index, lanner, two_lanner)
    return replace(
        base,
        is_lanner=lanner,
        is_2lanner=two_lanner,
        is_affine_A_tilde=is_affine_A_tilde(M),
    )
