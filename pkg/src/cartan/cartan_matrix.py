"""
Cartan matrices: the data A_st = alpha_s(b_t) of a reflection polytope.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.scalar import INF, Approx, Scalar, is_exact, make_cos_entry
from src.coxeter.coxeter_matrix import CoxeterMatrix, Violation
from src.utils.errors import IndexMismatch, InfiniteLabel, UnknownFacet, ValidationError

logger = logging.getLogger(__name__)

# products 4cos^2(pi/m) that lie in Q(sqrt2, sqrt3): m = 3, 4, 6, 8, 12, 24
EXACT_COS_PRODUCTS = (
    AlgScalar(1),
    AlgScalar(2),
    AlgScalar(3),
    AlgScalar(2, 1),
    AlgScalar(2, 0, 1),
    AlgScalar(2, "1/2", 0, "1/2"),
)


def _coerce_entry(x) -> Scalar:
    if isinstance(x, Approx):
        return x
    if isinstance(x, float):
        return Approx(x)
    return AlgScalar.coerce(x)


class CartanMatrix:
    """
    Dense square matrix of Scalars indexed by facet names.

    Entries are stored in a read-only numpy object array.
    """

    __slots__ = ("_index", "_pos", "_entries", "_graph")

    def __init__(self, index: Sequence[str], entries) -> None:
        self._index = tuple(str(s) for s in index)
        n = len(self._index)
        if len(set(self._index)) != n:
            raise ValidationError(f"duplicate facet names in {self._index}")
        arr = np.empty((n, n), dtype=object)
        rows = list(entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError("Cartan entries shape does not match the index")
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                arr[i, j] = _coerce_entry(x)
        arr.setflags(write=False)
        self._entries = arr
        self._pos = {s: i for i, s in enumerate(self._index)}
        self._graph: Optional[nx.Graph] = None

    # access

    @property
    def index(self) -> Tuple[str, ...]:
        return self._index

    @property
    def size(self) -> int:
        return len(self._index)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def position(self, s: str) -> int:
        try:
            return self._pos[s]
        except KeyError:
            raise UnknownFacet(f"unknown facet {s!r}") from None

    def __getitem__(self, pair: Tuple[str, str]) -> Scalar:
        s, t = pair
        return self._entries[self.position(s), self.position(t)]

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self._entries.flat)

    def rows(self) -> List[List[Scalar]]:
        return [list(r) for r in self._entries]

    def float_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self._entries], dtype=float)

    def edge_product(self, s: str, t: str) -> Scalar:
        return self[s, t] * self[t, s]

    def adjacency(self) -> nx.Graph:
        """Underlying graph: edge st when A_st or A_ts is non-zero."""
        if self._graph is None:
            g = nx.Graph()
            g.add_nodes_from(self._index)
            n = self.size
            for i in range(n):
                for j in range(i + 1, n):
                    if not self._entries[i, j].is_zero() or not self._entries[j, i].is_zero():
                        g.add_edge(self._index[i], self._index[j])
            self._graph = g
        return self._graph

    def is_connected(self) -> bool:
        return self.size == 0 or nx.is_connected(self.adjacency())

    # derived matrices

    def restrict(self, subset: Iterable[str]) -> "CartanMatrix":
        wanted = set(subset)
        for s in wanted:
            self.position(s)
        keep = [s for s in self._index if s in wanted]
        idx = [self._pos[s] for s in keep]
        return CartanMatrix(keep, [[self._entries[i, j] for j in idx] for i in idx])

    def reorder(self, order: Sequence[str]) -> "CartanMatrix":
        if sorted(order) != sorted(self._index):
            raise IndexMismatch(f"{list(order)} is not a permutation of {list(self._index)}")
        idx = [self.position(s) for s in order]
        return CartanMatrix(order, [[self._entries[i, j] for j in idx] for i in idx])

    def relabel(self, mapping: Mapping[str, str]) -> "CartanMatrix":
        return CartanMatrix([mapping.get(s, s) for s in self._index], self.rows())

    def conjugate(self, diagonal: Mapping[str, Scalar]) -> "CartanMatrix":
        """D A D^-1 for the positive diagonal D with the given entries (default 1)."""
        d = [_coerce_entry(diagonal.get(s, 1)) for s in self._index]
        n = self.size
        rows = [[self._entries[i, j] if i == j else d[i] * self._entries[i, j] / d[j] for j in range(n)] for i in range(n)]
        return CartanMatrix(self._index, rows)

    def transpose(self) -> "CartanMatrix":
        return CartanMatrix(self._index, [list(r) for r in self._entries.T])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanMatrix):
            return NotImplemented
        return self._index == other._index and all(
            x == y for x, y in zip(self._entries.flat, other._entries.flat)
        )

    def __hash__(self) -> int:
        return hash((self._index, tuple(self._entries.flat)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._entries)
        return f"CartanMatrix({list(self._index)}, [{body}])"

    # serialization

    def to_json(self) -> Dict:
        from src.utils.conversion_utils import ConversionUtils

        return {
            "index": list(self._index),
            "entries": [[ConversionUtils.scalar_to_json(x) for x in row] for row in self._entries],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CartanMatrix":
        from src.utils.conversion_utils import ConversionUtils

        return cls(
            data["index"],
            [[ConversionUtils.scalar_from_json(x) for x in row] for row in data["entries"]],
        )


def cosine_matrix(M: CoxeterMatrix) -> CartanMatrix:
    """Symmetric Cartan matrix with entries -2cos(pi/M_st)."""
    n = M.size
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            m = M.table[i][j]
            if i == j:
                row.append(AlgScalar(2))
            elif m == INF:
                raise InfiniteLabel(f"pair ({M.index[i]}, {M.index[j]}) has label inf")
            else:
                row.append(make_cos_entry(m))
        rows.append(row)
    return CartanMatrix(M.index, rows)


def _approx_violation(x: Approx, eps: float) -> Optional[str]:
    if x.value > eps:
        return "positive off-diagonal entry"
    if 0.0 < x.value <= eps:
        return "Inconclusive: entry sign within tolerance of zero"
    return None


def _product_violation(p: Scalar, eps: float) -> Optional[str]:
    if isinstance(p, Approx):
        v = p.value
        if v >= 4.0 - eps:
            return None
        if v <= eps:
            return "Inconclusive: edge product within tolerance of zero"
        m = math.pi / math.acos(min(1.0, math.sqrt(v) / 2.0))
        m_int = round(m)
        if m_int >= 3 and abs(4.0 * math.cos(math.pi / m_int) ** 2 - v) <= eps:
            return None
        return f"edge product {v:.12g} is not 4cos^2(pi/m) and below 4"
    if p >= 4 or p in EXACT_COS_PRODUCTS:
        return None
    return f"edge product {p} is not 4cos^2(pi/m) and below 4"


def validate_cartan(A: CartanMatrix, eps: float = 1.0e-9) -> List[Violation]:
    """
    Check A_ss = 2, A_st <= 0, A_st = 0 iff A_ts = 0, and the product rule.

    Exact entries are decided exactly; approximate ones with tolerance
    ``eps`` and an "Inconclusive" violation inside the tolerance band.
    """
    violations: List[Violation] = []
    idx = A.index
    E = A.entries
    n = A.size
    for i in range(n):
        x = E[i, i]
        if isinstance(x, Approx):
            if abs(x.value - 2.0) > eps:
                violations.append(Violation((idx[i],), f"diagonal entry {x} != 2"))
        elif x != 2:
            violations.append(Violation((idx[i],), f"diagonal entry {x} != 2"))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            x = E[i, j]
            msg = _approx_violation(x, eps) if isinstance(x, Approx) else (
                "positive off-diagonal entry" if x.sign() > 0 else None
            )
            if msg:
                violations.append(Violation((idx[i], idx[j]), msg))
    for i in range(n):
        for j in range(i + 1, n):
            x, y = E[i, j], E[j, i]
            if x.is_zero() != y.is_zero():
                violations.append(Violation((idx[i], idx[j]), "A_st = 0 but A_ts != 0"))
                continue
            if x.is_zero():
                continue
            msg = _product_violation(x * y, eps)
            if msg:
                violations.append(Violation((idx[i], idx[j]), msg))
    if violations:
        logger.debug("Cartan validation found %d violations", len(violations))
    return violations


def is_valid(A: CartanMatrix, eps: float = 1.0e-9) -> bool:
    return not validate_cartan(A, eps)


def coxeter_of(A: CartanMatrix) -> CoxeterMatrix:
    """Labels read back from exact edge products (>= 4 reads as inf)."""
    table_products = {1: 3, 2: 4, 3: 6}
    n = A.size
    table = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = A.entries[i, j] * A.entries[j, i]
            if p.is_zero():
                continue
            if isinstance(p, Approx):
                v = p.value
                m = INF if v >= 4.0 else round(math.pi / math.acos(math.sqrt(v) / 2.0))
            elif p >= 4:
                m = INF
            else:
                ok, value = p.is_integer()
                if ok and value in table_products:
                    m = table_products[value]
                else:
                    m = {EXACT_COS_PRODUCTS[3]: 8, EXACT_COS_PRODUCTS[4]: 12, EXACT_COS_PRODUCTS[5]: 24}.get(p)
                    if m is None:
                        raise ValidationError(f"edge product {p} has no label")
            table[i][j] = table[j][i] = m
    return CoxeterMatrix(A.index, table)


@dataclass(frozen=True)
class CyclicRatio:
    """Ratio C(A) / C-bar(A) kept exactly as a pair, with its logarithm."""

    num: Scalar
    den: Scalar
    log_value: Approx

    @property
    def is_zero_log(self) -> bool:
        """R = 0, decided exactly when both products are exact."""
        return self.num == self.den

    def ratio(self) -> Scalar:
        return self.num / self.den
