"""
Diagonal-conjugacy equivalence and the canonical tree gauge.

Two Cartan matrices are equivalent when A' = D A D^-1 for a positive
diagonal D. Every cyclic product is a monomial in edge products and
directed simple-cycle products, so comparing that finite set decides
equivalence.
"""

import logging
import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.arithmetic.alg_scalar import ONE
from src.arithmetic.scalar import Approx, Scalar, scalar_sqrt
from src.cartan.cartan_matrix import CartanMatrix
from src.cartan.circuits import (
    MAX_CYCLES,
    cyclic_product,
    directed_simple_cycles,
    fundamental_cycles,
)
from src.utils.basic_utils import BasicUtils
from src.utils.errors import Disconnected, IndexMismatch

logger = logging.getLogger(__name__)


def same_scalar(x: Scalar, y: Scalar, eps: float = 1.0e-9) -> bool:
    """Exact equality on exact data, relative tolerance once an Approx is involved."""
    if isinstance(x, Approx) or isinstance(y, Approx):
        return math.isclose(float(x), float(y), rel_tol=eps, abs_tol=eps)
    return x == y


def equivalent(A: CartanMatrix, B: CartanMatrix, eps: float = 1.0e-9, max_cycles: int = MAX_CYCLES) -> bool:
    if set(A.index) != set(B.index):
        raise IndexMismatch(f"index sets differ: {A.index} vs {B.index}")
    if A.index != B.index:
        B = B.reorder(A.index)
    for s in A.index:
        if not same_scalar(A[s, s], B[s, s], eps):
            return False
    if set(map(frozenset, A.adjacency().edges())) != set(map(frozenset, B.adjacency().edges())):
        return False
    for s, t in A.adjacency().edges():
        if not same_scalar(A.edge_product(s, t), B.edge_product(s, t), eps):
            return False
    for circuit in directed_simple_cycles(A.adjacency(), A.index, max_cycles):
        if not same_scalar(cyclic_product(A, circuit), cyclic_product(B, circuit), eps):
            logger.debug("cyclic product differs on %s", circuit)
            return False
    return True


def tree_diagonal(
    A: CartanMatrix, targets: Mapping[Tuple[str, str], Scalar], tree_edges: Sequence[Tuple[str, str]]
) -> Dict[str, Scalar]:
    """
    Diagonal D with (D A D^-1)_st = targets[s, t] on every tree edge (s, t).

    The first node of each tree component gets d = 1.
    """
    d: Dict[str, Scalar] = {}
    adjacency: Dict[str, List[Tuple[str, str]]] = {}
    for s, t in tree_edges:
        adjacency.setdefault(s, []).append((s, t))
        adjacency.setdefault(t, []).append((s, t))
    for root in A.index:
        if root in d:
            continue
        d[root] = ONE
        stack = [root]
        while stack:
            u = stack.pop()
            for s, t in adjacency.get(u, []):
                v = t if u == s else s
                if v in d:
                    continue
                # d_s a_st / d_t = target_st
                if u == s:
                    d[v] = d[u] * A[s, t] / targets[s, t]
                else:
                    d[v] = d[u] * targets[s, t] / A[s, t]
                stack.append(v)
    return d


def canonical_gauge(A: CartanMatrix) -> CartanMatrix:
    """
    Equivalent matrix symmetric on the lexicographic spanning tree, each tree
    entry equal to -sqrt(A_st A_ts); non-tree pairs carry the circuit asymmetry.
    """
    if A.size == 0:
        return A
    if not A.is_connected():
        raise Disconnected("canonical gauge needs a connected adjacency graph")
    tree = BasicUtils.lex_spanning_tree(A.adjacency(), A.index)
    targets = {(s, t): -scalar_sqrt(A.edge_product(s, t)) for s, t in tree}
    return A.conjugate(tree_diagonal(A, targets, tree))


def invariant_signature(A: CartanMatrix) -> Tuple:
    """
    Complete equivalence fingerprint: every edge product plus (C, C-bar) on
    the fundamental cycles of the lexicographic spanning tree.
    """
    idx = A.index
    products = []
    for i, s in enumerate(idx):
        for t in idx[i + 1:]:
            products.append(A.edge_product(s, t))
    cycles = []
    for _, circuit in fundamental_cycles(A.adjacency(), idx):
        cycles.append((cyclic_product(A, circuit), cyclic_product(A, circuit.reversed())))
    return (idx, tuple(products), tuple(cycles))


def signature_key(A: CartanMatrix, digits: Optional[int] = None) -> Tuple:
    """Hashable form of the signature; Approx values are rounded to ``digits``."""
    digits = 9 if digits is None else digits

    def norm(x):
        return round(float(x), digits) if isinstance(x, Approx) else x

    idx, products, cycles = invariant_signature(A)
    return (idx, tuple(norm(p) for p in products), tuple((norm(c), norm(cb)) for c, cb in cycles))
