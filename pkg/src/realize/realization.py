"""
Vinberg realization of a loxodromic Cartan matrix.

A factorization A_st = alpha_s(b_t) with alpha_s, b_t in R^(d+1) gives the
reflections sigma_s = Id - alpha_s (x) b_s, acting on column vectors by
x -> x - alpha_s(x) b_s. The factorization is exact when the matrix is,
otherwise it comes from a truncated SVD.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from src.arithmetic.alg_scalar import ONE, ZERO
from src.arithmetic.linalg import pivot_rows, row_reduce, solve
from src.arithmetic.scalar import is_exact
from src.cartan.cartan_matrix import CartanMatrix, validate_cartan
from src.cartan.perron import PerronType, components
from src.utils.errors import NotAHyperplane, NotLoxodromic, RankDeficient, ValidationError

logger = logging.getLogger(__name__)

REPRODUCTION_EPS = 1.0e-10


@dataclass(frozen=True, eq=False)
class VinbergRealization:
    """
    Functionals (rows of ``alphas``) and polars (rows of ``bs``) indexed by
    ``index``. ``exact`` keeps the exact rows when they are known.
    """

    index: Tuple[str, ...]
    dimension: int
    alphas: np.ndarray
    bs: np.ndarray
    error: float = 0.0
    exact: Optional[Tuple[Tuple[tuple, ...], Tuple[tuple, ...]]] = None

    def position(self, s: str) -> int:
        try:
            return self.index.index(s)
        except ValueError as e:
            raise ValidationError(f"unknown facet {s}") from e

    def alpha(self, s: str) -> np.ndarray:
        return self.alphas[self.position(s)]

    def b(self, s: str) -> np.ndarray:
        return self.bs[self.position(s)]

    def products(self) -> np.ndarray:
        """The matrix alpha_s(b_t) read back from the realization."""
        return self.alphas @ self.bs.T

    def exact_products(self) -> Optional[List[list]]:
        if self.exact is None:
            return None
        alphas, bs = self.exact
        return [[_pair(a, b) for b in bs] for a in alphas]

    def generator(self, s: str) -> np.ndarray:
        i = self.position(s)
        return np.eye(self.dimension + 1) - np.outer(self.bs[i], self.alphas[i])

    def generators(self) -> Dict[str, np.ndarray]:
        return {s: self.generator(s) for s in self.index}

    def word_matrix(self, word: Iterable[str]) -> np.ndarray:
        out = np.eye(self.dimension + 1)
        for s in word:
            out = out @ self.generator(s)
        return out

    def to_json(self, hex_floats: bool = False) -> dict:
        fmt = float.hex if hex_floats else float
        return {
            "index": list(self.index),
            "dimension": self.dimension,
            "alphas": [[fmt(float(x)) for x in row] for row in self.alphas],
            "bs": [[fmt(float(x)) for x in row] for row in self.bs],
            "generators": {s: [[fmt(float(x)) for x in row] for row in g] for s, g in self.generators().items()},
            "error": self.error,
            "exact": self.exact is not None,
        }


def _pair(alpha: Sequence, b: Sequence):
    acc = ZERO
    for x, y in zip(alpha, b):
        acc = acc + x * y
    return acc


def check_loxodromic(A: CartanMatrix, eps: float = 1.0e-9) -> int:
    """
    Rank of A after checking it is a valid Cartan matrix of negative type.

    Raises:
        NotLoxodromic: invalid entries or a component of non-negative type
    """
    violations = validate_cartan(A, eps)
    if violations:
        raise NotLoxodromic(f"not a Cartan matrix: {violations[0].message}", detail=violations)
    for comp, report in components(A, eps if not A.is_exact else 0.0):
        if report.type is not PerronType.NEGATIVE:
            raise NotLoxodromic(f"component {list(comp)} has {report.type.value} type")
    if A.is_exact:
        return len(row_reduce(A.rows())[1])
    return int(np.linalg.matrix_rank(A.float_array(), tol=max(eps, 1.0e-12) * A.size))


def _exact_factorization(A: CartanMatrix) -> Tuple[List[tuple], List[tuple]]:
    rows = A.rows()
    P = pivot_rows(rows)
    Q = row_reduce([rows[i] for i in P])[1]
    block_t = [[rows[P[i]][q] for i in range(len(P))] for q in Q]
    alphas = []
    for i, row in enumerate(rows):
        if i in P:
            k = P.index(i)
            alphas.append(tuple(ONE if j == k else ZERO for j in range(len(P))))
        else:
            alphas.append(tuple(solve(block_t, [row[q] for q in Q])))
    bs = [tuple(rows[p][t] for p in P) for t in range(len(rows))]
    return alphas, bs


def _float_factorization(A: np.ndarray, r: int) -> Tuple[np.ndarray, np.ndarray]:
    U, S, Vt = scipy.linalg.svd(A)
    return U[:, :r] * S[:r], Vt[:r, :].T


def _as_floats(rows) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in rows], dtype=float)


def realize(
    A: CartanMatrix, dimension: Optional[int] = None, exact: bool = True, eps: float = REPRODUCTION_EPS
) -> VinbergRealization:
    """
    Realize a loxodromic Cartan matrix.

    Args:
        A: valid Cartan matrix whose components all have negative type
        dimension: expected d; the rank must be d + 1
        exact: factor exact matrices by exact elimination
        eps: bound on max |alpha_s(b_t) - A_st|

    Raises:
        NotLoxodromic: A is not a loxodromic Cartan matrix
        RankDeficient: the rank differs from ``dimension + 1``
    """
    r = check_loxodromic(A)
    if dimension is not None and r != dimension + 1:
        raise RankDeficient(f"rank {r}, expected {dimension + 1}")
    if exact and A.is_exact:
        ex_alphas, ex_bs = _exact_factorization(A)
        alphas, bs = _as_floats(ex_alphas), _as_floats(ex_bs)
        stored = (tuple(ex_alphas), tuple(ex_bs))
    else:
        alphas, bs = _float_factorization(A.float_array(), r)
        stored = None
    error = float(np.max(np.abs(alphas @ bs.T - A.float_array())))
    if error > eps:
        raise RankDeficient(f"factorization reproduces A only to {error:.3e}")
    logger.debug("realized %s in dimension %d (error %.2e)", list(A.index), r - 1, error)
    return VinbergRealization(A.index, r - 1, alphas, bs, error, stored)


def realize_point(pt, eps: float = REPRODUCTION_EPS) -> VinbergRealization:
    """
    Realization of a deformation point from its assembled frame.

    Raises:
        NotLoxodromic: the assembled matrix is not a loxodromic Cartan matrix
    """
    from src.deform.assembly import assemble

    asm = assemble(pt, validate=True, eps=1.0e-9)
    check_loxodromic(asm.matrix)
    facets = asm.matrix.index
    alphas = _as_floats([asm.alphas[s] for s in facets])
    bs = _as_floats([asm.bs[s] for s in facets])
    error = float(np.max(np.abs(alphas @ bs.T - asm.matrix.float_array())))
    stored = None
    if asm.matrix.is_exact and all(is_exact(x) for s in facets for x in list(asm.alphas[s]) + list(asm.bs[s])):
        stored = (tuple(tuple(asm.alphas[s]) for s in facets), tuple(tuple(asm.bs[s]) for s in facets))
    if error > eps:
        raise NotLoxodromic(f"assembled frame reproduces the matrix only to {error:.3e}")
    return VinbergRealization(facets, pt.dim, alphas, bs, error, stored)


def bend_realization(R: VinbergRealization, delta: Sequence[str], side: Iterable[str], E: float) -> VinbergRealization:
    """
    Conjugate the facets in ``side`` by the bending g_u across the interface
    ``delta``: g_u is e^u on Pi = span(b_s, s in delta) and e^(-d u) on the
    common kernel line of the alpha_s, with e^((d+1) u) = E.

    Raises:
        NotAHyperplane: the polars of ``delta`` do not span a hyperplane
    """
    if E <= 0:
        raise ValidationError(f"bending value must be positive, got {E}")
    d = R.dimension
    delta = list(delta)
    plane = np.array([R.b(s) for s in delta]).T
    if len(delta) != d or np.linalg.matrix_rank(plane) != d:
        raise NotAHyperplane(f"{delta} does not span a hyperplane")
    kernel = scipy.linalg.null_space(np.array([R.alpha(s) for s in delta]))
    if kernel.shape[1] != 1:
        raise NotAHyperplane(f"the functionals of {delta} have a {kernel.shape[1]}-dimensional kernel")
    basis = np.hstack([plane, kernel])
    eu = math.exp(math.log(E) / (d + 1))
    g = basis @ np.diag([eu] * d + [eu ** (-d)]) @ np.linalg.inv(basis)
    g_inv = np.linalg.inv(g)
    moved = set(side)
    alphas = R.alphas.copy()
    bs = R.bs.copy()
    for i, s in enumerate(R.index):
        if s in moved:
            alphas[i] = R.alphas[i] @ g_inv
            bs[i] = g @ R.bs[i]
    return VinbergRealization(R.index, d, alphas, bs, R.error)
