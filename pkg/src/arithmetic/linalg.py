"""
Exact linear algebra over AlgScalar using numpy object arrays.

All routines expect exact entries (ints, Fractions or AlgScalars) and never
round. Matrices are copied before elimination.
"""

from typing import List, Sequence, Tuple

import numpy as np

from src.arithmetic.alg_scalar import ONE, ZERO, AlgScalar
from src.arithmetic.scalar import exact
from src.utils.errors import DivisionByZero, RankDeficient


def to_exact_matrix(rows) -> np.ndarray:
    """Object array of AlgScalars; rejects approximate entries."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        out[idx] = exact(value)
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = ONE if i == j else ZERO
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def row_reduce(M) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    R = to_exact_matrix(M)
    n_rows, n_cols = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        pivot = next((r for r in range(row, n_rows) if not R[r, col].is_zero()), None)
        if pivot is None:
            continue
        if pivot != row:
            R[[row, pivot]] = R[[pivot, row]]
        inv = R[row, col].inverse()
        R[row, :] = [x * inv for x in R[row, :]]
        for r in range(n_rows):
            if r != row and not R[r, col].is_zero():
                factor = R[r, col]
                R[r, :] = [x - factor * y for x, y in zip(R[r, :], R[row, :])]
        pivots.append(col)
        row += 1
    return R, pivots


def rank(M) -> int:
    return len(row_reduce(M)[1])


def pivot_rows(M) -> List[int]:
    """Indices of a maximal set of linearly independent rows, greedy in order."""
    A = to_exact_matrix(M)
    chosen: List[int] = []
    for i in range(A.shape[0]):
        candidate = chosen + [i]
        if rank(A[candidate, :]) == len(candidate):
            chosen = candidate
    return chosen


def nullspace(M) -> List[np.ndarray]:
    """Basis of the right kernel {x : M x = 0}."""
    R, pivots = row_reduce(M)
    n_cols = R.shape[1]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = np.empty(n_cols, dtype=object)
        vec.fill(ZERO)
        vec[f] = ONE
        for row, p in enumerate(pivots):
            vec[p] = -R[row, f]
        basis.append(vec)
    return basis


def left_nullspace(M) -> List[np.ndarray]:
    """Basis of {y : y M = 0}."""
    return nullspace(to_exact_matrix(M).T)


def inverse(M) -> np.ndarray:
    A = to_exact_matrix(M)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError(f"matrix is not square (shape = {A.shape})")
    R, pivots = row_reduce(np.hstack((A, identity_matrix(n))))
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return R[:, n:]


def solve(M, b: Sequence) -> np.ndarray:
    """Unique solution of M x = b for square non-singular M."""
    return matvec(inverse(M), b)


def matmul(A, B) -> np.ndarray:
    A, B = to_exact_matrix(A), to_exact_matrix(B)
    out = zeros((A.shape[0], B.shape[1]))
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = ZERO
            for k in range(A.shape[1]):
                if not A[i, k].is_zero() and not B[k, j].is_zero():
                    acc = acc + A[i, k] * B[k, j]
            out[i, j] = acc
    return out


def matvec(A, x: Sequence) -> np.ndarray:
    A = to_exact_matrix(A)
    out = np.empty(A.shape[0], dtype=object)
    for i in range(A.shape[0]):
        acc = ZERO
        for a, y in zip(A[i, :], x):
            if not a.is_zero():
                acc = acc + a * y
        out[i] = acc
    return out


def dot(u: Sequence, v: Sequence) -> AlgScalar:
    acc = ZERO
    for x, y in zip(u, v):
        acc = acc + AlgScalar.coerce(x) * AlgScalar.coerce(y)
    return acc


def determinant(M) -> AlgScalar:
    A = to_exact_matrix(M)
    n = A.shape[0]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not A[r, col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
            det = -det
        det = det * A[col, col]
        inv = A[col, col].inverse()
        for r in range(col + 1, n):
            if not A[r, col].is_zero():
                factor = A[r, col] * inv
                A[r, col:] = [x - factor * y for x, y in zip(A[r, col:], A[col, col:])]
    return det


def leading_pivot_signs(M) -> List[int]:
    """
    Signs of the successive leading pivots D_k / D_(k-1) without row exchange.

    Stops after the first pivot that is not positive; the returned list is
    therefore all ones except possibly its last element.
    """
    A = to_exact_matrix(M)
    n = A.shape[0]
    signs: List[int] = []
    for k in range(n):
        s = A[k, k].sign()
        signs.append(s)
        if s <= 0:
            break
        inv = A[k, k].inverse()
        for r in range(k + 1, n):
            if not A[r, k].is_zero():
                factor = A[r, k] * inv
                A[r, k:] = [x - factor * y for x, y in zip(A[r, k:], A[k, k:])]
    return signs


def require_rank(M, expected: int) -> None:
    r = rank(M)
    if r != expected:
        raise RankDeficient(f"rank {r}, expected {expected}")
