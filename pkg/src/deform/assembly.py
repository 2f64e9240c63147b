"""
Global Cartan matrix of a glued truncation polytope.

Every facet s gets a covector alpha_s and a vector b_s in R^(d+1) with
alpha_s(b_t) = A_st. The root leaf fixes the frame (alpha_s = e_s,
b_t = column t); each child leaf is gauge-matched on the shared vertex and
placed across it with its bending value E; free truncations come last.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from src.arithmetic.alg_scalar import ONE, ZERO, AlgScalar
from src.arithmetic.linalg import inverse, nullspace, solve
from src.arithmetic.scalar import Approx, Scalar, is_exact
from src.cartan.cartan_matrix import CartanMatrix, validate_cartan
from src.cartan.gauge import same_scalar, tree_diagonal
from src.polytope.gluing_tree import GluingEdge, GluingNode, GluingTree
from src.utils.basic_utils import BasicUtils
from src.utils.errors import (
    BoxtimesMismatch,
    DivisionByZero,
    NotLoxodromic,
    RankDeficient,
    TruncationDegenerate,
)

logger = logging.getLogger(__name__)

Vec = List[Scalar]

SNAP = 1.0e-12


def pairing(alpha: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for x, y in zip(alpha, b):
        if not x.is_zero() and not y.is_zero():
            acc = acc + x * y
    return acc


def combine(coeffs: Sequence[Scalar], vectors: Sequence[Vec]) -> Vec:
    out = [ZERO] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c.is_zero():
            continue
        out = [x + c * y for x, y in zip(out, v)]
    return out


def scale(c: Scalar, v: Vec) -> Vec:
    return [c * x for x in v]


def _exact(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


def _floats(rows) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in rows], dtype=float)


def kernel_line(rows: Sequence[Vec]) -> Vec:
    """Spanning vector of the one-dimensional common kernel of the covectors."""
    if _exact(rows):
        basis = nullspace(rows)
        if len(basis) != 1:
            raise RankDeficient(f"kernel has dimension {len(basis)}, expected 1")
        return list(basis[0])
    K = null_space(_floats(rows), rcond=1.0e-10)
    if K.shape[1] != 1:
        raise RankDeficient(f"kernel has dimension {K.shape[1]}, expected 1")
    return [Approx(x) for x in K[:, 0]]


def dual_functional(vectors: Sequence[Vec], values: Sequence[Scalar]) -> Vec:
    """
    Covector pi with pi(vectors[i]) = values[i].

    Raises:
        DivisionByZero: if the vectors are dependent
    """
    if _exact(vectors) and _exact([values]):
        return list(solve(vectors, values))
    M = _floats(vectors)
    if np.linalg.cond(M) > 1.0e12:
        raise DivisionByZero("dependent vectors")
    return [Approx(x) for x in np.linalg.solve(M, np.array([float(v) for v in values]))]


def matrix_inverse(rows: Sequence[Vec]) -> List[Vec]:
    if _exact(rows):
        return [list(r) for r in inverse(rows)]
    M = _floats(rows)
    if np.linalg.cond(M) > 1.0e12:
        raise DivisionByZero("singular block")
    return [[Approx(x) for x in r] for r in np.linalg.inv(M)]


@dataclass(frozen=True)
class EdgeFrame:
    """
    Placement data of one tree edge.

    With E the bending value, A[s_right, s_left] = a0 + E * a1 and
    A[s_left, s_right] = p + b1 / E.
    """

    index: int
    parent: int
    child: int
    s_left: str
    s_right: str
    a0: Scalar
    a1: Scalar
    p: Scalar
    b1: Scalar
    sigma: Scalar


@dataclass(frozen=True, eq=False)
class Assembly:
    matrix: CartanMatrix
    frames: Tuple[EdgeFrame, ...]
    alphas: Dict[str, Vec]
    bs: Dict[str, Vec]
    placed: Dict[int, CartanMatrix]

    def frame(self, index: int) -> EdgeFrame:
        for f in self.frames:
            if f.index == index:
                return f
        raise KeyError(index)


def tree_order(tree: GluingTree) -> List[Tuple[GluingNode, GluingNode, GluingEdge]]:
    """(parent, child, edge) triples in breadth-first order from node 0."""
    adjacent: Dict[int, List[Tuple[int, GluingEdge]]] = {n.id: [] for n in tree.nodes}
    for e in tree.edges:
        adjacent[e.left].append((e.right, e))
        adjacent[e.right].append((e.left, e))
    out = []
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, e in sorted(adjacent[u], key=lambda ve: ve[0]):
            if v in seen:
                continue
            seen.add(v)
            out.append((tree.nodes[u], tree.nodes[v], e))
            queue.append(v)
    return out


def _match_gauge(child: CartanMatrix, block: CartanMatrix, eps: float) -> CartanMatrix:
    """Conjugate the child so its block on the shared vertex equals ``block``."""
    delta = block.index
    sub = child.restrict(delta).reorder(delta)
    tree = BasicUtils.lex_spanning_tree(sub.adjacency(), delta)
    d = tree_diagonal(sub, {(s, t): block[s, t] for s, t in tree}, tree)
    matched = child.conjugate(d)
    for s in delta:
        for t in delta:
            if not same_scalar(matched[s, t], block[s, t], eps):
                raise BoxtimesMismatch(
                    f"leaf blocks on {list(delta)} are not equivalent at ({s}, {t}): {matched[s, t]} vs {block[s, t]}"
                )
    return matched


def _place_child(
    parent: GluingNode, child: GluingNode, edge: GluingEdge, A_child: CartanMatrix, E: Scalar,
    alphas: Dict[str, Vec], bs: Dict[str, Vec], placed: Dict[int, CartanMatrix], eps: float,
) -> EdgeFrame:
    delta = edge.delta
    s_left = parent.opposite(edge.vertex)
    s_right = child.opposite(edge.vertex)
    block = placed[parent.id].restrict(delta).reorder(delta)
    matched = _match_gauge(A_child, block, eps)
    try:
        X = matrix_inverse(block.rows())
    except DivisionByZero as e:
        raise TruncationDegenerate(f"interface {list(delta)} has a singular block, so no bending exists") from e
    u = [matched[t, s_right] for t in delta]
    w = [matched[s_right, s] for s in delta]
    Xu = [pairing(row, u) for row in X]
    wX = [pairing(w, [X[i][j] for i in range(len(delta))]) for j in range(len(delta))]
    b0 = combine(Xu, [bs[t] for t in delta])
    alpha0 = combine(wX, [alphas[s] for s in delta])
    sigma = AlgScalar(2) - pairing(w, Xu)

    ell = kernel_line([alphas[s] for s in delta])
    p = pairing(alphas[s_left], b0)
    size = abs(p) if not p.is_zero() else ONE
    ell = scale(-size / pairing(alphas[s_left], ell), ell)
    pi = dual_functional([bs[t] for t in delta] + [ell], [ZERO] * len(delta) + [ONE])

    alphas[s_right] = combine([ONE, E * sigma], [alpha0, pi])
    bs[s_right] = combine([ONE, ONE / E], [b0, ell])
    placed[child.id] = matched
    frame = EdgeFrame(
        index=edge.index, parent=parent.id, child=child.id, s_left=s_left, s_right=s_right,
        a0=pairing(alpha0, bs[s_left]), a1=sigma * pairing(pi, bs[s_left]), p=p, b1=-size, sigma=sigma,
    )
    logger.debug("placed node %d across %s from node %d", child.id, list(delta), parent.id)
    return frame


def _place_truncation(node: GluingNode, vertex, t: str, alphas: Dict[str, Vec], bs: Dict[str, Vec]) -> None:
    names = [s for s in node.facets if s in vertex]
    k = node.opposite(vertex)
    ell = kernel_line([alphas[s] for s in names])
    ell = scale(-ONE / pairing(alphas[k], ell), ell)
    try:
        pi = dual_functional([bs[s] for s in names] + [ell], [ZERO] * len(names) + [ONE])
    except DivisionByZero as e:
        raise TruncationDegenerate(f"vertex {names} spans no truncating hyperplane") from e
    bs[t] = ell
    alphas[t] = scale(AlgScalar(2), pi)


def _snap(rows: List[List[Scalar]]) -> None:
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = rows[i][j], rows[j][i]
            if isinstance(x, Approx) or isinstance(y, Approx):
                if abs(float(x)) <= SNAP and abs(float(y)) <= SNAP:
                    rows[i][j] = rows[j][i] = Approx(0.0)


def assemble(pt, validate: bool = False, eps: float = 1.0e-9) -> Assembly:
    """
    Assemble the Cartan matrix of the whole polytope of a deformation point.

    Raises:
        BoxtimesMismatch: leaves disagree on a shared vertex
        TruncationDegenerate: a free truncation has no hyperplane, or an
            interface block is singular (affine vertex)
        NotLoxodromic: ``validate`` and the result breaks the Cartan conditions
    """
    tree = pt.tree
    n = pt.dim + 1
    root = tree.nodes[0]
    A0 = pt.leaf(0).matrix
    alphas: Dict[str, Vec] = {}
    bs: Dict[str, Vec] = {}
    for i, s in enumerate(root.facets):
        alphas[s] = [ONE if j == i else ZERO for j in range(n)]
        bs[s] = [A0[t, s] for t in root.facets]
    placed = {0: A0}
    frames = []
    for parent, child, edge in tree_order(tree):
        frames.append(_place_child(
            parent, child, edge, pt.leaf(child.id).matrix, pt.bends[edge.index], alphas, bs, placed, eps
        ))
    for node in tree.nodes:
        for vertex, t in sorted(node.truncations.items(), key=lambda vt: vt[1]):
            _place_truncation(node, vertex, t, alphas, bs)

    facets = pt.polytope.facets
    rows = [[pairing(alphas[x], bs[y]) for y in facets] for x in facets]
    pos = {s: i for i, s in enumerate(facets)}
    for node in tree.nodes:
        local = placed[node.id]
        for x in node.facets:
            for y in node.facets:
                rows[pos[x]][pos[y]] = local[x, y]
        for vertex, t in node.truncations.items():
            for s in vertex:
                rows[pos[s]][pos[t]] = rows[pos[t]][pos[s]] = ZERO
    for i in range(len(facets)):
        rows[i][i] = AlgScalar(2)
    _snap(rows)
    matrix = CartanMatrix(facets, rows)
    if validate:
        violations = validate_cartan(matrix, eps)
        if violations:
            v = violations[0]
            raise NotLoxodromic(f"assembled matrix fails at {list(v.where)}: {v.message}")
    return Assembly(matrix, tuple(sorted(frames, key=lambda f: f.index)), alphas, bs, placed)
