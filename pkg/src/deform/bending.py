"""
Bending along gluing-tree edges and the splitting map.

Bending an edge by u multiplies its stored value E by e^((d+1)u). Along the
probe circuit C = (s_left, s_1, ..., s_j, s_right) through the shared vertex,

    C(A)     = K1 (x1 + E y1)
    C-bar(A) = K2 (x2 + y2 / E)

with x1, y1, x2, y2 > 0 and K1, K2 of one sign, so the probe ratio is a
strictly increasing function of E.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import networkx as nx

from src.arithmetic.alg_scalar import ONE, AlgScalar
from src.arithmetic.scalar import Approx, Scalar, scalar_sqrt
from src.cartan.cartan_matrix import CartanMatrix
from src.cartan.circuits import Circuit, cyclic_product, fundamental_cycles
from src.cartan.gauge import same_scalar
from src.deform.assembly import Assembly, assemble
from src.deform.charts import cell_chart
from src.deform.points import DeformationPoint, as_ratio, make_point
from src.polytope.gluing_tree import GluingEdge
from src.polytope.labeled_polytope import LabeledPolytope
from src.polytope.prismatic import PrismaticCircuit, find_prismatic, split
from src.utils.errors import (
    BoxtimesMismatch,
    ConstraintViolated,
    NoProbeCircuit,
    NonPositiveBend,
    NotEssential,
    ValidationError,
)

logger = logging.getLogger(__name__)

EdgeRef = Union[GluingEdge, int]


@dataclass(frozen=True)
class BendingFiberData:
    K1: Scalar
    x1: Scalar
    y1: Scalar
    K2: Scalar
    x2: Scalar
    y2: Scalar
    circuit: Circuit
    dim: int
    edge: int = 0

    def numerator(self, E: Scalar) -> Scalar:
        """C(A) at bending value E."""
        return self.K1 * (self.x1 + E * self.y1)

    def denominator(self, E: Scalar) -> Scalar:
        """C-bar(A) at bending value E."""
        return self.K2 * (self.x2 + self.y2 / E)

    def ratio(self, E: Scalar) -> Scalar:
        return self.numerator(E) / self.denominator(E)

    def log_ratio(self, u: float, E0: Scalar = ONE) -> float:
        """log(N/D) after bending by u from E0."""
        E = float(E0) * math.exp((self.dim + 1) * u)
        # K1 / K2 > 0
        return (
            math.log(float(self.K1) / float(self.K2))
            + math.log(float(self.x1) + E * float(self.y1))
            - math.log(float(self.x2) + float(self.y2) / E)
        )

    def to_json(self) -> dict:
        from src.utils.conversion_utils import ConversionUtils

        out = {k: ConversionUtils.scalar_to_json(getattr(self, k)) for k in ("K1", "x1", "y1", "K2", "x2", "y2")}
        out.update({"circuit": self.circuit.to_json(), "dim": self.dim, "edge": self.edge})
        return out


def _index(pt: DeformationPoint, edge: EdgeRef) -> int:
    index = edge.index if isinstance(edge, GluingEdge) else int(edge)
    if not 0 <= index < len(pt.tree.edges):
        raise ValidationError(f"no tree edge {index}")
    return index


def probe_path(A: CartanMatrix, s_left: str, s_right: str, delta: Sequence[str]) -> Optional[Tuple[str, ...]]:
    """
    Shortest path s_left -> s_right through the shared vertex on non-zero
    entries, lexicographically least among the shortest.
    """
    g = nx.Graph()
    members = [s_left, *delta, s_right]
    g.add_nodes_from(members)
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if {x, y} == {s_left, s_right}:
                continue
            if not A[x, y].is_zero() or not A[y, x].is_zero():
                g.add_edge(x, y)
    try:
        paths = list(nx.all_shortest_paths(g, s_left, s_right))
    except nx.NetworkXNoPath:
        return None
    return tuple(min(paths, key=lambda p: [A.position(s) for s in p]))


def bending_data(pt: DeformationPoint, edge: EdgeRef, assembly: Optional[Assembly] = None) -> BendingFiberData:
    """
    Closed-form dependence of the probe circuit of ``edge`` on its bending value.

    Raises:
        NoProbeCircuit: no connecting path through the shared vertex
        ConstraintViolated: the positivity or sign conditions fail
    """
    index = _index(pt, edge)
    asm = assembly or assemble(pt)
    frame = asm.frame(index)
    A = asm.matrix
    path = probe_path(A, frame.s_left, frame.s_right, pt.tree.edges[index].delta)
    if path is None:
        raise NoProbeCircuit(f"no circuit joins {frame.s_left} and {frame.s_right} through the shared vertex")
    forward = backward = ONE
    for a, b in zip(path, path[1:]):
        forward = forward * A[a, b]
        backward = backward * A[b, a]
    data = BendingFiberData(
        K1=-forward, x1=-frame.a0, y1=-frame.a1,
        K2=-backward, x2=-frame.p, y2=-frame.b1,
        circuit=Circuit(path), dim=pt.dim, edge=index,
    )
    for name in ("x1", "y1", "x2", "y2"):
        if getattr(data, name).sign() <= 0:
            raise ConstraintViolated(f"edge {index}: {name} = {getattr(data, name)} is not positive")
    if data.K1.sign() == 0 or data.K1.sign() != data.K2.sign():
        raise ConstraintViolated(f"edge {index}: K1 = {data.K1} and K2 = {data.K2} differ in sign")
    return data


def solve_bend(data: BendingFiberData, ratio) -> Scalar:
    """The unique E > 0 whose probe ratio N/D equals ``ratio``."""
    c = as_ratio(ratio)
    a = data.K1 * data.y1
    b = data.K1 * data.x1 - c * data.K2 * data.x2
    cc = -(c * data.K2 * data.y2)
    root = scalar_sqrt(b * b - 4 * a * cc)
    for E in ((-b + root) / (2 * a), (-b - root) / (2 * a)):
        if E.sign() > 0:
            return E
    raise ConstraintViolated(f"no positive bending value reaches ratio {c}")


def bend(pt: DeformationPoint, edge: EdgeRef, u: Optional[float] = None, E: Optional[Scalar] = None) -> DeformationPoint:
    """
    Bend by u (E <- E e^((d+1)u)) or by an explicit positive factor E.

    Raises:
        NonPositiveBend: if the factor is not positive
    """
    index = _index(pt, edge)
    if (u is None) == (E is None):
        raise ValidationError("give exactly one of u and E")
    if u is not None:
        factor = ONE if u == 0 else Approx(math.exp((pt.dim + 1) * u))
    else:
        factor = E if isinstance(E, Approx) else (Approx(E) if isinstance(E, float) else AlgScalar.coerce(E))
    if factor.sign() <= 0:
        raise NonPositiveBend(f"bending factor {factor} must be positive")
    bends = list(pt.bends)
    bends[index] = bends[index] * factor
    return pt.with_bends(bends)


@dataclass(frozen=True, eq=False)
class CutResult:
    """
    Points of both sides of a cut.

    ``left`` and ``right`` live on the untruncated bases; the truncated
    pieces are kept alongside. The truncation facet of a piece is fixed by
    its base matrix, so a base point determines the point of the piece.
    """

    delta: Tuple[str, ...]
    left: DeformationPoint
    right: DeformationPoint
    ratio: Scalar
    left_piece: LabeledPolytope
    right_piece: LabeledPolytope


def _restrict(pt: DeformationPoint, P) -> DeformationPoint:
    chart = cell_chart(P)
    leaves = {frozenset(n.facets): leaf.matrix for n, leaf in zip(pt.tree.nodes, pt.leaves)}
    bends = {frozenset(e.delta): E for e, E in zip(pt.tree.edges, pt.bends)}
    return make_point(
        chart,
        [leaves[frozenset(n.facets)] for n in chart.tree.nodes],
        [bends[frozenset(e.delta)] for e in chart.tree.edges],
        check=False,
    )


def interface_ratio(pt: DeformationPoint, delta: Sequence[str], eps: float = 1.0e-9) -> Scalar:
    """
    Ratio of the first fundamental cycle of the shared vertex, equal on both
    sides; 1 for a vertex whose diagram is a tree.
    """
    sides = [leaf.matrix for n, leaf in zip(pt.tree.nodes, pt.leaves) if set(delta) <= set(n.facets)]
    W = pt.polytope.coxeter_matrix().restrict(delta)
    cycles = fundamental_cycles(W.diagram(), W.index)
    if not cycles:
        return ONE
    _, C = cycles[0]
    values = [cyclic_product(A, C) / cyclic_product(A, C.reversed()) for A in sides]
    if any(not same_scalar(v, values[0], eps) for v in values[1:]):
        raise BoxtimesMismatch(f"sides of {list(delta)} disagree on {C}: {values}")
    return values[0]


def cut(pt: DeformationPoint, delta) -> CutResult:
    """
    Split a point along an essential circuit into the points of both pieces.

    The points are returned on the untruncated bases of the split, next to
    the truncated pieces they determine.

    Raises:
        NotEssential: delta is not an essential circuit of the polytope
    """
    G = pt.polytope
    facets = tuple(delta.facets) if isinstance(delta, PrismaticCircuit) else tuple(delta)
    facets = G.sort_facets(facets)
    edge = next((e for e in pt.tree.edges if set(e.delta) == set(facets)), None)
    if edge is None:
        kinds = [c.kind for c in find_prismatic(G, with_groups=False) if set(c.facets) == set(facets)]
        found = kinds[0].value if kinds else "not prismatic"
        raise NotEssential(f"{list(facets)} is not an essential circuit ({found})")
    pieces = split(G, facets)
    left = _restrict(pt, pieces.left_base)
    right = _restrict(pt, pieces.right_base)
    ratio = interface_ratio(pt, facets)
    logger.debug("cut along %s with interface ratio %s", list(facets), ratio)
    return CutResult(facets, left, right, ratio, pieces.left, pieces.right)
