"""
Points of a deformation space: one canonical-gauge Cartan matrix per leaf
simplex and one bending value E = e^((d+1)u) per gluing-tree edge.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.arithmetic.alg_scalar import ONE, ZERO, AlgScalar
from src.arithmetic.scalar import Approx, Scalar, cos_product, is_exact, scalar_sqrt
from src.cartan.cartan_matrix import CartanMatrix, CyclicRatio, validate_cartan
from src.cartan.circuits import Circuit, canonical_circuit, cyclic_product, undirected_cycles
from src.cartan.perron import PerronType, is_loxodromic, perron_type
from src.coxeter.classification import GroupClass, classify, refine
from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.deform.charts import CellChart, LeafChart, orientation
from src.polytope.gluing_tree import GluingNode, GluingTree
from src.polytope.labeled_polytope import LabeledPolytope, Vertex, as_vertex
from src.utils.errors import (
    ConstraintViolated,
    NonPositiveBend,
    NotLoxodromic,
    ParseError,
    Reducible,
    TruncationDegenerate,
    UnknownVertex,
    ValidationError,
)

logger = logging.getLogger(__name__)

RatioValue = Union[Scalar, int, Fraction, float, CyclicRatio]


@dataclass(frozen=True)
class LeafPoint:
    node: int
    matrix: CartanMatrix
    truncations: Tuple[Tuple[Tuple[str, ...], str], ...] = ()

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "cartan": self.matrix.to_json(),
            "truncations": {t: list(v) for v, t in self.truncations},
        }


@dataclass(frozen=True, eq=False)
class DeformationPoint:
    chart: CellChart
    leaves: Tuple[LeafPoint, ...]
    bends: Tuple[Scalar, ...] = ()

    @property
    def polytope(self) -> LabeledPolytope:
        return self.chart.polytope

    @property
    def tree(self) -> GluingTree:
        return self.chart.tree

    @property
    def dim(self) -> int:
        return self.chart.polytope.dim

    @property
    def is_exact(self) -> bool:
        return all(leaf.matrix.is_exact for leaf in self.leaves) and all(is_exact(E) for E in self.bends)

    def leaf(self, node: int) -> LeafPoint:
        return self.leaves[node]

    def with_bends(self, bends: Sequence[Scalar]) -> "DeformationPoint":
        return DeformationPoint(self.chart, self.leaves, tuple(bends))

    def key(self) -> Tuple:
        return (self.polytope.key(), tuple(leaf.matrix for leaf in self.leaves), self.bends)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeformationPoint):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        from src.utils.conversion_utils import ConversionUtils

        return {
            "chart": self.chart.to_json(),
            "leaves": [leaf.to_json() for leaf in self.leaves],
            "edges": [
                {"delta": list(e.delta), "E": ConversionUtils.scalar_to_json(E)}
                for e, E in zip(self.tree.edges, self.bends)
            ],
        }


@dataclass(frozen=True)
class TruncatabilityReport:
    truncatable: bool
    reason: str
    group: Optional[GroupClass] = None

    def to_json(self) -> dict:
        return {
            "truncatable": self.truncatable,
            "reason": self.reason,
            "group": self.group.to_json() if self.group else None,
        }


# ratios


def as_ratio(value: RatioValue) -> Scalar:
    """A ratio C(A)/C-bar(A); a bare float is read as its logarithm R."""
    if isinstance(value, CyclicRatio):
        value = value.num / value.den
    elif isinstance(value, float):
        value = Approx(math.exp(value))
    elif not isinstance(value, Approx):
        value = AlgScalar.coerce(value)
    if value.sign() <= 0:
        raise ValidationError(f"ratio must be positive, got {value}")
    return value


def log_ratio(r: Scalar) -> float:
    return math.log(float(r))


def monomial(values: Sequence[Scalar], exponents: Sequence[Fraction]) -> Scalar:
    """prod values[k] ** exponents[k]; exact for integer exponents on exact values."""
    if all(q.denominator == 1 for q in exponents) and all(is_exact(v) for v in values):
        out = ONE
        for v, q in zip(values, exponents):
            if q:
                out = out * AlgScalar.coerce(v) ** int(q)
        return out
    return Approx(math.exp(sum(float(q) * log_ratio(v) for v, q in zip(values, exponents))))


def _orient(given: Circuit, target: Circuit) -> int:
    return orientation(target, given.pairs()[0])


def _lookup(chart: CellChart, values: Mapping) -> Dict[Circuit, Scalar]:
    order = chart.polytope.facets
    out: Dict[Circuit, Scalar] = {}
    for key, raw in values.items():
        given = key if isinstance(key, Circuit) else Circuit(tuple(key))
        canon = canonical_circuit(given.nodes, order)
        if canon not in chart.circuits:
            continue
        r = as_ratio(raw)
        out[canon] = r if _orient(given, canon) > 0 else ONE / r
    return out


def check_constraints(chart: CellChart, ratios: Mapping[Circuit, Scalar], eps: float = 1.0e-9) -> None:
    for row in chart.constraints:
        involved = [(chart.circuits[i], k) for i, k in enumerate(row) if k]
        if all(is_exact(ratios[c]) for c, _ in involved):
            prod = ONE
            for c, k in involved:
                prod = prod * AlgScalar.coerce(ratios[c]) ** k
            if prod != ONE:
                raise ConstraintViolated(f"relation {list(row)} gives product {prod} != 1")
        else:
            total = sum(k * log_ratio(ratios[c]) for c, k in involved)
            if abs(total) > eps:
                raise ConstraintViolated(f"relation {list(row)} gives log sum {total:.6g} != 0")


# leaf matrices


def leaf_matrix(node: GluingNode, leaf: LeafChart, ratios: Mapping[Circuit, Scalar]) -> CartanMatrix:
    """
    Canonical-gauge matrix of a node simplex: symmetric -sqrt(M) on tree
    edges, -sqrt(M r) and -sqrt(M / r) across every chord.
    """
    idx = node.facets
    pos = {s: i for i, s in enumerate(idx)}
    rows: List[List[Scalar]] = [[AlgScalar(2) if i == j else ZERO for j in range(len(idx))] for i in range(len(idx))]
    for s, t in leaf.tree_edges:
        x = -scalar_sqrt(cos_product(node.labels[frozenset((s, t))]))
        rows[pos[s]][pos[t]] = rows[pos[t]][pos[s]] = x
    basis = [ratios.get(leaf.circuits[k], ONE) for k in leaf.basis]
    for (s, t), exponents in zip(leaf.chords, leaf.exponents):
        r = monomial(basis, exponents)
        M = cos_product(node.labels[frozenset((s, t))])
        rows[pos[s]][pos[t]] = -scalar_sqrt(M * r)
        rows[pos[t]][pos[s]] = -scalar_sqrt(M / r)
    return CartanMatrix(idx, rows)


def vertex_truncatability(
    A: CartanMatrix, W: CoxeterMatrix, v: Iterable[str], dim: int, eps: float = 1.0e-9
) -> TruncatabilityReport:
    """
    Lanner vertices are truncatable, affine A-tilde ones exactly when their
    cycle has R != 0, any other vertex when its link is loxodromic.
    """
    names = tuple(sorted(v, key=A.position))
    Wv = W.restrict(names)
    try:
        group = refine(Wv)
    except Reducible:
        group = classify(Wv, require_irreducible=False)
    if group.is_lanner:
        return TruncatabilityReport(True, "lanner", group)
    if group.is_affine_A_tilde:
        C = undirected_cycles(Wv.diagram(), names)[0]
        num, den = cyclic_product(A, C), cyclic_product(A, C.reversed())
        if is_exact(num) and is_exact(den):
            moved = num != den
        else:
            moved = abs(math.log(float(num) / float(den))) > eps
        return TruncatabilityReport(moved, "affine cycle moved" if moved else "TruncationDegenerate", group)
    if group.is_spherical:
        return TruncatabilityReport(False, "NotLoxodromic", group)
    sub = A.restrict(names)
    if sub.is_connected() and is_loxodromic(sub, dim - 1):
        return TruncatabilityReport(True, "loxodromic link", group)
    return TruncatabilityReport(False, "NotLoxodromic", group)


def check_leaf(node: GluingNode, A: CartanMatrix, eps: float = 1.0e-9) -> None:
    """
    Raises:
        NotLoxodromic: invalid, non-Negative or rank-deficient leaf matrix
        TruncationDegenerate: a truncated affine vertex with R = 0
    """
    violations = validate_cartan(A, eps)
    if violations:
        raise NotLoxodromic(f"leaf {list(node.facets)} is not a Cartan matrix: {violations[0].message}")
    report = perron_type(A)
    if report.type is not PerronType.NEGATIVE or report.rank != node.dim + 1:
        raise NotLoxodromic(
            f"leaf {list(node.facets)} has type {report.type.value} and rank {report.rank}, "
            f"expected negative of rank {node.dim + 1}"
        )
    W = node.simplex().coxeter_matrix()
    for v in node.truncations:
        verdict = vertex_truncatability(A, W, v, node.dim, eps)
        if not verdict.truncatable:
            if verdict.reason == "TruncationDegenerate":
                raise TruncationDegenerate(f"vertex {sorted(v)} is affine with R = 0")
            raise NotLoxodromic(f"vertex {sorted(v)} has a non-loxodromic link")


def make_leaf(node: GluingNode, A: CartanMatrix, check: bool = True) -> LeafPoint:
    if check:
        check_leaf(node, A)
    truncations = tuple(sorted(
        ((tuple(sorted(v, key=node.facets.index)), t) for v, t in node.truncations.items()),
        key=lambda vt: vt[1],
    ))
    return LeafPoint(node.id, A, truncations)


def check_bends(bends: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    out = []
    for E in bends:
        E = E if isinstance(E, Approx) else (Approx(E) if isinstance(E, float) else AlgScalar.coerce(E))
        if E.sign() <= 0:
            raise NonPositiveBend(f"bending value E = {E} must be positive")
        out.append(E)
    return tuple(out)


def make_point(
    chart: CellChart,
    matrices: Sequence[CartanMatrix],
    bends: Optional[Sequence[Scalar]] = None,
    check: bool = True,
    validate: bool = True,
) -> DeformationPoint:
    """
    Point from one leaf matrix per tree node (in node order) and the bending values.

    ``check`` tests every leaf; ``validate`` also tests the assembled matrix.
    """
    leaves = tuple(make_leaf(node, A, check) for node, A in zip(chart.tree.nodes, matrices))
    bends = check_bends(bends if bends is not None else [ONE] * chart.bends)
    pt = DeformationPoint(chart, leaves, bends)
    if check and validate and chart.tree.edges:
        from src.deform.assembly import assemble

        assemble(pt, validate=True)
    return pt


def point_from_coordinates(
    chart: CellChart,
    values: Optional[Mapping] = None,
    bends: Optional[Sequence[Scalar]] = None,
    eps: float = 1.0e-9,
    validate: bool = True,
) -> DeformationPoint:
    """
    Point with the given circuit ratios.

    Missing circuits default to ratio 1. Floats are read as log-ratios R.
    Probe circuits of tree edges, when present in ``values``, fix the
    corresponding bending value; otherwise ``bends`` (default all 1) is used.

    Raises:
        ConstraintViolated: the ratios break a relation of the chart
        NotLoxodromic: the resulting leaf lies outside the cell
        TruncationDegenerate: a truncated affine vertex gets R = 0
    """
    values = dict(values or {})
    ratios = {c: ONE for c in chart.circuits}
    ratios.update(_lookup(chart, values))
    check_constraints(chart, ratios, eps)
    matrices = [leaf_matrix(node, leaf, ratios) for node, leaf in zip(chart.tree.nodes, chart.leaves)]
    pt = make_point(chart, matrices, bends, validate=validate)
    probes = _probe_values(pt, values)
    if probes:
        from src.deform.bending import bending_data, solve_bend

        new_bends = list(pt.bends)
        for index, ratio in probes.items():
            new_bends[index] = solve_bend(bending_data(pt, index), ratio)
        pt = make_point(chart, matrices, new_bends, validate=validate)
    logger.debug("point on %s chart with %d circuit values", chart.case.value, len(values))
    return pt


def _probe_values(pt: DeformationPoint, values: Mapping) -> Dict[int, Scalar]:
    if not pt.tree.edges or not values:
        return {}
    from src.deform.bending import bending_data

    found = {}
    for edge in pt.tree.edges:
        probe = bending_data(pt, edge.index).circuit
        for key, raw in values.items():
            given = key if isinstance(key, Circuit) else Circuit(tuple(key))
            if probe.same_cycle(given):
                found[edge.index] = as_ratio(raw)
            elif probe.reversed().same_cycle(given):
                found[edge.index] = ONE / as_ratio(raw)
    return found


def coordinates_of(pt: DeformationPoint) -> Dict[Circuit, Scalar]:
    """Ratio C(A)/C-bar(A) of every chart circuit and of every probe circuit."""
    out: Dict[Circuit, Scalar] = {}
    for node, leaf in zip(pt.tree.nodes, pt.leaves):
        members = set(node.facets)
        for c in pt.chart.circuits:
            if c in out or not set(c.nodes) <= members:
                continue
            out[c] = cyclic_product(leaf.matrix, c) / cyclic_product(leaf.matrix, c.reversed())
    if pt.tree.edges:
        from src.deform.bending import bending_data

        for edge in pt.tree.edges:
            data = bending_data(pt, edge.index)
            out[data.circuit] = data.ratio(pt.bends[edge.index])
    return out


def point_from_json(chart: CellChart, data: Optional[Mapping] = None) -> DeformationPoint:
    """
    Read {"coordinates": {"(F1,F2,F3)": ratio, ...}, "bends": [E, ...]},
    the shape written for integral points. Both fields are optional.
    """
    from src.utils.conversion_utils import ConversionUtils

    data = data or {}
    values = {}
    for key, raw in data.get("coordinates", {}).items():
        nodes = tuple(s.strip() for s in str(key).strip("()").split(",") if s.strip())
        if len(nodes) < 2:
            raise ParseError(f"bad circuit key {key!r}")
        values[nodes] = ConversionUtils.scalar_from_json(raw)
    bends = data.get("bends")
    if bends is not None:
        bends = [ConversionUtils.scalar_from_json(E) for E in bends]
        if len(bends) != chart.bends:
            raise ParseError(f"{len(bends)} bending values given, the chart has {chart.bends} tree edges")
    return point_from_coordinates(chart, values, bends)


def truncatability(pt: DeformationPoint, v: Iterable[str], eps: float = 1.0e-9) -> TruncatabilityReport:
    """
    Raises:
        UnknownVertex: v is not a vertex of any leaf simplex
    """
    vv: Vertex = as_vertex(v)
    for node, leaf in zip(pt.tree.nodes, pt.leaves):
        if len(vv) == node.dim and vv <= set(node.facets) and vv not in node.interfaces:
            return vertex_truncatability(leaf.matrix, node.simplex().coxeter_matrix(), vv, node.dim, eps)
    raise UnknownVertex(f"{sorted(vv)} is not a vertex of a leaf simplex")
