"""
Recursive enumeration of the integral points of a truncation polytope.

A single leaf is searched over divisor pairs. Otherwise the polytope is
split along its first essential circuit, both sides are enumerated,
compatible pairs are glued and each glued family is swept along its
bending fiber.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.arithmetic.alg_scalar import ONE
from src.cartan.cartan_matrix import CartanMatrix
from src.cartan.circuits import cyclic_product
from src.coxeter.classification import is_affine_A_tilde
from src.deform.bending import bending_data
from src.deform.charts import CellChart, cell_chart
from src.deform.points import make_point
from src.integral.certificate import FeasibilityReport, integral_feasible
from src.integral.leaf import IntegralPoint, enumerate_leaf, sort_points
from src.integral.sweep import fiber_sweep, with_bend
from src.polytope.gluing_tree import gluing_tree
from src.polytope.labeled_polytope import LabeledPolytope
from src.polytope.prismatic import split
from src.utils.errors import UnsupportedShape

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Shortcut:
    """Machine-checkable reason why no integral point exists."""

    kind: str
    facets: Tuple[str, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "facets": list(self.facets)}


def nonexistence_shortcuts(G: LabeledPolytope) -> Optional[Shortcut]:
    """
    An affine A-tilde cycle has both cyclic products equal to +-1 at an
    integral point, so its vertex cannot be truncated nor cut along.
    """
    tree = gluing_tree(G)
    W = G.coxeter_matrix()
    for node in tree.nodes:
        for v, _t in sorted(node.truncations.items(), key=lambda vt: vt[1]):
            if is_affine_A_tilde(W.restrict(v)):
                return Shortcut("AffineTruncatedVertex", G.sort_facets(v))
    for edge in tree.edges:
        if is_affine_A_tilde(W.restrict(edge.delta)):
            return Shortcut("AffineEssentialCircuit", tuple(edge.delta))
    return None


def _ratio(A: CartanMatrix, circuit) -> object:
    return cyclic_product(A, circuit) / cyclic_product(A, circuit.reversed())


def compatible(chart: CellChart, matrices: Sequence[CartanMatrix]) -> bool:
    """Leaves sharing a chart circuit agree on its ratio."""
    for c in chart.identifications:
        values = [_ratio(A, c) for A, node in zip(matrices, chart.tree.nodes) if set(c.nodes) <= set(node.facets)]
        if any(v != values[0] for v in values[1:]):
            return False
    return True


def glue_points(chart: CellChart, left: IntegralPoint, right: IntegralPoint, edge: int):
    """
    Point of the glued chart with the leaves of both sides and E = 1 on
    ``edge``, or None when the sides disagree on the shared vertex.
    """
    matrices: Dict[frozenset, CartanMatrix] = {}
    bends: Dict[frozenset, object] = {}
    for side in (left.point, right.point):
        for node, leaf in zip(side.tree.nodes, side.leaves):
            matrices[frozenset(node.facets)] = leaf.matrix
        for e, E in zip(side.tree.edges, side.bends):
            bends[frozenset(e.delta)] = E
    ordered = [matrices[frozenset(node.facets)] for node in chart.tree.nodes]
    if not compatible(chart, ordered):
        return None
    values = [ONE if e.index == edge else bends[frozenset(e.delta)] for e in chart.tree.edges]
    return make_point(chart, ordered, values, check=False)


def _sweep_pair(chart: CellChart, edge: int, pair: Tuple[IntegralPoint, IntegralPoint]) -> List[IntegralPoint]:
    left, right = pair
    pt = glue_points(chart, left, right, edge)
    if pt is None:
        return []
    result = fiber_sweep(bending_data(pt, edge), pt)
    out = []
    for row in result.survivors:
        provenance = {
            "edge": list(chart.tree.edges[edge].delta),
            "n": row.n,
            "E": row.E,
            "left": left.provenance,
            "right": right.provenance,
        }
        out.append(IntegralPoint(with_bend(pt, edge, row.E), row.certificate, provenance))
    return out


def enumerate_integral(G: LabeledPolytope, parallel: int = 1) -> List[IntegralPoint]:
    """
    All integral points of a large irreducible 2-perfect truncation polytope,
    in canonical order.

    Args:
        G: the labeled polytope, 3 <= d <= 9
        parallel: worker threads for the sides and the fiber sweeps

    Raises:
        UnsupportedShape: for polygons and unsupported leaves
        NotTruncationPolytope: for other polytopes
    """
    if G.dim == 2:
        raise UnsupportedShape("integral points of polygons come in infinite families")
    if not integral_feasible(G).feasible or nonexistence_shortcuts(G) is not None:
        return []
    chart = cell_chart(G)
    if not chart.tree.edges:
        return enumerate_leaf(G, chart)

    edge = chart.tree.edges[0]
    pieces = split(G, edge.delta)
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            futures = [pool.submit(enumerate_integral, P, parallel) for P in (pieces.left_base, pieces.right_base)]
            left, right = (f.result() for f in futures)
    else:
        left = enumerate_integral(pieces.left_base)
        right = enumerate_integral(pieces.right_base)
    pairs = [(lp, rp) for lp in left for rp in right]
    logger.info("%s: %d x %d side points along %s", list(G.facets), len(left), len(right), list(edge.delta))

    if parallel > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            batches = list(pool.map(lambda pair: _sweep_pair(chart, edge.index, pair), pairs))
    else:
        batches = [_sweep_pair(chart, edge.index, pair) for pair in pairs]
    return sort_points([p for batch in batches for p in batch])


@dataclass
class EnumerationReport:
    polytope: LabeledPolytope
    feasibility: FeasibilityReport
    shortcut: Optional[Shortcut]
    points: List[IntegralPoint] = field(default_factory=list)
    quotient: Optional[List[IntegralPoint]] = None
    oracle_count: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "input": self.polytope.to_json(),
            "feasible": self.feasibility.feasible,
            "feasibility": self.feasibility.to_json(),
            "shortcut": self.shortcut.to_json() if self.shortcut else None,
            "points": [p.to_json() for p in self.points],
            "count": self.count,
            "quotient_count": len(self.quotient) if self.quotient is not None else None,
            "oracle_count": self.oracle_count,
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per point: provenance-free summary for CSV export."""
        rows = []
        for i, p in enumerate(self.points):
            row = {"point": i, "bends": ";".join(str(E) for E in p.point.bends)}
            row.update({str(c): v for c, v in p.certificate.entries if len(c) > 2})
            rows.append(row)
        return pd.DataFrame(rows)


def enumeration_report(
    G: LabeledPolytope, parallel: int = 1, oracle: bool = False, quotient_symmetry: bool = False
) -> EnumerationReport:
    """
    Enumerate with the feasibility and shortcut verdicts attached.

    Raises:
        OracleMismatch: ``oracle`` is set and the direct search disagrees
    """
    try:
        feasibility = integral_feasible(G)
        if not feasibility.feasible:
            logger.warning("infeasible input: %s", feasibility.reason)
            return EnumerationReport(G, feasibility, None)
        shortcut = nonexistence_shortcuts(G)
        if shortcut is not None:
            logger.info("no integral point: %s at %s", shortcut.kind, list(shortcut.facets))
            return EnumerationReport(G, feasibility, shortcut)
        points = enumerate_integral(G, parallel)
        report = EnumerationReport(G, feasibility, None, points)
        if oracle:
            from src.integral.oracle import check_against_oracle

            report.oracle_count = check_against_oracle(G, points)
        if quotient_symmetry:
            from src.integral.symmetry import quotient_points

            report.quotient = quotient_points(G, points)
        return report
    except Exception as e:
        print(f"Error in enumeration_report: {str(e)}")
        raise
