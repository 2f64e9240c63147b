"""
Integral points of a single leaf: a simplex with freely truncated vertices.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.cartan.circuits import Circuit, label_products
from src.deform.assembly import assemble
from src.deform.charts import CellChart, cell_chart
from src.deform.points import DeformationPoint, coordinates_of, point_from_coordinates
from src.integral.certificate import Fingerprint, IntegralCertificate, fingerprint, integral_check
from src.integral.divisors import divisor_pairs, pair_ratio
from src.polytope.labeled_polytope import LabeledPolytope
from src.utils.errors import (
    ApproxData,
    CertificateFailure,
    ConstraintViolated,
    DivisionByZero,
    NotLoxodromic,
    TruncationDegenerate,
    UnsupportedShape,
)

logger = logging.getLogger(__name__)

SKIPPED = (ConstraintViolated, DivisionByZero, NotLoxodromic, TruncationDegenerate)

# outcomes of integral_check that drop one candidate
REJECTED = (ApproxData, CertificateFailure, DivisionByZero, NotLoxodromic)


@dataclass(frozen=True, eq=False)
class IntegralPoint:
    point: DeformationPoint
    certificate: IntegralCertificate
    provenance: Dict = field(default_factory=dict)

    @cached_property
    def key(self) -> Fingerprint:
        return fingerprint(assemble(self.point).matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegralPoint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def to_json(self) -> dict:
        from src.utils.conversion_utils import ConversionUtils

        coords = coordinates_of(self.point)
        return {
            "coordinates": {str(c): ConversionUtils.scalar_to_json(r) for c, r in coords.items()},
            "bends": [ConversionUtils.scalar_to_json(E) for E in self.point.bends],
            "certificate": self.certificate.to_json(),
            "provenance": ConversionUtils.convert_to_serializable(self.provenance),
        }


def sort_points(points: Sequence[IntegralPoint]) -> List[IntegralPoint]:
    return sorted(points, key=lambda p: p.key)


def circuit_candidates(G: LabeledPolytope, circuit: Circuit) -> List[Tuple[int, int]]:
    products = label_products(G.coxeter_matrix(), circuit.nodes)
    return divisor_pairs(products, len(circuit))


def candidate_values(chart: CellChart) -> Tuple[List[Circuit], List[List[Tuple[int, int]]]]:
    """The chart circuits and, for each, its (C, C-bar) candidates."""
    circuits = list(chart.circuits)
    return circuits, [circuit_candidates(chart.polytope, c) for c in circuits]


def leaf_point(chart: CellChart, circuits: Sequence[Circuit], pairs: Sequence[Tuple[int, int]], validate: bool = True) -> Optional[DeformationPoint]:
    """Point with the given cyclic-product pairs, or None outside the cell."""
    values: Dict[Circuit, Fraction] = {c: pair_ratio(p) for c, p in zip(circuits, pairs)}
    try:
        return point_from_coordinates(chart, values, validate=validate)
    except SKIPPED as e:
        logger.debug("pairs %s skipped: %s", list(pairs), e)
        return None


def enumerate_leaf(G: LabeledPolytope, chart: Optional[CellChart] = None) -> List[IntegralPoint]:
    """
    All integral points of a simplex with free truncations.

    Every circuit coordinate takes its divisor-pair values; combinations
    breaking a chart relation, leaving the cell or collapsing an affine
    truncated vertex are dropped, the rest are certified.
    """
    chart = chart or cell_chart(G)
    if chart.tree.edges:
        raise UnsupportedShape("enumerate_leaf needs a single leaf")
    circuits, candidates = candidate_values(chart)
    combos = list(itertools.product(*candidates))
    found = []
    for pairs in tqdm(combos, desc="leaf candidates", leave=False, disable=not logger.isEnabledFor(logging.INFO)):
        pt = leaf_point(chart, circuits, pairs)
        if pt is None:
            continue
        try:
            certificate = integral_check(pt)
        except REJECTED as e:
            logger.debug("pairs %s not certified: %s", list(pairs), e)
            continue
        provenance = {"pairs": {str(c): list(p) for c, p in zip(circuits, pairs)}}
        found.append(IntegralPoint(pt, certificate, provenance))
    logger.info("%d integral points among %d candidates on %s", len(found), len(combos), list(G.facets))
    return sort_points(found)
