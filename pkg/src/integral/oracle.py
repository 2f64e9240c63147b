"""
Direct search over the whole polytope, used to cross-check the recursion.

All chart circuits take their divisor-pair values at once, every edge is
then swept over its integer candidates and each full combination is
certified. No splitting and no per-side filtering is involved.
"""

import itertools
import logging
from typing import List, Sequence

from tqdm import tqdm

from src.deform.bending import bending_data
from src.deform.charts import cell_chart
from src.deform.points import DeformationPoint
from src.integral.certificate import integral_check, integral_feasible
from src.integral.leaf import REJECTED, IntegralPoint, candidate_values, leaf_point, sort_points
from src.integral.sweep import sweep_candidates, with_bend
from src.polytope.labeled_polytope import LabeledPolytope
from src.utils.errors import (
    BoxtimesMismatch,
    ConstraintViolated,
    DivisionByZero,
    OracleMismatch,
    RankDeficient,
    TruncationDegenerate,
)

logger = logging.getLogger(__name__)

DEGENERATE = (BoxtimesMismatch, ConstraintViolated, DivisionByZero, RankDeficient, TruncationDegenerate)


def _bend_candidates(pt: DeformationPoint) -> List[DeformationPoint]:
    points = [pt]
    for edge in pt.tree.edges:
        expanded = []
        for p in points:
            try:
                rows = sweep_candidates(bending_data(p, edge.index))
            except DEGENERATE as e:
                logger.debug("edge %d has no fiber: %s", edge.index, e)
                continue
            expanded.extend(with_bend(p, edge.index, r.E) for r in rows if r.d_integer)
        points = expanded
    return points


def direct_enumerate(G: LabeledPolytope) -> List[IntegralPoint]:
    """Integral points of G without recursion, in canonical order."""
    if not integral_feasible(G).feasible:
        return []
    chart = cell_chart(G)
    circuits, candidates = candidate_values(chart)
    combos = list(itertools.product(*candidates))
    found = []
    for pairs in tqdm(combos, desc="direct search", leave=False, disable=not logger.isEnabledFor(logging.INFO)):
        base = leaf_point(chart, circuits, pairs, validate=False)
        if base is None:
            continue
        for pt in _bend_candidates(base):
            try:
                certificate = integral_check(pt)
            except REJECTED as e:
                logger.debug("bends %s not certified: %s", list(pt.bends), e)
                continue
            provenance = {"pairs": {str(c): list(p) for c, p in zip(circuits, pairs)}, "bends": list(pt.bends)}
            found.append(IntegralPoint(pt, certificate, provenance))
    logger.info("direct search: %d integral points among %d circuit combinations", len(found), len(combos))
    return sort_points(found)


def check_against_oracle(G: LabeledPolytope, points: Sequence[IntegralPoint]) -> int:
    """
    Compare recursive results with the direct search by fingerprint.

    Raises:
        OracleMismatch: the two point sets differ
    """
    direct = direct_enumerate(G)
    ours = sorted(p.key for p in points)
    theirs = sorted(p.key for p in direct)
    if ours != theirs:
        missing = len(set(theirs) - set(ours))
        extra = len(set(ours) - set(theirs))
        raise OracleMismatch(
            f"recursion found {len(ours)} points, direct search {len(theirs)} ({missing} missing, {extra} extra)",
            detail={"recursive": len(ours), "direct": len(theirs)},
        )
    return len(direct)
