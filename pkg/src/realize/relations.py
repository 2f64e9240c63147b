"""
Checks of the Coxeter relations on a realization.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.realize.realization import VinbergRealization
from src.utils.errors import ToleranceExceeded

logger = logging.getLogger(__name__)

RELATION_EPS = 1.0e-8


@dataclass(frozen=True)
class RelationCheck:
    """
    One pair of generators. ``kind`` is "finite" when (sigma_s sigma_t)^m
    was compared to Id, else "loxodromic" or "parabolic" from the trace of
    sigma_s sigma_t on span(b_s, b_t).
    """

    pair: Tuple[str, str]
    label: object
    kind: str
    value: float
    passed: bool

    def to_record(self) -> dict:
        label = "inf" if self.label == math.inf else self.label
        return {"s": self.pair[0], "t": self.pair[1], "label": label, "kind": self.kind,
                "value": self.value, "passed": self.passed}


@dataclass
class RelationReport:
    checks: List[RelationCheck] = field(default_factory=list)
    generator_error: float = 0.0
    tol: float = RELATION_EPS

    @property
    def ok(self) -> bool:
        return self.generator_error <= self.tol and all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "tol": self.tol,
            "generator_error": self.generator_error,
            "checks": [c.to_record() for c in self.checks],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.to_record() for c in self.checks])


def pair_block(R: VinbergRealization, s: str, t: str) -> np.ndarray:
    """Matrix of sigma_s sigma_t on span(b_s, b_t) in the basis (b_s, b_t)."""
    a_st = float(R.alpha(s) @ R.b(t))
    a_ts = float(R.alpha(t) @ R.b(s))
    return np.array([[a_st * a_ts - 1.0, a_st], [-a_ts, -1.0]])


def generator_error(R: VinbergRealization) -> float:
    """Largest deviation of sigma_s^2 from Id and of det sigma_s from -1."""
    n = R.dimension + 1
    worst = 0.0
    for s in R.index:
        g = R.generator(s)
        worst = max(worst, float(np.max(np.abs(g @ g - np.eye(n)))), abs(float(np.linalg.det(g)) + 1.0))
    return worst


def _check_pair(R: VinbergRealization, s: str, t: str, m, tol: float) -> RelationCheck:
    if m != math.inf:
        P = R.generator(s) @ R.generator(t)
        err = float(np.max(np.abs(np.linalg.matrix_power(P, int(m)) - np.eye(R.dimension + 1))))
        return RelationCheck((s, t), m, "finite", err, err <= tol)
    trace = float(np.trace(pair_block(R, s, t)))
    if abs(trace - 2.0) <= tol:
        block = pair_block(R, s, t)
        # unipotent and not the identity
        nilpotent = float(np.max(np.abs(block - np.eye(2))))
        return RelationCheck((s, t), m, "parabolic", trace, nilpotent > tol)
    return RelationCheck((s, t), m, "loxodromic", trace, trace > 2.0)


def verify_relations(
    R: VinbergRealization, M: CoxeterMatrix, tol: float = RELATION_EPS, strict: bool = True
) -> RelationReport:
    """
    Check (sigma_s sigma_t)^m = Id for finite labels and the trace of the
    pair for infinite ones.

    Raises:
        ToleranceExceeded: ``strict`` and some check failed; ``detail`` is the
            first failing pair
    """
    report = RelationReport(generator_error=generator_error(R), tol=tol)
    for i, s in enumerate(M.index):
        for t in M.index[i + 1:]:
            report.checks.append(_check_pair(R, s, t, M[s, t], tol))
    logger.info("%d relations checked, %d failed", len(report.checks), len(report.failures))
    if strict and not report.ok:
        bad: Optional[RelationCheck] = report.failures[0] if report.failures else None
        where = f"pair {bad.pair} ({bad.kind}, value {bad.value:.3e})" if bad else "generators"
        raise ToleranceExceeded(f"relation check failed at {where}", detail=bad.pair if bad else None)
    return report
