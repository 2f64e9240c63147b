"""
Integral points along a bending fiber.

On the fiber of one gluing-tree edge the probe products are
N(E) = K1 (x1 + E y1) and D(E) = K2 (x2 + y2 / E). N must be an integer n,
which fixes E = (n / K1 - x1) / y1 exactly. As |n| grows |D| decreases
towards |K2| x2, so the sweep stops once |D| drops below the smallest
integer above that limit.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import pandas as pd

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.scalar import Scalar, is_exact
from src.deform.bending import BendingFiberData
from src.deform.points import DeformationPoint
from src.integral.certificate import IntegralCertificate, integral_check
from src.utils.errors import ApproxData, CertificateFailure, Inconclusive, NotLoxodromic

logger = logging.getLogger(__name__)

MAX_STEPS = 100_000


@dataclass(frozen=True)
class SweepRow:
    n: int
    E: AlgScalar
    D: AlgScalar
    d_integer: bool
    status: str = "candidate"
    certificate: Optional[IntegralCertificate] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "E": str(self.E),
            "E_float": float(self.E),
            "D": str(self.D),
            "D_float": float(self.D),
            "status": self.status,
        }


@dataclass(frozen=True)
class SweepResult:
    edge: int
    rows: Tuple[SweepRow, ...]

    @property
    def survivors(self) -> List[SweepRow]:
        return [r for r in self.rows if r.passed]

    @property
    def bounds(self) -> Optional[Tuple[AlgScalar, AlgScalar]]:
        """E-interval of the examined candidates."""
        if not self.rows:
            return None
        return self.rows[0].E, self.rows[-1].E

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_record() for r in self.rows], columns=["n", "E", "E_float", "D", "D_float", "status"])


def _exact(data: BendingFiberData) -> Tuple[AlgScalar, ...]:
    values = (data.K1, data.x1, data.y1, data.K2, data.x2, data.y2)
    if not all(is_exact(v) for v in values):
        raise ApproxData(f"bending data of edge {data.edge} is approximate")
    return tuple(AlgScalar.coerce(v) for v in values)


def sweep_candidates(data: BendingFiberData, max_steps: int = MAX_STEPS) -> List[SweepRow]:
    """
    Every n with E_n > 0 and |D(E_n)| still large enough to be an integer.

    Raises:
        ApproxData: approximate bending data
        Inconclusive: more than ``max_steps`` candidates
    """
    K1, x1, y1, K2, x2, y2 = _exact(data)
    sign = K1.sign()
    m = (abs(K1) * x1).floor() + 1
    d_min = (abs(K2) * x2).floor() + 1
    rows = []
    for _ in range(max_steps):
        n = sign * m
        E = (AlgScalar(n) / K1 - x1) / y1
        D = K2 * (x2 + y2 / E)
        if abs(D) < d_min:
            break
        ok, _value = D.is_integer()
        rows.append(SweepRow(n, E, D, ok, "candidate" if ok else "D not integer"))
        m += 1
    else:
        raise Inconclusive(f"edge {data.edge}: more than {max_steps} fiber candidates")
    logger.debug("edge %d: %d fiber candidates, d_min = %d", data.edge, len(rows), d_min)
    return rows


def with_bend(pt: DeformationPoint, edge: int, E: Scalar) -> DeformationPoint:
    bends = list(pt.bends)
    bends[edge] = E
    return pt.with_bends(bends)


def fiber_sweep(data: BendingFiberData, pt: DeformationPoint, max_steps: int = MAX_STEPS) -> SweepResult:
    """
    Integral points on the fiber of ``data.edge`` through ``pt``.

    Every candidate with an integer D is certified on the assembled
    matrix; the others are reported as rejected.
    """
    rows = []
    for row in sweep_candidates(data, max_steps):
        if not row.d_integer:
            rows.append(row)
            continue
        try:
            certificate = integral_check(with_bend(pt, data.edge, row.E))
        except (CertificateFailure, NotLoxodromic) as e:
            logger.debug("edge %d, n = %d rejected: %s", data.edge, row.n, e)
            rows.append(SweepRow(row.n, row.E, row.D, True, "fail"))
            continue
        rows.append(SweepRow(row.n, row.E, row.D, True, "pass", certificate))
    result = SweepResult(data.edge, tuple(rows))
    logger.info("edge %d: %d of %d fiber candidates are integral", data.edge, len(result.survivors), len(rows))
    return result
