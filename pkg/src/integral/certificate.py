"""
Integrality of Vinberg representations through cyclic products.

A representation of an irreducible large Coxeter polytope is integral
exactly when every cyclic product of its Cartan matrix is an integer.
Every closed walk splits into simple cycles and back-and-forth steps, so
it suffices to check the edge products and both orientations of every
simple cycle of the assembled matrix.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.scalar import Scalar, is_exact
from src.cartan.cartan_matrix import CartanMatrix
from src.cartan.circuits import MAX_CYCLES, Circuit, canonical_circuit, cyclic_product, directed_simple_cycles
from src.coxeter.classification import classify
from src.deform.assembly import assemble
from src.deform.points import DeformationPoint
from src.polytope.labeled_polytope import LabeledPolytope
from src.utils.errors import ApproxData, CertificateFailure, NotLargeIrreducible, Reducible

logger = logging.getLogger(__name__)

INTEGRAL_LABELS = (2, 3, 4, 6)

REDUCTION_NOTE = "closed walks reduce to edge products and directed simple cycles"

Fingerprint = Tuple[Tuple[Tuple[str, ...], int], ...]


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    reason: str
    ridge: Optional[Tuple[str, str]] = None

    def to_json(self) -> dict:
        return {"feasible": self.feasible, "reason": self.reason, "ridge": list(self.ridge) if self.ridge else None}


@dataclass(frozen=True)
class IntegralCertificate:
    """Exact integer value of every edge product and directed simple cycle."""

    entries: Tuple[Tuple[Circuit, int], ...]
    note: str = REDUCTION_NOTE

    def value(self, circuit) -> int:
        """Certified value of a circuit given from any starting facet."""
        nodes = circuit.nodes if isinstance(circuit, Circuit) else tuple(circuit)
        for c, v in self.entries:
            if c.same_cycle(nodes):
                return v
        raise KeyError(nodes)

    def to_json(self) -> dict:
        return {"entries": [{"circuit": c.to_json(), "value": v} for c, v in self.entries], "note": self.note}


@dataclass(frozen=True)
class IntegralityFailure:
    circuit: Circuit
    value: Scalar

    def __str__(self) -> str:
        return f"{self.circuit} has product {self.value}"


def integral_feasible(G: LabeledPolytope) -> FeasibilityReport:
    """Every ridge label must lie in {2, 3, 4, 6}."""
    for pair, m in sorted(G.labels.items(), key=lambda pm: sorted(G.position(s) for s in pm[0])):
        if m not in INTEGRAL_LABELS:
            s, t = G.sort_facets(pair)
            return FeasibilityReport(False, f"label {m} at ridge {s},{t} has 4cos^2(pi/m) not in Z", (s, t))
    return FeasibilityReport(True, "all labels in {2, 3, 4, 6}")


def _as_int(x: Scalar) -> Optional[int]:
    if not is_exact(x):
        raise ApproxData(f"integrality of the approximate value {x} is undecidable")
    ok, value = AlgScalar.coerce(x).is_integer()
    return value if ok else None


def check_large_irreducible(pt: DeformationPoint) -> None:
    """
    Raises:
        NotLargeIrreducible: some leaf simplex is reducible or not large
    """
    for node in pt.tree.nodes:
        try:
            group = classify(node.simplex().coxeter_matrix())
        except Reducible as e:
            raise NotLargeIrreducible(f"leaf {list(node.facets)} is reducible") from e
        if not group.is_large:
            raise NotLargeIrreducible(f"leaf {list(node.facets)} is {group.kind.value}, not large")


def matrix_certificate(A: CartanMatrix, max_cycles: int = MAX_CYCLES) -> Tuple[Optional[IntegralCertificate], Optional[IntegralityFailure]]:
    """Certificate of an exact Cartan matrix, or the first non-integer product."""
    entries: List[Tuple[Circuit, int]] = []
    graph = A.adjacency()
    for s, t in sorted(graph.edges(), key=lambda e: sorted(A.position(x) for x in e)):
        pair = canonical_circuit((s, t), A.index)
        p = A.edge_product(*pair.nodes)
        value = _as_int(p)
        if value is None:
            return None, IntegralityFailure(pair, p)
        entries.append((pair, value))
    for c in directed_simple_cycles(graph, A.index, max_cycles):
        p = cyclic_product(A, c)
        value = _as_int(p)
        if value is None:
            return None, IntegralityFailure(c, p)
        entries.append((c, value))
    return IntegralCertificate(tuple(entries)), None


def integral_check(pt: DeformationPoint, max_cycles: int = MAX_CYCLES) -> IntegralCertificate:
    """
    Certify that a point is integral.

    Raises:
        ApproxData: the point carries approximate entries
        NotLargeIrreducible: a leaf is reducible or not large
        NotLoxodromic: the assembled matrix is not a Cartan matrix
        CertificateFailure: some cyclic product is not an integer
    """
    if not pt.is_exact:
        raise ApproxData("the point has approximate coordinates")
    check_large_irreducible(pt)
    A = assemble(pt, validate=True).matrix
    certificate, failure = matrix_certificate(A, max_cycles)
    if failure is not None:
        raise CertificateFailure(f"not integral: {failure}", detail=failure)
    logger.debug("certified %d products on %d facets", len(certificate.entries), A.size)
    return certificate


def is_integral(pt: DeformationPoint, max_cycles: int = MAX_CYCLES) -> bool:
    try:
        integral_check(pt, max_cycles)
    except CertificateFailure:
        return False
    return True


def fingerprint(A: CartanMatrix, max_cycles: int = MAX_CYCLES) -> Fingerprint:
    """
    Gauge-invariant key of an integral matrix: edge products and the
    products of both orientations of every simple cycle, in canonical order.
    """
    certificate, failure = matrix_certificate(A, max_cycles)
    if failure is not None:
        raise CertificateFailure(f"no fingerprint for a non-integral matrix: {failure}", detail=failure)
    return tuple((c.nodes, v) for c, v in certificate.entries)
