"""
Exception hierarchy shared by all packages.

Each class carries the process exit code the command line maps it to:
2 for parse/validation problems, 3 for infeasible inputs, 4 for an oracle
mismatch and 5 for a failed integrality certificate.
"""

from typing import Any, Optional


class VinbergError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 2

    def __init__(self, message: str = "", detail: Optional[Any] = None):
        super().__init__(message or self.__class__.__name__)
        self.detail = detail


class ValidationError(VinbergError, ValueError):
    """Input violates a documented precondition."""


class ParseError(ValidationError):
    """Input file could not be parsed."""


class UnknownName(ValidationError):
    """Unknown catalog entry."""


# arithmetic
class DivisionByZero(VinbergError, ZeroDivisionError):
    """Division by an exact zero."""


class InfiniteLabel(ValidationError):
    """An infinite label was given where a finite one is required."""


class ApproxData(VinbergError):
    """An exact decision was requested on approximate data."""


class Inconclusive(VinbergError):
    """Interval precision was exhausted before a sign could be certified."""


# coxeter
class Reducible(ValidationError):
    """The diagram is disconnected but irreducible input is required."""


class Ambiguous(Inconclusive):
    """A diagram with infinite labels could not be classified."""


class UnknownFacet(ValidationError):
    """A facet name is not part of the index set."""


# cartan
class ZeroCyclicProduct(ValidationError):
    """A cyclic product needed as a denominator vanishes."""


class SignMismatch(ValidationError):
    """A circuit and its reversal have cyclic products of opposite sign."""


class TooManyCycles(VinbergError):
    """Cycle enumeration exceeded the configured guard."""


class IndexMismatch(ValidationError):
    """Two matrices are indexed by different facet sets."""


class Disconnected(ValidationError):
    """The adjacency graph is not connected."""


# polytope
class MissingLabel(ValidationError):
    """A ridge has no label."""


class BadDimension(ValidationError):
    """Dimension outside the supported range."""


class UnknownVertex(ValidationError):
    """The given facet set is not a vertex of the polytope."""


class LinkMismatch(ValidationError):
    """A gluing map is not a label-preserving isomorphism of links."""


class NotTruncationPolytope(ValidationError):
    """The polytope is not obtained from a simplex by truncations."""


class NotPrismatic(ValidationError):
    """The facet set is not a prismatic circuit."""


# deform
class UnsupportedShape(ValidationError):
    """No deformation chart is implemented for this shape."""


class EmptyCell(VinbergError):
    """The deformation space is empty."""

    exit_code = 3


class ConstraintViolated(ValidationError):
    """Chart coordinates do not satisfy the chart constraints."""


class NotLoxodromic(ValidationError):
    """The Cartan matrix is not of negative type and full rank."""


class TruncationDegenerate(ValidationError):
    """An affine vertex has vanishing normalized cyclic product."""


class NotEssential(ValidationError):
    """The prismatic circuit is not essential."""


class NoProbeCircuit(ValidationError):
    """No relevant circuit crosses the gluing interface."""


class NonPositiveBend(ValidationError):
    """Bending value must be positive."""


class BoxtimesMismatch(ValidationError):
    """The two sides of a gluing edge disagree on the interface."""


# integral
class NotLargeIrreducible(ValidationError):
    """Integrality criterion needs irreducible large pieces."""


class BadEdgeProduct(ValidationError):
    """Edge product outside {1, 2, 3}."""


class InfeasibleInput(VinbergError):
    """Valid input that admits no integral representation."""

    exit_code = 3


class OracleMismatch(VinbergError):
    """Recursive enumeration and the direct search disagree."""

    exit_code = 4


class CertificateFailure(VinbergError):
    """A point failed its integrality certificate."""

    exit_code = 5


# realize
class RankDeficient(ValidationError):
    """The matrix rank is smaller than required."""


class ToleranceExceeded(VinbergError):
    """A numerical check failed its tolerance."""

    exit_code = 5


class NotAHyperplane(ValidationError):
    """The polars of a vertex do not span a hyperplane."""


class EdgeIntersectionOutside(ValidationError):
    """A truncation hyperplane misses the interior of an edge."""
