"""
Integral Vinberg representations: certificates, divisor-pair search on
leaves, fiber sweeps, recursive enumeration and the direct cross-check.
"""

from .divisors import divisor_pairs, pair_ratio, positive_divisors
from .certificate import (
    FeasibilityReport,
    IntegralCertificate,
    IntegralityFailure,
    fingerprint,
    integral_check,
    integral_feasible,
    is_integral,
    matrix_certificate,
)
from .leaf import IntegralPoint, enumerate_leaf
from .sweep import SweepResult, SweepRow, fiber_sweep, sweep_candidates
from .enumerate import EnumerationReport, Shortcut, enumerate_integral, enumeration_report, nonexistence_shortcuts
from .oracle import check_against_oracle, direct_enumerate
from .symmetry import label_automorphisms, quotient_points

__all__ = [
    "divisor_pairs",
    "pair_ratio",
    "positive_divisors",
    "FeasibilityReport",
    "IntegralCertificate",
    "IntegralityFailure",
    "fingerprint",
    "integral_check",
    "integral_feasible",
    "is_integral",
    "matrix_certificate",
    "IntegralPoint",
    "enumerate_leaf",
    "SweepResult",
    "SweepRow",
    "fiber_sweep",
    "sweep_candidates",
    "EnumerationReport",
    "Shortcut",
    "enumerate_integral",
    "enumeration_report",
    "nonexistence_shortcuts",
    "check_against_oracle",
    "direct_enumerate",
    "label_automorphisms",
    "quotient_points",
]
