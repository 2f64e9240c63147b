"""
Vinberg realizations: functionals and polars, generator matrices,
relation checks, truncation hyperplanes and trace probes.
"""

from .realization import VinbergRealization, bend_realization, check_loxodromic, realize, realize_point
from .relations import RelationCheck, RelationReport, generator_error, pair_block, verify_relations
from .truncation import TruncationData, truncate_realization, truncation_geometry, vertex_point
from .traces import WordTrace, random_words, traces_integral, word_trace, word_traces

__all__ = [
    "VinbergRealization",
    "bend_realization",
    "check_loxodromic",
    "realize",
    "realize_point",
    "RelationCheck",
    "RelationReport",
    "generator_error",
    "pair_block",
    "verify_relations",
    "TruncationData",
    "truncate_realization",
    "truncation_geometry",
    "vertex_point",
    "WordTrace",
    "random_words",
    "traces_integral",
    "word_trace",
    "word_traces",
]
