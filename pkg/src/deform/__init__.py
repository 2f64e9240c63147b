"""
Deformation spaces of truncation polytopes: charts, points, global assembly,
bending and the splitting map.
"""

from .charts import CellChart, ChartCase, LeafChart, cell_chart, simplex_case
from .points import (
    DeformationPoint,
    LeafPoint,
    TruncatabilityReport,
    coordinates_of,
    make_point,
    point_from_coordinates,
    point_from_json,
    truncatability,
    vertex_truncatability,
)
from .assembly import Assembly, EdgeFrame, assemble
from .bending import BendingFiberData, CutResult, bend, bending_data, cut, interface_ratio, solve_bend

__all__ = [
    "CellChart",
    "ChartCase",
    "LeafChart",
    "cell_chart",
    "simplex_case",
    "DeformationPoint",
    "LeafPoint",
    "TruncatabilityReport",
    "point_from_coordinates",
    "point_from_json",
    "coordinates_of",
    "make_point",
    "truncatability",
    "vertex_truncatability",
    "Assembly",
    "EdgeFrame",
    "assemble",
    "BendingFiberData",
    "CutResult",
    "bending_data",
    "bend",
    "solve_bend",
    "cut",
    "interface_ratio",
]
