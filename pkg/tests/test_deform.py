"""
Test module for deformation charts, points, assembly and bending.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.arithmetic import ONE, SQRT2, AlgScalar, Approx
from src.cartan import Circuit, PerronType, cyclic_product, perron_type, validate_cartan
from src.deform import (
    ChartCase,
    assemble,
    bend,
    bending_data,
    cell_chart,
    coordinates_of,
    cut,
    point_from_coordinates,
    truncatability,
)
from src.polytope import glue, labeled_cube, simplex, truncate
from src.utils.errors import (
    ConstraintViolated,
    EmptyCell,
    NonPositiveBend,
    NotEssential,
    NotLoxodromic,
    TruncationDegenerate,
    UnknownVertex,
    UnsupportedShape,
)

PAN_LABELS = {("1", "2"): 3, ("2", "3"): 3, ("1", "3"): 4, ("1", "4"): 3, ("2", "4"): 2, ("3", "4"): 2}
TREE_LABELS = {("1", "2"): 2, ("2", "3"): 3, ("1", "3"): 7, ("1", "4"): 3, ("2", "4"): 2, ("3", "4"): 2}

TRIANGLE = Circuit(("F1", "F2", "F3"))


def labeled(prefix, table):
    return simplex(3, {(prefix + a, prefix + b): m for (a, b), m in table.items()},
                   [f"{prefix}{i}" for i in range(1, 5)])


def all_threes():
    names = ["F1", "F2", "F3", "F4"]
    return simplex(3, {(a, b): 3 for i, a in enumerate(names) for b in names[i + 1:]})


def glued(table):
    return glue(labeled("F", table), ["F1", "F2", "F3"], labeled("G", table), ["G1", "G2", "G3"],
                {"F1": "G1", "F2": "G2", "F3": "G3"})


@pytest.fixture
def triangle():
    return simplex(2, {("F1", "F2"): 3, ("F1", "F3"): 4, ("F2", "F3"): 4})


@pytest.fixture
def case1():
    return cell_chart(all_threes())


@pytest.fixture
def pan_pair():
    """Two pan-type simplices glued along their (3,3,4) vertices; all data exact."""
    return glued(PAN_LABELS)


@pytest.fixture
def pair_point(pan_pair):
    return point_from_coordinates(cell_chart(pan_pair))


def test_triangle_chart(triangle):
    """Test the one-circuit chart of a triangle without right angle."""
    chart = cell_chart(triangle)
    assert chart.case is ChartCase.TRIANGLE
    assert chart.circuits == (TRIANGLE,)
    assert chart.constraints == ()
    assert chart.dimension == 1


def test_right_triangle_chart():
    """Test that a right-angled triangle is rigid."""
    chart = cell_chart(simplex(2, {("F1", "F2"): 2, ("F2", "F3"): 3, ("F1", "F3"): 7}))
    assert chart.case is ChartCase.RIGHT_TRIANGLE
    assert chart.dimension == 0
    pt = point_from_coordinates(chart)
    A = pt.leaf(0).matrix
    assert A["F1", "F2"].is_zero()
    assert float(A["F1", "F3"]) == pytest.approx(-2 * math.cos(math.pi / 7))


def test_triangle_point_exact(triangle):
    """Test the exact matrix for ratio 1/4 and its coordinates."""
    chart = cell_chart(triangle)
    pt = point_from_coordinates(chart, {("F1", "F2", "F3"): Fraction(1, 4)})
    A = pt.leaf(0).matrix
    assert A["F1", "F2"] == A["F2", "F1"] == -1
    assert A["F1", "F3"] == A["F3", "F1"] == -SQRT2
    assert A["F2", "F3"] == -SQRT2 / 2
    assert A["F3", "F2"] == -2 * SQRT2
    assert coordinates_of(pt)[TRIANGLE] == Fraction(1, 4)
    again = point_from_coordinates(chart, {("F1", "F3", "F2"): 4})
    assert again == pt


def test_triangle_point_from_log(triangle):
    """Test that a float value is read as the log-ratio."""
    chart = cell_chart(triangle)
    pt = point_from_coordinates(chart, {TRIANGLE: -2 * math.log(2.0)})
    A = pt.leaf(0).matrix
    assert not pt.is_exact
    assert float(A["F2", "F3"]) == pytest.approx(-math.sqrt(2) / 2)
    assert float(A["F3", "F2"]) == pytest.approx(-2 * math.sqrt(2))
    assert float(coordinates_of(pt)[TRIANGLE]) == pytest.approx(0.25)


def test_cosine_point(triangle):
    """Test that all ratios 1 give the symmetric cosine matrix."""
    pt = point_from_coordinates(cell_chart(triangle))
    A = pt.leaf(0).matrix
    assert A["F2", "F3"] == A["F3", "F2"] == -SQRT2
    assert all(r == ONE for r in coordinates_of(pt).values())


def test_affine_triangle():
    """Test that the Euclidean triangle is loxodromic only off R = 0."""
    chart = cell_chart(simplex(2, {("F1", "F2"): 3, ("F1", "F3"): 3, ("F2", "F3"): 3}))
    assert chart.dimension == 1
    with pytest.raises(NotLoxodromic):
        point_from_coordinates(chart)
    pt = point_from_coordinates(chart, {TRIANGLE: 4})
    assert perron_type(pt.leaf(0).matrix).type is PerronType.NEGATIVE


def test_case1_chart(case1):
    """Test the four link circuits and their single relation."""
    assert case1.case is ChartCase.CASE_1
    assert [c.nodes for c in case1.circuits] == [
        ("F1", "F2", "F3"), ("F1", "F2", "F4"), ("F1", "F3", "F4"), ("F2", "F3", "F4"),
    ]
    assert case1.constraints == ((1, -1, 1, -1),)
    assert case1.dimension == 3


def test_case1_constraint(case1):
    """Test that ratios breaking the relation are rejected."""
    with pytest.raises(ConstraintViolated):
        point_from_coordinates(case1, {("F1", "F2", "F3"): 2})


def test_case1_round_trip(case1):
    """Test point_from_coordinates followed by coordinates_of."""
    values = {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4}
    pt = point_from_coordinates(case1, values)
    A = pt.leaf(0).matrix
    assert A["F2", "F3"] == -2
    assert A["F3", "F2"] == Fraction(-1, 2)
    assert A["F3", "F4"] == A["F4", "F3"] == -1
    coords = coordinates_of(pt)
    assert [coords[c] for c in case1.circuits] == [4, 4, 1, 1]
    assert point_from_coordinates(case1, coords) == pt


@pytest.mark.parametrize("labels, case, dimension", [
    ({("F1", "F2"): 2, ("F1", "F3"): 3, ("F1", "F4"): 3, ("F2", "F3"): 3, ("F2", "F4"): 3, ("F3", "F4"): 3},
     ChartCase.CASE_2, 2),
    ({("F1", "F2"): 3, ("F2", "F3"): 3, ("F1", "F3"): 4, ("F1", "F4"): 3, ("F2", "F4"): 2, ("F3", "F4"): 2},
     ChartCase.CASE_3, 1),
    ({("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3, ("F1", "F4"): 4, ("F1", "F3"): 2, ("F2", "F4"): 2},
     ChartCase.CASE_4, 1),
    ({("F1", "F2"): 3, ("F1", "F3"): 5, ("F3", "F4"): 3, ("F1", "F4"): 2, ("F2", "F3"): 2, ("F2", "F4"): 2},
     ChartCase.CASE_5, 0),
])
def test_simplex_cases(labels, case, dimension):
    """Test case tags and dimension e_plus - d of 3-simplices."""
    G = simplex(3, labels)
    chart = cell_chart(G)
    assert chart.case is case
    assert chart.dimension == dimension == G.e_plus - 3
    pt = point_from_coordinates(chart)
    assert perron_type(pt.leaf(0).matrix).rank == 4


def test_cycle_type_four_simplex():
    """Test the cycle type in dimension four."""
    names = [f"F{i}" for i in range(1, 6)]
    labels = {(a, b): 2 for i, a in enumerate(names) for b in names[i + 1:]}
    labels.update({("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3, ("F4", "F5"): 3, ("F1", "F5"): 4})
    chart = cell_chart(simplex(4, labels))
    assert chart.case is ChartCase.CYCLE
    assert chart.dimension == 1


def test_chart_rejections():
    """Test unsupported shapes and the dimension bound."""
    with pytest.raises(UnsupportedShape):
        cell_chart(labeled_cube())
    spherical = simplex(3, {("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3,
                            ("F1", "F3"): 2, ("F1", "F4"): 2, ("F2", "F4"): 2})
    with pytest.raises(UnsupportedShape):
        cell_chart(spherical)
    names = [f"F{i}" for i in range(1, 12)]
    with pytest.raises(EmptyCell):
        cell_chart(simplex(10, {(a, b): 3 for i, a in enumerate(names) for b in names[i + 1:]}))


def test_truncatability(case1):
    """Test affine vertices at and away from R = 0, and Lanner vertices."""
    symmetric = point_from_coordinates(case1)
    report = truncatability(symmetric, ["F1", "F2", "F3"])
    assert not report.truncatable
    assert report.reason == "TruncationDegenerate"
    moved = point_from_coordinates(case1, {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4})
    assert truncatability(moved, ["F1", "F2", "F3"]).truncatable
    assert not truncatability(moved, ["F2", "F3", "F4"]).truncatable
    pan = point_from_coordinates(cell_chart(labeled("F", PAN_LABELS)))
    assert truncatability(pan, ["F1", "F2", "F3"]).reason == "lanner"
    spherical = truncatability(pan, ["F1", "F2", "F4"])
    assert not spherical.truncatable
    assert spherical.reason == "NotLoxodromic"
    with pytest.raises(UnknownVertex):
        truncatability(pan, ["F1", "F2", "G4"])


def test_truncated_simplex():
    """Test a free truncation of an affine vertex inside the Cartan data."""
    G = truncate(all_threes(), ["F1", "F2", "F3"])
    chart = cell_chart(G)
    assert chart.dimension == 3 == G.e_plus - 3
    with pytest.raises(TruncationDegenerate):
        point_from_coordinates(chart)
    pt = point_from_coordinates(chart, {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4})
    A = assemble(pt, validate=True).matrix
    assert A.index == ("F1", "F2", "F3", "F4", "T1")
    assert all(A["T1", s].is_zero() and A[s, "T1"].is_zero() for s in ("F1", "F2", "F3"))
    assert A["F4", "T1"] == -1
    # 2 det(A) / det(A_v) = 2 * (-30) / (-1/2)
    assert A["T1", "F4"] * A["F4", "T1"] == 120


def test_glued_chart(pan_pair):
    """Test the chart of two glued simplices."""
    chart = cell_chart(pan_pair)
    assert chart.case is ChartCase.GLUED
    assert chart.circuits == (TRIANGLE,)
    assert chart.identifications == (TRIANGLE,)
    assert chart.bends == 1
    assert chart.dimension == 2 == pan_pair.e_plus - 3


def test_assembly(pair_point):
    """Test the assembled matrix of the glued point."""
    asm = assemble(pair_point)
    A = asm.matrix
    assert A.index == ("F1", "F2", "F3", "F4", "G4")
    assert A.is_exact
    assert not validate_cartan(A)
    assert A["F1", "G4"] == A["G4", "F1"] == -1
    assert A["F2", "G4"].is_zero()
    assert A["F4", "G4"].sign() < 0 and A["G4", "F4"].sign() < 0
    assert A["F4", "G4"] * A["G4", "F4"] >= 4


def test_bending_data(pair_point):
    """Test the closed-form fiber constants of the glued point."""
    data = bending_data(pair_point, 0)
    assert data.circuit == Circuit(("F4", "F1", "G4"))
    assert data.K1 == data.K2 == -1
    assert data.x1 == data.x2 == data.y2 == 3 * SQRT2 / 4
    assert data.y1.sign() > 0
    A = assemble(pair_point).matrix
    assert data.numerator(ONE) == cyclic_product(A, data.circuit)
    assert data.denominator(ONE) == cyclic_product(A, data.circuit.reversed())


def test_bend_formula(pair_point):
    """Test that bending changes the probe products as N = K1 (x1 + E y1)."""
    data = bending_data(pair_point, 0)
    bent = bend(pair_point, 0, E=3)
    A = assemble(bent, validate=True).matrix
    assert cyclic_product(A, data.circuit) == data.numerator(AlgScalar(3))
    assert cyclic_product(A, data.circuit.reversed()) == data.denominator(AlgScalar(3))
    assert bending_data(bent, 0) == data


def test_bend_cocycle(pair_point):
    """Test that bends compose multiplicatively in E."""
    twice = bend(bend(pair_point, 0, E=2), 0, E=Fraction(3, 2))
    assert twice == bend(pair_point, 0, E=3)
    assert bend(pair_point, 0, u=0.0) == pair_point
    by_u = bend(bend(pair_point, 0, u=0.1), 0, u=0.2)
    assert float(by_u.bends[0]) == pytest.approx(float(bend(pair_point, 0, u=0.3).bends[0]))
    with pytest.raises(NonPositiveBend):
        bend(pair_point, 0, E=-1)


def test_probe_monotone_and_free(pair_point):
    """Test that the probe log-ratio strictly increases with u."""
    data = bending_data(pair_point, 0)
    values = [data.log_ratio(u) for u in np.linspace(-2.0, 2.0, 21)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert data.ratio(AlgScalar(2)) != data.ratio(AlgScalar(3))


def test_probe_coordinate_round_trip(pair_point):
    """Test recovering the bending value from the probe ratio."""
    chart = pair_point.chart
    bent = bend(pair_point, 0, E=2)
    coords = coordinates_of(bent)
    probe = Circuit(("F4", "F1", "G4"))
    assert probe in coords
    again = point_from_coordinates(chart, coords)
    assert float(again.bends[0]) == pytest.approx(2.0)


def test_cut(pair_point):
    """Test that cutting returns the leaf points and ignores bending."""
    result = cut(pair_point, ("F1", "F2", "F3"))
    assert result.left.leaf(0).matrix == pair_point.leaf(0).matrix
    assert result.right.leaf(0).matrix == pair_point.leaf(1).matrix
    assert result.ratio == 1
    assert set(result.left.polytope.facets) < set(result.left_piece.facets)
    assert len(result.left_piece.facets) == len(result.left.polytope.facets) + 1
    assert len(result.right_piece.facets) == len(result.right.polytope.facets) + 1
    after = cut(bend(pair_point, 0, E=5), ("F1", "F2", "F3"))
    assert coordinates_of(after.left) == coordinates_of(result.left)
    assert coordinates_of(after.right) == coordinates_of(result.right)
    with pytest.raises(NotEssential):
        cut(point_from_coordinates(cell_chart(all_threes())), ("F1", "F2", "F3"))


def test_tree_type_interface():
    """Test a glued point whose shared vertex has a tree diagram."""
    pt = point_from_coordinates(cell_chart(glued(TREE_LABELS)))
    assert pt.chart.circuits == ()
    assert pt.chart.dimension == 1
    assert cut(pt, ("F1", "F2", "F3")).ratio == 1
    data = bending_data(pt, 0)
    assert isinstance(data.x1, Approx)
    assert data.K1.sign() == data.K2.sign()
    A = assemble(pt, validate=True).matrix
    assert float(cyclic_product(A, data.circuit)) == pytest.approx(float(data.numerator(ONE)))


def test_point_json(pair_point):
    """Test the exported point layout."""
    data = pair_point.to_json()
    assert data["chart"]["dimension"] == 2
    assert len(data["leaves"]) == 2
    assert data["edges"] == [{"delta": ["F1", "F2", "F3"], "E": 1}]
