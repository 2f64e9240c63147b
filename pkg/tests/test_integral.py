"""
Test module for integrality certificates, leaf search, fiber sweeps and
the recursive enumeration.
"""

from fractions import Fraction

import pytest

from src.arithmetic import AlgScalar
from src.cartan import Circuit
from src.deform import bending_data, cell_chart, point_from_coordinates
from src.deform.bending import BendingFiberData
from src.integral import (
    check_against_oracle,
    direct_enumerate,
    divisor_pairs,
    enumerate_integral,
    enumerate_leaf,
    enumeration_report,
    fiber_sweep,
    integral_check,
    integral_feasible,
    is_integral,
    label_automorphisms,
    nonexistence_shortcuts,
    pair_ratio,
    positive_divisors,
    quotient_points,
    sweep_candidates,
)
from src.polytope import glue, labeled_cube, simplex, truncate
from src.utils.errors import (
    ApproxData,
    BadEdgeProduct,
    CertificateFailure,
    DivisionByZero,
    NotTruncationPolytope,
    TruncationDegenerate,
    UnsupportedShape,
)

PAN_LABELS = {("1", "2"): 3, ("2", "3"): 3, ("1", "3"): 4, ("1", "4"): 3, ("2", "4"): 2, ("3", "4"): 2}
SQUARE_LABELS = {("1", "2"): 3, ("2", "3"): 3, ("3", "4"): 3, ("1", "4"): 4, ("1", "3"): 2, ("2", "4"): 2}
FIVE_LABELS = {("1", "2"): 3, ("1", "3"): 5, ("3", "4"): 3, ("1", "4"): 2, ("2", "3"): 2, ("2", "4"): 2}
THREE_LABELS = {(str(i), str(j)): 3 for i in range(1, 5) for j in range(i + 1, 5)}

SQUARE = ("F1", "F2", "F3", "F4")


def labeled(prefix, table):
    return simplex(3, {(prefix + a, prefix + b): m for (a, b), m in table.items()},
                   [f"{prefix}{i}" for i in range(1, 5)])


def glued(table):
    return glue(labeled("F", table), ["F1", "F2", "F3"], labeled("G", table), ["G1", "G2", "G3"],
                {"F1": "G1", "F2": "G2", "F3": "G3"})


@pytest.fixture
def square():
    return labeled("F", SQUARE_LABELS)


@pytest.fixture
def pan_pair():
    return glued(PAN_LABELS)


@pytest.fixture(scope="module")
def pan_pair_points():
    return enumerate_integral(glued(PAN_LABELS))


def test_positive_divisors():
    """Test divisors in increasing order."""
    assert positive_divisors(1) == [1]
    assert positive_divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("products, k, expected", [
    ([1, 1, 1], 3, [(-1, -1)]),
    ([1, 1, 2], 3, [(-1, -2), (-2, -1)]),
    ([1, 1, 1, 2], 4, [(1, 2), (2, 1)]),
    ([3, 2, 2, 1], 4, [(1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1)]),
])
def test_divisor_pairs(products, k, expected):
    """Test signed divisor pairs of the edge-product total."""
    pairs = divisor_pairs(products, k)
    assert pairs == expected


def test_divisor_pairs_reject_bad_products():
    """Test that only 1, 2 and 3 are integral edge products."""
    with pytest.raises(BadEdgeProduct):
        divisor_pairs([1, 4, 1], 3)
    with pytest.raises(BadEdgeProduct):
        divisor_pairs([1, None, 1], 3)


def test_pair_ratio():
    """Test the ratio C / C-bar of a divisor pair."""
    assert pair_ratio((-1, -2)) == Fraction(1, 2)
    assert pair_ratio((12, 1)) == 12


def test_integral_feasible():
    """Test the label condition and the reported ridge."""
    assert integral_feasible(labeled("F", THREE_LABELS)).feasible
    report = integral_feasible(labeled("F", FIVE_LABELS))
    assert not report.feasible
    assert report.ridge == ("F1", "F3")
    assert "5" in report.reason


def test_certificate_square(square):
    """Test certificates at a non-integral and an integral point of a square diagram."""
    chart = cell_chart(square)
    with pytest.raises(CertificateFailure):
        integral_check(point_from_coordinates(chart))
    pt = point_from_coordinates(chart, {SQUARE: 2})
    certificate = integral_check(pt)
    assert certificate.value(SQUARE) == 2
    assert certificate.value(("F1", "F4", "F3", "F2")) == 1
    assert certificate.value(("F1", "F4")) == 2
    assert certificate.value(("F1", "F2")) == 1
    assert is_integral(pt)


def test_certificate_affine_triangles():
    """Test that the cosine point of the all-threes simplex is integral."""
    pt = point_from_coordinates(cell_chart(labeled("F", THREE_LABELS)))
    certificate = integral_check(pt)
    assert certificate.value(("F1", "F2", "F3")) == -1
    assert certificate.value(("F1", "F3", "F2")) == -1
    assert certificate.to_json()["note"]


def test_certificate_needs_exact_data():
    """Test that golden-ratio entries are not decided."""
    pt = point_from_coordinates(cell_chart(labeled("F", FIVE_LABELS)))
    with pytest.raises(ApproxData):
        integral_check(pt)


def test_enumerate_leaf_square(square):
    """Test the two integral points of the square diagram and their orbit."""
    points = enumerate_leaf(square)
    assert len(points) == 2
    assert {p.certificate.value(SQUARE) for p in points} == {1, 2}
    for p in points:
        assert integral_check(p.point).entries == p.certificate.entries
    assert len(label_automorphisms(square)) == 2
    assert len(quotient_points(square, points)) == 1


@pytest.mark.parametrize("table, count", [(THREE_LABELS, 1), (PAN_LABELS, 2), (FIVE_LABELS, 0)])
def test_enumerate_simplices(table, count):
    """Test integral point counts of single simplices."""
    assert len(enumerate_integral(labeled("F", table))) == count


def test_enumerate_truncated_pan():
    """Test a truncated Lanner vertex and its truncation edge product."""
    G = truncate(labeled("F", PAN_LABELS), ["F1", "F2", "F3"])
    assert nonexistence_shortcuts(G) is None
    points = enumerate_integral(G)
    assert len(points) == 2
    assert all(p.certificate.value(("F4", "T1")) == 6 for p in points)


def test_truncated_affine_vertex():
    """Test that an affine truncated vertex has no integral point."""
    G = truncate(labeled("F", THREE_LABELS), ["F1", "F2", "F3"])
    shortcut = nonexistence_shortcuts(G)
    assert shortcut.kind == "AffineTruncatedVertex"
    assert shortcut.facets == ("F1", "F2", "F3")
    assert enumerate_leaf(G) == []
    assert enumerate_integral(G) == []


def test_enumerate_leaf_needs_leaf(pan_pair):
    """Test that leaf search refuses glued polytopes."""
    with pytest.raises(UnsupportedShape):
        enumerate_leaf(pan_pair)


def test_enumerate_rejections():
    """Test polygons and non-truncation polytopes."""
    with pytest.raises(UnsupportedShape):
        enumerate_integral(simplex(2, {("F1", "F2"): 3, ("F1", "F3"): 4, ("F2", "F3"): 4}))
    with pytest.raises(NotTruncationPolytope):
        enumerate_integral(labeled_cube())


def test_sweep_candidates_synthetic():
    """Test the sweep bounds on hand-made fiber data."""
    one = AlgScalar(1)
    data = BendingFiberData(-one, one, one, -one, one, one, Circuit(("F4", "F1", "G4")), 3)
    rows = sweep_candidates(data)
    assert len(rows) == 1
    assert rows[0].n == -2
    assert rows[0].E == 1
    assert rows[0].D == -2
    assert rows[0].d_integer


def test_fiber_sweep(pan_pair):
    """Test the fiber through an integral pair of pan leaves."""
    pt = point_from_coordinates(cell_chart(pan_pair), {("F1", "F2", "F3"): 2})
    data = bending_data(pt, 0)
    assert data.K1 == data.K2 == -1
    result = fiber_sweep(data, pt)
    assert len(result.rows) == 9
    assert [r.E for r in result.survivors] == [Fraction(1, 9), Fraction(1, 3), 1]
    assert result.bounds == (Fraction(1, 9), 1)
    frame = result.to_frame()
    assert len(frame) == 9
    assert (frame["status"] == "pass").sum() == 3


def test_enumerate_pan_pair(pan_pair, pan_pair_points):
    """Test the glued pan pair: three bends for each leaf ratio."""
    assert nonexistence_shortcuts(pan_pair) is None
    assert len(pan_pair_points) == 6
    bends = sorted(p.point.bends[0] for p in pan_pair_points)
    assert bends == sorted([Fraction(1, 9), Fraction(1, 3), 1] * 2)
    for p in pan_pair_points:
        assert integral_check(p.point).entries == p.certificate.entries
    assert len(set(pan_pair_points)) == 6


def test_pan_pair_symmetry(pan_pair, pan_pair_points):
    """Test that swapping the two apexes pairs up the bends 1/9 and 1."""
    assert len(label_automorphisms(pan_pair)) == 2
    assert len(quotient_points(pan_pair, pan_pair_points)) == 4


def test_oracle_agrees(pan_pair, pan_pair_points):
    """Test the direct search against the recursion."""
    direct = direct_enumerate(pan_pair)
    assert [p.key for p in direct] == [p.key for p in pan_pair_points]
    assert check_against_oracle(pan_pair, pan_pair_points) == 6


def test_parallel_is_deterministic(pan_pair, pan_pair_points):
    """Test that worker threads do not change the result or its order."""
    assert [p.key for p in enumerate_integral(pan_pair, parallel=2)] == [p.key for p in pan_pair_points]


def test_affine_essential_circuit():
    """Test that cutting along an affine triangle leaves no integral point."""
    G = glued(THREE_LABELS)
    assert nonexistence_shortcuts(G).kind == "AffineEssentialCircuit"
    assert enumerate_integral(G) == []
    assert direct_enumerate(G) == []
    with pytest.raises(TruncationDegenerate):
        integral_check(point_from_coordinates(cell_chart(G)))


def test_uncertified_candidates_are_skipped(square, monkeypatch):
    """Test that undecidable or singular candidates drop out of both searches."""
    for error in (ApproxData, DivisionByZero):
        def undecided(pt, *args, error=error, **kwargs):
            raise error("candidate not decidable")

        monkeypatch.setattr("src.integral.leaf.integral_check", undecided)
        monkeypatch.setattr("src.integral.oracle.integral_check", undecided)
        assert enumerate_leaf(square) == []
        assert direct_enumerate(square) == []


def test_enumeration_report(pan_pair):
    """Test report fields for feasible, infeasible and shortcut inputs."""
    report = enumeration_report(pan_pair, quotient_symmetry=True)
    data = report.to_json()
    assert data["count"] == 6
    assert data["quotient_count"] == 4
    assert data["shortcut"] is None
    assert len(report.to_frame()) == 6

    infeasible = enumeration_report(labeled("F", FIVE_LABELS)).to_json()
    assert not infeasible["feasible"]
    assert infeasible["count"] == 0

    affine = enumeration_report(glued(THREE_LABELS)).to_json()
    assert affine["shortcut"]["kind"] == "AffineEssentialCircuit"
    assert affine["points"] == []
