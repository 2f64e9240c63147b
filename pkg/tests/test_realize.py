"""
Test module for Vinberg realizations, relation checks, truncation
hyperplanes and word-trace probes.
"""

import math

import numpy as np
import pytest

from src.cartan import CartanMatrix, coxeter_of, cosine_matrix, cyclic_product
from src.deform import assemble, bend, cell_chart, point_from_coordinates
from src.integral import enumerate_integral, enumerate_leaf
from src.polytope import glue, simplex, truncate
from src.realize import (
    bend_realization,
    pair_block,
    realize,
    realize_point,
    traces_integral,
    truncate_realization,
    truncation_geometry,
    verify_relations,
    word_trace,
    word_traces,
)
from src.utils.errors import (
    EdgeIntersectionOutside,
    NotAHyperplane,
    NotLoxodromic,
    RankDeficient,
    ToleranceExceeded,
)

PAN_LABELS = {("1", "2"): 3, ("2", "3"): 3, ("1", "3"): 4, ("1", "4"): 3, ("2", "4"): 2, ("3", "4"): 2}
SQUARE_LABELS = {("1", "2"): 3, ("2", "3"): 3, ("3", "4"): 3, ("1", "4"): 4, ("1", "3"): 2, ("2", "4"): 2}
THREE_LABELS = {(str(i), str(j)): 3 for i in range(1, 5) for j in range(i + 1, 5)}

VERTEX = ["F1", "F2", "F3"]


def labeled(prefix, table):
    return simplex(3, {(prefix + a, prefix + b): m for (a, b), m in table.items()},
                   [f"{prefix}{i}" for i in range(1, 5)])


def glued(table):
    return glue(labeled("F", table), VERTEX, labeled("G", table), ["G1", "G2", "G3"],
                {"F1": "G1", "F2": "G2", "F3": "G3"})


def truncated(G):
    return truncate(G, VERTEX)


@pytest.fixture
def pan():
    return labeled("F", PAN_LABELS)


@pytest.fixture
def pan_cosine(pan):
    return cosine_matrix(pan.coxeter_matrix())


@pytest.fixture
def moved():
    """All-threes simplex with its vertex (F1,F2,F3) pushed off the affine locus."""
    G = labeled("F", THREE_LABELS)
    pt = point_from_coordinates(cell_chart(G), {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4})
    return G, pt.leaf(0).matrix


def test_simplex_identity_factorization(pan_cosine):
    """Test that a simplex is realized with standard functionals and exact polars."""
    R = realize(pan_cosine)
    assert R.dimension == 3
    assert R.error == 0.0
    alphas, bs = R.exact
    assert all(alphas[i][j] == (1 if i == j else 0) for i in range(4) for j in range(4))
    assert len(bs) == 4
    assert R.exact_products() == pan_cosine.rows()


def test_triangle_237():
    """Test the float path on the (2,3,7) triangle."""
    A = cosine_matrix(simplex(2, {("F1", "F2"): 2, ("F2", "F3"): 3, ("F1", "F3"): 7}).coxeter_matrix())
    R = realize(A)
    assert R.dimension == 2
    assert R.exact is None
    assert R.error <= 1.0e-10
    for s in R.index:
        g = R.generator(s)
        assert np.allclose(g @ g, np.eye(3), atol=1.0e-12)
        assert np.linalg.det(g) == pytest.approx(-1.0)
    assert verify_relations(R, coxeter_of(A)).ok


def test_truncated_simplex_rank_factorization(moved):
    """Test a five-facet matrix of rank four."""
    G, _ = moved
    pt = point_from_coordinates(cell_chart(truncated(G)), {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4})
    A = assemble(pt, validate=True).matrix
    R = realize(A)
    assert R.dimension == 3
    assert R.alphas.shape == (5, 4)
    assert R.error <= 1.0e-10
    assert R.exact_products() == A.rows()
    with pytest.raises(RankDeficient):
        realize(A, dimension=4)


def test_realize_rejections(pan_cosine):
    """Test non-loxodromic and wrong-rank inputs."""
    spherical = cosine_matrix(simplex(3, {("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3, ("F1", "F3"): 2,
                                          ("F1", "F4"): 2, ("F2", "F4"): 2}).coxeter_matrix())
    with pytest.raises(NotLoxodromic):
        realize(spherical)
    with pytest.raises(RankDeficient):
        realize(pan_cosine, dimension=2)


def test_gauge_equivariance(pan_cosine):
    """Test that a conjugated matrix is realized with the conjugated products."""
    B = pan_cosine.conjugate({"F1": 2, "F2": 1, "F3": 3, "F4": 1})
    R = realize(B, exact=False)
    assert np.allclose(R.products(), B.float_array(), atol=1.0e-10)


def test_relations_finite(pan_cosine, pan):
    """Test finite-order relations of a realized simplex."""
    report = verify_relations(realize(pan_cosine), pan.coxeter_matrix())
    assert report.ok
    assert all(c.kind == "finite" for c in report.checks)
    assert len(report.checks) == 6
    assert report.generator_error <= 1.0e-10
    assert len(report.to_frame()) == 6


def test_relations_infinite_pairs(moved):
    """Test the loxodromic pair of a truncation and the parabolic pairs of an ideal triangle."""
    G, _ = moved
    pt = point_from_coordinates(cell_chart(truncated(G)), {("F1", "F2", "F3"): 4, ("F1", "F2", "F4"): 4})
    A = assemble(pt, validate=True).matrix
    report = verify_relations(realize(A), coxeter_of(A))
    lox = [c for c in report.checks if c.kind == "loxodromic"]
    assert [c.pair for c in lox] == [("F4", "T1")]
    assert lox[0].value == pytest.approx(118.0)

    ideal = CartanMatrix(["F1", "F2", "F3"], [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]])
    R = realize(ideal)
    report = verify_relations(R, coxeter_of(ideal))
    assert report.ok
    assert {c.kind for c in report.checks} == {"parabolic"}
    assert np.trace(pair_block(R, "F1", "F2")) == pytest.approx(2.0)


def test_relations_failure(pan_cosine):
    """Test that wrong labels are reported with the failing pair."""
    R = realize(pan_cosine)
    M = simplex(3, {**{("F" + a, "F" + b): m for (a, b), m in PAN_LABELS.items()}, ("F1", "F2"): 4}).coxeter_matrix()
    with pytest.raises(ToleranceExceeded) as info:
        verify_relations(R, M)
    assert info.value.detail == ("F1", "F2")
    assert not verify_relations(R, M, strict=False).ok


def test_truncation_lanner_vertex(pan_cosine, pan):
    """Test that the hyperplane of a Lanner vertex cuts its three edges inside."""
    R = realize(pan_cosine)
    data = truncation_geometry(R, pan, VERTEX)
    assert len(data.parameters) == 3
    assert data.interior
    assert all(0.0 < t < 1.0 for t in data.parameters.values())
    sigma = data.reflection()
    for s in VERTEX:
        assert np.allclose(sigma @ R.b(s), R.b(s))
        assert abs(float(data.alpha_new @ R.b(s))) < 1.0e-9
        assert abs(float(R.alpha(s) @ data.b_new)) < 1.0e-9
    assert float(data.alpha_new @ data.b_new) == pytest.approx(2.0)


def test_truncation_rejections(pan_cosine, pan):
    """Test spherical and affine vertices."""
    R = realize(pan_cosine)
    with pytest.raises((EdgeIntersectionOutside, NotAHyperplane)):
        truncation_geometry(R, pan, ["F1", "F2", "F4"])
    G = labeled("F", THREE_LABELS)
    affine = realize(cosine_matrix(G.coxeter_matrix()))
    with pytest.raises(NotAHyperplane):
        truncation_geometry(affine, G, VERTEX)


def test_truncate_realization(moved):
    """Test the new facet against the closed form 2 det(A) / det(A_v)."""
    G, A = moved
    R = truncate_realization(realize(A), G, VERTEX, name="T1")
    P = R.products()
    i, k = R.position("T1"), R.position("F4")
    assert P[i, i] == pytest.approx(2.0)
    assert P[i, k] * P[k, i] == pytest.approx(120.0)
    for s in VERTEX:
        assert abs(P[i, R.position(s)]) < 1.0e-9
        assert abs(P[R.position(s), i]) < 1.0e-9


def test_realize_point_and_bend():
    """Test the assembled frame and the float bending against exact bending."""
    G = glued(PAN_LABELS)
    pt = point_from_coordinates(cell_chart(G))
    R = realize_point(pt)
    assert R.dimension == 3
    assert R.index == ("F1", "F2", "F3", "F4", "G4")
    assert R.error <= 1.0e-10
    assert R.exact is not None

    bent = bend_realization(R, VERTEX, ["G4"], 3.0)
    A = assemble(bend(pt, 0, E=3)).matrix
    P = bent.products()
    f4, g4 = bent.position("F4"), bent.position("G4")
    assert P[f4, g4] * P[g4, f4] == pytest.approx(float(A.edge_product("F4", "G4")))
    cycle = [bent.position(s) for s in ("F4", "F1", "G4")]
    forward = P[cycle[0], cycle[1]] * P[cycle[1], cycle[2]] * P[cycle[2], cycle[0]]
    assert forward == pytest.approx(float(cyclic_product(A, ("F4", "F1", "G4"))))
    unchanged = bend_realization(R, VERTEX, ["G4"], 1.0)
    assert np.allclose(unchanged.products(), R.products())


def test_word_traces_basic(pan_cosine):
    """Test the identity word, a reflection and seeded determinism."""
    R = realize(pan_cosine)
    assert word_trace(R, ()) == pytest.approx(4.0)
    assert word_trace(R, ("F1",)) == pytest.approx(2.0)
    first = word_traces(R, count=20, max_len=6, seed=7)
    again = word_traces(R, count=20, max_len=6, seed=7)
    assert [t.word for t in first] == [t.word for t in again]
    assert [t.trace for t in first] == [t.trace for t in again]
    assert all(1 <= len(t.word) <= 6 for t in first)
    assert all(a != b for t in first for a, b in zip(t.word, t.word[1:]))


def test_traces_at_integral_points():
    """Test that integral points have integer word traces."""
    square = labeled("F", SQUARE_LABELS)
    points = enumerate_leaf(square) + enumerate_integral(glued(PAN_LABELS))
    assert len(points) == 8
    for p in points:
        R = realize_point(p.point)
        ok, worst = traces_integral(word_traces(R, count=200, max_len=8, seed=42))
        assert ok, worst


def test_traces_detect_non_integral(pan_cosine):
    """Test that the cosine pan point has a non-integer trace."""
    R = realize(pan_cosine)
    ok, worst = traces_integral(word_traces(R, count=200, max_len=8, seed=42))
    assert not ok
    assert worst.distance_to_integer > 1.0e-6
    assert math.isfinite(worst.trace)
