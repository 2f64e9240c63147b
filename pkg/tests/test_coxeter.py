"""
Test module for Coxeter matrices and their classification.
"""

import pytest

from src.arithmetic import INF
from src.coxeter import (
    CoxeterMatrix,
    GroupType,
    classify,
    is_affine_A_tilde,
    is_spherical,
    refine,
    standard_subgroup,
    validate_coxeter,
)
from src.utils.errors import Reducible, UnknownFacet


def cycle(n, labels=None):
    names = [f"F{i}" for i in range(1, n + 1)]
    labels = labels or [3] * n
    pairs = {(names[i], names[(i + 1) % n]): labels[i] for i in range(n)}
    return CoxeterMatrix.from_labels(names, pairs)


@pytest.fixture
def a3():
    """Path diagram of type A3."""
    return CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): 3, ("F2", "F3"): 3})


@pytest.fixture
def triangle_237():
    """Hyperbolic (2,3,7) triangle group."""
    return CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): 2, ("F2", "F3"): 3, ("F1", "F3"): 7})


def test_validate_coxeter():
    """Test the Coxeter matrix axioms."""
    assert validate_coxeter(CoxeterMatrix(["F1"], [[1]])) == []
    bad_off = validate_coxeter(CoxeterMatrix(["F1", "F2"], [[1, 1], [1, 1]]))
    assert [v.where for v in bad_off] == [("F1", "F2")]
    bad_diag = validate_coxeter(CoxeterMatrix(["F1", "F2"], [[2, 3], [3, 1]]))
    assert [v.where for v in bad_diag] == [("F1", "F1")]
    asym = validate_coxeter(CoxeterMatrix(["F1", "F2"], [[1, 3], [4, 1]]))
    assert asym and asym[0].message == "table is not symmetric"


def test_classify_basic(a3, triangle_237):
    """Test spherical, affine and large recognition."""
    assert classify(a3).kind is GroupType.SPHERICAL
    assert classify(cycle(3)).kind is GroupType.AFFINE
    assert classify(triangle_237).kind is GroupType.LARGE


def test_classify_infinite_label():
    """Test that an infinite label is affine in rank two and large beyond."""
    assert classify(CoxeterMatrix.from_labels(["F1", "F2"], {("F1", "F2"): INF})).is_affine
    tri = CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): INF, ("F2", "F3"): 3})
    assert classify(tri).is_large


def test_classify_affine_families():
    """Test affine diagrams of types C2-tilde and G2-tilde."""
    c2 = CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): 4, ("F2", "F3"): 4})
    g2 = CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): 6, ("F2", "F3"): 3})
    h3 = CoxeterMatrix.from_labels(["F1", "F2", "F3"], {("F1", "F2"): 5, ("F2", "F3"): 3})
    assert classify(c2).is_affine
    assert classify(g2).is_affine
    assert classify(h3).is_spherical


def test_classify_reducible():
    """Test reducible input with and without the irreducibility requirement."""
    M = CoxeterMatrix.from_labels(["F1", "F2", "F3", "F4"], {("F1", "F2"): 3, ("F3", "F4"): 4})
    with pytest.raises(Reducible):
        classify(M)
    assert classify(M, require_irreducible=False).is_spherical
    mixed = CoxeterMatrix.from_labels(["F1", "F2", "F3", "F4"], {("F1", "F2"): INF, ("F3", "F4"): 4})
    assert classify(mixed, require_irreducible=False).is_affine


def test_refine(triangle_237):
    """Test the Lanner and A-tilde flags."""
    assert refine(triangle_237).is_lanner
    assert refine(cycle(4)).is_affine_A_tilde
    assert is_affine_A_tilde(cycle(5))
    flags = refine(cycle(4, [3, 3, 3, 4]))
    assert flags.is_large
    assert flags.is_2lanner
    # every vertex deletion leaves a path of type A3 or B3
    assert flags.is_lanner


def test_large_with_affine_subdiagram():
    """Test a large diagram with an affine subdiagram."""
    # A2-tilde triangle with a tail of two nodes
    M = CoxeterMatrix.from_labels(
        ["F1", "F2", "F3", "F4", "F5"],
        {("F1", "F2"): 3, ("F2", "F3"): 3, ("F1", "F3"): 3, ("F3", "F4"): 3, ("F4", "F5"): 3},
    )
    flags = refine(M)
    assert flags.is_large
    assert not flags.is_lanner
    assert not flags.is_2lanner


def test_standard_subgroup(triangle_237):
    """Test restriction to standard subgroups."""
    assert standard_subgroup(cycle(3), ["F1", "F2"])[("F1", "F2")] == 3
    assert standard_subgroup(cycle(3), []).size == 0
    dihedral = standard_subgroup(triangle_237, ["F1", "F3"])
    assert dihedral[("F1", "F3")] == 7
    with pytest.raises(UnknownFacet):
        standard_subgroup(triangle_237, ["F9"])


def test_spherical_of_empty_and_singletons():
    """Test the trivial subgroups."""
    assert is_spherical(CoxeterMatrix([], []))
    assert is_spherical(CoxeterMatrix(["F1"], [[1]]))


def test_json_and_dot(triangle_237):
    """Test JSON export and DOT rendering."""
    data = triangle_237.to_json()
    assert data == {"index": ["F1", "F2", "F3"], "labels": {"F1,F3": 7, "F2,F3": 3}}
    assert CoxeterMatrix.from_json(data) == triangle_237
    dot = triangle_237.to_dot()
    assert '"F1" -- "F3" [label="7"];' in dot
    assert '"F2" -- "F3";' in dot
    inf = CoxeterMatrix.from_labels(["F1", "F2"], {("F1", "F2"): INF})
    assert inf.to_json()["labels"] == {"F1,F2": "inf"}
