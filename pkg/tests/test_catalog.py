"""
Test module for the embedded catalog of polytopes and diagrams.
"""

import pytest

from src.coxeter import CoxeterMatrix, GroupType, classify
from src.data import build, catalog_names, emit, from_document, get_entry, list_catalog, to_document
from src.deform import cell_chart
from src.polytope import LabeledPolytope, is_truncation_polytope
from src.utils.conversion_utils import ConversionUtils
from src.utils.errors import UnknownName

# entries whose cell chart is known to exist, with its dimension
CHART_DIMENSIONS = {
    "lanner-237-triangle": 0,
    "lanner-334-triangle": 1,
    "case1-simplex": 3,
    "case2-simplex": 2,
    "case3-simplex": 1,
    "case4-simplex": 1,
    "case5-simplex": 0,
    "cycle-4-simplex": 1,
    "two-lanner-glue-1": 2,
}


def test_catalog_listing():
    """Test names, kinds and the minimum content."""
    names = catalog_names()
    assert len(names) >= 12
    assert len(set(names)) == len(names)
    kinds = {row["name"]: row["kind"] for row in list_catalog()}
    assert kinds["labeled-cube"] == "polytope"
    assert kinds["affine-A3-diagram"] == "coxeter"
    for required in ("lanner-237-triangle", "two-lanner-glue-1", "labeled-cube"):
        assert required in names


def test_unknown_name():
    """Test that an unknown entry is reported."""
    with pytest.raises(UnknownName):
        get_entry("no-such-polytope")
    with pytest.raises(UnknownName):
        emit("no-such-polytope")


@pytest.mark.parametrize("name", catalog_names())
def test_emit_round_trip(name):
    """Test that an emitted document parses back to the same document."""
    doc = emit(name)
    text = ConversionUtils.dumps(doc)
    again = to_document(from_document(doc), doc["name"], doc["description"])
    assert ConversionUtils.dumps(again) == text


@pytest.mark.parametrize("name, dimension", sorted(CHART_DIMENSIONS.items()))
def test_chart_dimensions(name, dimension):
    """Test that the chart dimension of each entry is e_plus - d."""
    G = build(name)
    assert isinstance(G, LabeledPolytope)
    chart = cell_chart(G)
    assert chart.dimension == dimension == G.e_plus - G.dim


def test_cube_is_not_truncation_polytope():
    """Test the labeled cube entry."""
    cube = build("labeled-cube")
    assert len(cube.facets) == 6
    assert len(cube.vertices) == 8
    assert not is_truncation_polytope(cube)
    assert is_truncation_polytope(build("pan-truncated"))


def test_diagram_entries():
    """Test the bare Coxeter diagrams."""
    affine = build("affine-A3-diagram")
    spherical = build("spherical-H3-diagram")
    assert isinstance(affine, CoxeterMatrix)
    assert classify(affine).kind is GroupType.AFFINE
    assert classify(spherical).kind is GroupType.SPHERICAL
