"""
Embedded example inputs: Lanner and affine triangles, the five kinds of
3-simplices, cycle/pan/K(2,3) diagrams in dimension four, truncated and
glued simplices, the labeled cube, and a few bare Coxeter diagrams.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Union

from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.polytope.constructions import glue, labeled_cube, polytope_from_json, polytope_to_json
from src.polytope.labeled_polytope import LabeledPolytope, simplex, truncate
from src.utils.errors import ParseError, UnknownName

logger = logging.getLogger(__name__)

Entry = Union[LabeledPolytope, CoxeterMatrix]

PAN = {("1", "2"): 3, ("2", "3"): 3, ("1", "3"): 4, ("1", "4"): 3, ("2", "4"): 2, ("3", "4"): 2}
ALL_THREES = {(str(i), str(j)): 3 for i in range(1, 5) for j in range(i + 1, 5)}
ONE_RIGHT = {**ALL_THREES, ("1", "2"): 2}
SQUARE = {("1", "2"): 3, ("2", "3"): 3, ("3", "4"): 3, ("1", "4"): 4, ("1", "3"): 2, ("2", "4"): 2}
RIGID = {("1", "2"): 3, ("1", "3"): 5, ("3", "4"): 3, ("1", "4"): 2, ("2", "3"): 2, ("2", "4"): 2}


def _simplex3(table: Mapping, prefix: str = "F") -> LabeledPolytope:
    return simplex(3, {(prefix + a, prefix + b): m for (a, b), m in table.items()},
                   [f"{prefix}{i}" for i in range(1, 5)])


def _triangle(a: int, b: int, c: int) -> LabeledPolytope:
    return simplex(2, {("F1", "F2"): a, ("F2", "F3"): b, ("F1", "F3"): c})


def _simplex4(edges: Mapping) -> LabeledPolytope:
    names = [f"F{i}" for i in range(1, 6)]
    labels = {(a, b): 2 for i, a in enumerate(names) for b in names[i + 1:]}
    labels.update(edges)
    return simplex(4, labels, names)


def _pair(table: Mapping) -> LabeledPolytope:
    return glue(_simplex3(table), ["F1", "F2", "F3"], _simplex3(table, "G"), ["G1", "G2", "G3"],
                {"F1": "G1", "F2": "G2", "F3": "G3"})


def _cycle_diagram(n: int) -> CoxeterMatrix:
    names = [f"s{i}" for i in range(1, n + 1)]
    return CoxeterMatrix.from_labels(names, {(names[i], names[(i + 1) % n]): 3 for i in range(n)})


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[[], Entry]

    @property
    def kind(self) -> str:
        return "coxeter" if isinstance(self.build(), CoxeterMatrix) else "polytope"


_ENTRIES = [
    CatalogEntry("lanner-237-triangle", "the (2,3,7) triangle, rigid", lambda: _triangle(2, 3, 7)),
    CatalogEntry("lanner-334-triangle", "the (3,3,4) triangle, one-dimensional deformation space",
                 lambda: _triangle(3, 3, 4)),
    CatalogEntry("affine-A2-triangle", "the Euclidean (3,3,3) triangle", lambda: _triangle(3, 3, 3)),
    CatalogEntry("case1-simplex", "3-simplex without right angles, all labels 3", lambda: _simplex3(ALL_THREES)),
    CatalogEntry("case2-simplex", "3-simplex with one right angle", lambda: _simplex3(ONE_RIGHT)),
    CatalogEntry("case3-simplex", "3-simplex whose diagram is a pan", lambda: _simplex3(PAN)),
    CatalogEntry("case4-simplex", "3-simplex whose diagram is a square", lambda: _simplex3(SQUARE)),
    CatalogEntry("case5-simplex", "rigid 3-simplex with a label 5", lambda: _simplex3(RIGID)),
    CatalogEntry("cycle-4-simplex", "4-simplex whose diagram is a 5-cycle with one label 4", lambda: _simplex4({
        ("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3, ("F4", "F5"): 3, ("F1", "F5"): 4,
    })),
    CatalogEntry("pan-4-simplex", "4-simplex whose diagram is a square with a tail", lambda: _simplex4({
        ("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 3, ("F1", "F4"): 4, ("F1", "F5"): 3,
    })),
    CatalogEntry("k23-simplex", "4-simplex whose diagram is K(2,3)", lambda: _simplex4({
        (a, b): 3 for a in ("F1", "F2") for b in ("F3", "F4", "F5")
    })),
    CatalogEntry("pan-truncated", "pan simplex with its Lanner vertex truncated",
                 lambda: truncate(_simplex3(PAN), ["F1", "F2", "F3"])),
    CatalogEntry("affine-truncated", "all-threes simplex with an affine vertex truncated",
                 lambda: truncate(_simplex3(ALL_THREES), ["F1", "F2", "F3"])),
    CatalogEntry("two-lanner-glue-1", "two pan simplices glued along their Lanner vertices", lambda: _pair(PAN)),
    CatalogEntry("affine-circuit-glue", "two all-threes simplices glued along an affine vertex",
                 lambda: _pair(ALL_THREES)),
    CatalogEntry("labeled-cube", "labeled cube, not a truncation polytope", labeled_cube),
    CatalogEntry("affine-A3-diagram", "the 4-cycle with all labels 3", lambda: _cycle_diagram(4)),
    CatalogEntry("spherical-H3-diagram", "the linear diagram 5-3", lambda: CoxeterMatrix.from_labels(
        ["s1", "s2", "s3"], {("s1", "s2"): 5, ("s2", "s3"): 3})),
]

CATALOG: Dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_names() -> List[str]:
    return [e.name for e in _ENTRIES]


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog entry {name!r}; known: {', '.join(catalog_names())}") from None


def build(name: str) -> Entry:
    return get_entry(name).build()


def to_document(obj: Entry, name: str, description: str = "") -> dict:
    doc = {"name": name, "description": description}
    if isinstance(obj, CoxeterMatrix):
        doc["coxeter"] = obj.to_json()
    else:
        doc["polytope"] = polytope_to_json(obj)
    return doc


def from_document(doc: Mapping) -> Entry:
    """Inverse of :func:`to_document` (name and description are ignored)."""
    if "coxeter" in doc:
        try:
            return CoxeterMatrix.from_json(doc["coxeter"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad Coxeter matrix: {e}") from e
    if "polytope" in doc:
        return polytope_from_json(doc["polytope"])
    raise ParseError("document has neither a 'coxeter' nor a 'polytope' field")


def emit(name: str) -> dict:
    """The entry as an input document for the command line."""
    entry = get_entry(name)
    logger.debug("emitting catalog entry %s", name)
    return to_document(entry.build(), entry.name, entry.description)


def list_catalog() -> List[dict]:
    return [{"name": e.name, "kind": e.kind, "description": e.description} for e in _ENTRIES]
