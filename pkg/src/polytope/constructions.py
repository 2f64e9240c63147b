"""
Gluing, the JSON construction format and the explicit labeled cube.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional

from src.arithmetic.scalar import label_to_json, parse_label
from src.polytope.labeled_polytope import (
    ExplicitStep,
    GlueStep,
    SimplexStep,
    TruncateStep,
    LabeledPolytope,
    as_vertex,
    simplex,
    truncate,
)
from src.utils.errors import LinkMismatch, ParseError, ValidationError

logger = logging.getLogger(__name__)


def glue(
    G1: LabeledPolytope,
    v1: Iterable[str],
    G2: LabeledPolytope,
    v2: Iterable[str],
    phi: Optional[Mapping[str, str]] = None,
) -> LabeledPolytope:
    """
    Glue G1 truncated at v1 to G2 truncated at v2 along the truncation facets.

    ``phi`` maps the facets of v1 to those of v2 (identity by default) and
    must preserve labels. Facets of v2 take the names of their preimages;
    the remaining facets of G2 must not clash with the names of G1.
    """
    vv1, vv2 = G1.vertex(v1), G2.vertex(v2)
    if G1.dim != G2.dim:
        raise LinkMismatch(f"dimensions differ: {G1.dim} vs {G2.dim}")
    phi = dict(phi) if phi is not None else {s: s for s in vv1}
    if set(phi) != set(vv1) or set(phi.values()) != set(vv2) or len(set(phi.values())) != len(phi):
        raise LinkMismatch("matching is not a bijection between the two vertex links")
    for s, t in combinations(sorted(vv1), 2):
        if G1.label(s, t) != G2.label(phi[s], phi[t]):
            raise LinkMismatch(
                f"label of ({s},{t}) is {G1.label(s, t)} but of ({phi[s]},{phi[t]}) is {G2.label(phi[s], phi[t])}"
            )
    inverse = {t: s for s, t in phi.items()}
    clash = [s for s in G2.facets if s not in vv2 and s in G1.facets]
    if clash:
        raise ValidationError(f"facet names {clash} occur on both sides of the gluing")

    def rename(s: str) -> str:
        return inverse.get(s, s)

    facets = list(G1.facets) + [s for s in G2.facets if s not in vv2]
    vertices = [v for v in G1.vertices if v != vv1]
    vertices += [frozenset(rename(s) for s in v) for v in G2.vertices if v != vv2]
    labels = G1.labels
    for pair, m in G2.labels.items():
        labels.setdefault(frozenset(rename(s) for s in pair), m)
    step = GlueStep(G1, vv1, G2, vv2, tuple(sorted(phi.items())))
    glued = LabeledPolytope(G1.dim, facets, vertices, labels, step)
    logger.debug("glued %s and %s along %s", G1, G2, sorted(vv1))
    return glued


def _labels_from_json(raw: Mapping) -> Dict:
    out = {}
    for key, m in raw.items():
        try:
            out[key] = parse_label(m)
        except (ValueError, TypeError) as e:
            raise ParseError(f"bad label {m!r} for {key}") from e
    return out


def polytope_from_construct(data: Mapping) -> LabeledPolytope:
    """
    Build a polytope from the nested construction format::

        {"simplex": {"dim": d, "labels": {"F1,F2": 3, ...}}}
        {"truncate": {"of": <construct>, "vertex": ["F1", "F2", "F3"]}}
        {"glue": {"left": ..., "leftVertex": [...], "right": ..., "rightVertex": [...],
                  "match": {"F1": "G2", ...}}}

    A top-level {"construct": ...} wrapper is accepted.
    """
    if "construct" in data:
        data = data["construct"]
    if not isinstance(data, Mapping) or len(data) != 1:
        raise ParseError(f"a construction needs exactly one of simplex/truncate/glue, got {data!r}")
    kind, body = next(iter(data.items()))
    try:
        if kind == "simplex":
            return simplex(int(body["dim"]), _labels_from_json(body["labels"]), body.get("facets"))
        if kind == "truncate":
            return truncate(polytope_from_construct(body["of"]), body["vertex"], body.get("name"))
        if kind == "glue":
            return glue(
                polytope_from_construct(body["left"]),
                body["leftVertex"],
                polytope_from_construct(body["right"]),
                body["rightVertex"],
                body.get("match"),
            )
    except KeyError as e:
        raise ParseError(f"construction {kind!r} is missing field {e}") from e
    raise ParseError(f"unknown construction {kind!r}")


def polytope_to_construct(G: LabeledPolytope) -> Dict:
    """Inverse of :func:`polytope_from_construct` for constructed polytopes."""
    step = G.construction
    if isinstance(step, SimplexStep):
        labels = {f"{s},{t}": label_to_json(m) for (s, t), m in step.labels}
        return {"simplex": {"dim": step.dim, "labels": labels, "facets": list(G.facets)}}
    if isinstance(step, TruncateStep):
        return {"truncate": {"of": polytope_to_construct(step.of), "vertex": list(step.of.sort_facets(step.vertex)), "name": step.facet}}
    if isinstance(step, GlueStep):
        return {
            "glue": {
                "left": polytope_to_construct(step.left),
                "leftVertex": list(step.left.sort_facets(step.left_vertex)),
                "right": polytope_to_construct(step.right),
                "rightVertex": list(step.right.sort_facets(step.right_vertex)),
                "match": dict(step.match),
            }
        }
    raise ValidationError("polytope has no replayable construction")


def labeled_cube() -> LabeledPolytope:
    """
    Labeled cube with inner facet F1, outer facet F6 and sides F2 (top),
    F3 (left), F4 (bottom), F5 (right). Its corner {F2, F5, F6} has a
    (4,4,4) link. It is not a truncation polytope.
    """
    facets = ["F1", "F2", "F3", "F4", "F5", "F6"]
    sides = [("F2", "F3"), ("F2", "F5"), ("F4", "F3"), ("F4", "F5")]
    vertices = [as_vertex((cap, a, b)) for cap in ("F1", "F6") for a, b in sides]
    pairs = {
        ("F2", "F6"): 4, ("F5", "F6"): 4, ("F4", "F6"): 2, ("F3", "F6"): 2,
        ("F2", "F3"): 2, ("F2", "F5"): 4, ("F3", "F4"): 4, ("F4", "F5"): 2,
        ("F1", "F2"): 2, ("F1", "F3"): 2, ("F1", "F4"): 2, ("F1", "F5"): 2,
    }
    labels = {frozenset(p): m for p, m in pairs.items()}
    return LabeledPolytope(3, facets, vertices, labels, ExplicitStep("labeled-cube"))


def polytope_from_json(data: Mapping) -> LabeledPolytope:
    """
    Read either the construction format or the explicit format
    {"dim": d, "facets": [...], "vertices": [[...], ...], "labels": {"s,t": m}}.
    """
    if not isinstance(data, Mapping):
        raise ParseError(f"a polytope must be a JSON object, got {type(data).__name__}")
    if "vertices" not in data:
        return polytope_from_construct(data)
    try:
        labels = {frozenset(p.strip() for p in key.split(",")): m for key, m in _labels_from_json(data["labels"]).items()}
        return LabeledPolytope(
            int(data["dim"]), data["facets"], data["vertices"], labels, ExplicitStep(str(data.get("name", "explicit")))
        )
    except KeyError as e:
        raise ParseError(f"explicit polytope is missing field {e}") from e


def polytope_to_json(G: LabeledPolytope) -> Dict:
    """Construction format when the polytope has one, explicit format otherwise."""
    if isinstance(G.construction, ExplicitStep) or G.construction is None:
        data = {key: value for key, value in G.to_json().items() if key != "e_plus"}
        if G.construction is not None:
            data["name"] = G.construction.name
        return data
    return {"construct": polytope_to_construct(G)}
