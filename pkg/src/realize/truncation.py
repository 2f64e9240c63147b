"""
Geometric truncation of a realized polytope.

For a vertex v (or a prismatic circuit) the polars b_s, s in v, span a
hyperplane Pi. The vertex is truncatable when Pi separates it from the
other end of every edge leaving it; the new facet has b_new on the vertex
line and alpha_new vanishing on Pi, so its reflection fixes Pi pointwise.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np
from scipy.linalg import null_space

from src.polytope.labeled_polytope import LabeledPolytope
from src.realize.realization import VinbergRealization
from src.utils.errors import EdgeIntersectionOutside, NotAHyperplane, ValidationError

logger = logging.getLogger(__name__)

GEOMETRY_EPS = 1.0e-9


@dataclass(frozen=True, eq=False)
class TruncationData:
    """
    ``normal`` is the covector vanishing on Pi; ``parameters`` maps each
    crossing edge (as its pair of endpoints) to the position of Pi on it,
    0 at the first endpoint and 1 at the second.
    """

    facets: Tuple[str, ...]
    normal: np.ndarray
    parameters: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], float]
    alpha_new: np.ndarray
    b_new: np.ndarray

    @property
    def interior(self) -> bool:
        return all(0.0 < p < 1.0 for p in self.parameters.values())

    def reflection(self) -> np.ndarray:
        n = len(self.b_new)
        return np.eye(n) - np.outer(self.b_new, self.alpha_new)

    def to_json(self) -> dict:
        return {
            "facets": list(self.facets),
            "normal": [float(x) for x in self.normal],
            "edges": [{"from": list(a), "to": list(b), "parameter": p} for (a, b), p in self.parameters.items()],
            "alpha_new": [float(x) for x in self.alpha_new],
            "b_new": [float(x) for x in self.b_new],
        }


def vertex_point(R: VinbergRealization, G: LabeledPolytope, w: Iterable[str]) -> np.ndarray:
    """
    The vertex w as a vector on the common kernel of its functionals,
    signed so that the other functionals are non-positive on it.
    """
    names = list(w)
    K = null_space(np.array([R.alpha(s) for s in names]))
    if K.shape[1] != 1:
        raise NotAHyperplane(f"vertex {names} is not a point (kernel dimension {K.shape[1]})")
    x = K[:, 0]
    values = [float(R.alpha(t) @ x) for t in G.facets if t not in names]
    pivot = max(values, key=abs)
    return -x if pivot > 0 else x


def crossing_edges(G: LabeledPolytope, facets: Iterable[str]) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """Edges of G whose d - 1 common facets all lie in ``facets``."""
    S = set(facets)
    out = []
    for v, w in G.edges():
        if (v & w) <= S:
            out.append((G.sort_facets(v), G.sort_facets(w)))
    return out


def truncation_geometry(
    R: VinbergRealization, G: LabeledPolytope, facets: Iterable[str], tol: float = GEOMETRY_EPS
) -> TruncationData:
    """
    The hyperplane spanned by the polars of a vertex or prismatic circuit
    and where it meets the crossing edges.

    Raises:
        NotAHyperplane: the polars span less than a hyperplane, or the
            hyperplane passes through a vertex of a crossing edge
        EdgeIntersectionOutside: some crossing edge is met outside its
            relative interior; ``detail`` is the edge
    """
    names = G.sort_facets(facets)
    if len(names) != G.dim:
        raise ValidationError(f"{list(names)} has {len(names)} facets, expected {G.dim}")
    plane = np.array([R.b(s) for s in names])
    if np.linalg.matrix_rank(plane, tol=tol) != G.dim:
        raise NotAHyperplane(f"polars of {list(names)} span dimension {np.linalg.matrix_rank(plane, tol=tol)}")
    normal = null_space(plane)[:, 0]

    parameters = {}
    for v, w in crossing_edges(G, names):
        pv = float(normal @ vertex_point(R, G, v))
        pw = float(normal @ vertex_point(R, G, w))
        if abs(pv) <= tol or abs(pw) <= tol:
            raise NotAHyperplane(f"the hyperplane of {list(names)} passes through an end of edge {v}-{w}")
        t = pv / (pv - pw)
        if not 0.0 < t < 1.0:
            raise EdgeIntersectionOutside(
                f"the hyperplane of {list(names)} meets edge {v}-{w} at parameter {t:.6g}", detail=(v, w)
            )
        parameters[(v, w)] = t

    alpha_new, b_new = _new_facet(R, names, normal)
    logger.debug("hyperplane of %s crosses %d edges", list(names), len(parameters))
    return TruncationData(tuple(names), normal, parameters, alpha_new, b_new)


def _new_facet(R: VinbergRealization, names: Tuple[str, ...], normal: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    K = null_space(np.array([R.alpha(s) for s in names]))
    if K.shape[1] != 1:
        raise NotAHyperplane(f"functionals of {list(names)} have a {K.shape[1]}-dimensional kernel")
    ell = K[:, 0]
    scale = float(normal @ ell)
    if abs(scale) <= GEOMETRY_EPS:
        raise NotAHyperplane(f"the line of {list(names)} lies in its own hyperplane")
    return 2.0 * normal / scale, ell


def truncate_realization(R: VinbergRealization, G: LabeledPolytope, v: Iterable[str], name: str = "T") -> VinbergRealization:
    """Realization of the truncation of vertex v, with the new facet last."""
    vertex = G.vertex(v)
    data = truncation_geometry(R, G, vertex)
    # orient alpha_new so the truncated vertex lies on its positive side
    x = vertex_point(R, G, vertex)
    sign = 1.0 if float(data.alpha_new @ x) > 0 else -1.0
    alphas = np.vstack([R.alphas, sign * data.alpha_new])
    bs = np.vstack([R.bs, sign * data.b_new])
    return VinbergRealization(R.index + (name,), R.dimension, alphas, bs, R.error)
