"""
Prismatic circuits, splitting and truncation-polytope recognition.

A set of d facets is a prismatic circuit when its facets are pairwise
adjacent, have no common vertex, and cut the remaining facets into two
sides. Splitting along it produces two pieces, each with the circuit as a
new vertex.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from src.coxeter.classification import GroupClass, classify, refine
from src.polytope.labeled_polytope import LabeledPolytope, as_vertex, fresh_facet_name, truncate
from src.utils.errors import NotPrismatic, NotTruncationPolytope, Reducible

logger = logging.getLogger(__name__)


class CircuitKind(Enum):
    USELESS = "useless"
    NON_ESSENTIAL = "non_essential"
    ESSENTIAL = "essential"


@dataclass(frozen=True)
class PrismaticCircuit:
    facets: Tuple[str, ...]
    kind: CircuitKind
    group: Optional[GroupClass]
    sides: Tuple[Tuple[str, ...], Tuple[str, ...]]

    @property
    def is_essential(self) -> bool:
        return self.kind is CircuitKind.ESSENTIAL

    def to_json(self) -> dict:
        return {
            "facets": list(self.facets),
            "kind": self.kind.value,
            "group": self.group.to_json() if self.group else None,
            "sides": [list(s) for s in self.sides],
        }


@dataclass(frozen=True)
class Split:
    """Both pieces of a split, truncated (left, right) and untruncated (bases)."""

    delta: Tuple[str, ...]
    left: LabeledPolytope
    right: LabeledPolytope
    left_base: LabeledPolytope
    right_base: LabeledPolytope

    @property
    def vertex(self) -> frozenset:
        return frozenset(self.delta)


def is_simplex(G: LabeledPolytope) -> bool:
    n = len(G.facets)
    return n == G.dim + 1 and len(G.vertices) == n


def _sides(G: LabeledPolytope, delta: Sequence[str]) -> Optional[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    rest = [s for s in G.facets if s not in delta]
    graph = G.facet_graph().subgraph(rest)
    comps = [G.sort_facets(c) for c in nx.connected_components(graph)]
    if len(comps) != 2:
        return None
    comps.sort(key=lambda c: G.position(c[0]))
    return comps[0], comps[1]


def _is_candidate(G: LabeledPolytope, delta: Sequence[str]) -> bool:
    if len(delta) != G.dim:
        return False
    if any(not G.is_adjacent(s, t) for s, t in combinations(delta, 2)):
        return False
    cut = set(delta)
    return not any(cut <= v for v in G.vertices)


def _orthogonal_cap(G: LabeledPolytope, side: Sequence[str], delta: Sequence[str]) -> bool:
    return len(side) == 1 and all(G.label(side[0], s) == 2 for s in delta)


def _kind(G: LabeledPolytope, delta: Sequence[str], sides) -> CircuitKind:
    caps = [_orthogonal_cap(G, side, delta) for side in sides]
    if all(caps):
        return CircuitKind.USELESS
    if any(caps):
        return CircuitKind.NON_ESSENTIAL
    return CircuitKind.ESSENTIAL


def _group(G: LabeledPolytope, delta: Sequence[str]) -> Optional[GroupClass]:
    W = G.coxeter_matrix().restrict(delta)
    try:
        return refine(W)
    except Reducible:
        return classify(W, require_irreducible=False)


def find_prismatic(G: LabeledPolytope, with_groups: bool = True) -> List[PrismaticCircuit]:
    """All prismatic circuits in lexicographic order, without a recognition check."""
    graph = G.facet_graph()
    found = []
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) < G.dim:
            continue
        if len(clique) > G.dim:
            break
        delta = G.sort_facets(clique)
        if not _is_candidate(G, delta):
            continue
        sides = _sides(G, delta)
        if sides is None:
            continue
        group = _group(G, delta) if with_groups else None
        found.append(PrismaticCircuit(delta, _kind(G, delta, sides), group, sides))
    found.sort(key=lambda c: [G.position(s) for s in c.facets])
    return found


def _base(G: LabeledPolytope, delta: Sequence[str], side: Sequence[str]) -> LabeledPolytope:
    keep = set(delta) | set(side)
    side_set = set(side)
    facets = [s for s in G.facets if s in keep]
    vertices = [v for v in G.vertices if v & side_set] + [as_vertex(delta)]
    labels = {p: m for p, m in G.labels.items() if p <= keep}
    return LabeledPolytope(G.dim, facets, vertices, labels, None)


def split(G: LabeledPolytope, delta: Sequence[str]) -> Split:
    """
    Split G along a prismatic circuit into G1 (truncated at the circuit) and G2.

    Raises:
        NotPrismatic: if delta is not a prismatic circuit of G
    """
    delta = tuple(delta.facets) if isinstance(delta, PrismaticCircuit) else tuple(delta)
    for s in delta:
        G.position(s)
    delta = G.sort_facets(delta)
    if not _is_candidate(G, delta):
        raise NotPrismatic(f"{list(delta)} is not a prismatic circuit")
    sides = _sides(G, delta)
    if sides is None:
        raise NotPrismatic(f"{list(delta)} does not separate the polytope")
    left_base = _base(G, delta, sides[0])
    right_base = _base(G, delta, sides[1])
    t_left = fresh_facet_name(G.facets)
    t_right = fresh_facet_name(list(G.facets) + [t_left])
    left = truncate(left_base, delta, t_left)
    right = truncate(right_base, delta, t_right)
    return Split(delta, left, right, left_base, right_base)


@lru_cache(maxsize=1024)
def is_truncation_polytope(G: LabeledPolytope) -> bool:
    """Simplex, or splits along some prismatic circuit into truncation polytopes."""
    if is_simplex(G):
        return True
    circuits = find_prismatic(G, with_groups=False)
    if not circuits:
        return False
    pieces = split(G, circuits[0].facets)
    return is_truncation_polytope(pieces.left_base) and is_truncation_polytope(pieces.right_base)


def prismatic_circuits(G: LabeledPolytope) -> List[PrismaticCircuit]:
    """
    Classified prismatic circuits of a truncation polytope.

    Raises:
        NotTruncationPolytope: for any other combinatorial type
    """
    if not is_truncation_polytope(G):
        raise NotTruncationPolytope(f"{G!r} is not a truncation polytope")
    return find_prismatic(G)
