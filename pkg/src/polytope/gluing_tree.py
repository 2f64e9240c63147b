"""
Decomposition of a truncation polytope into a tree of truncated simplices.

The polytope is split along its lexicographically least essential circuit
until no essential circuit remains; every remaining piece is a simplex from
which the non-essential circuits peel off as free truncations.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from src.polytope.labeled_polytope import LabeledPolytope, Vertex, as_vertex
from src.polytope.prismatic import (
    CircuitKind,
    PrismaticCircuit,
    find_prismatic,
    is_simplex,
    is_truncation_polytope,
    split,
)
from src.utils.errors import NotTruncationPolytope

logger = logging.getLogger(__name__)

MAX_DIMENSION = 9


@dataclass
class GluingNode:
    """
    A simplex on ``facets`` with freely truncated vertices and interface vertices.

    ``truncations`` maps a vertex to the name of the facet that cuts it off;
    ``interfaces`` maps a vertex to the index of the tree edge glued there.
    """

    id: int
    facets: Tuple[str, ...]
    labels: Dict[FrozenSet[str], object]
    truncations: Dict[Vertex, str] = field(default_factory=dict)
    interfaces: Dict[Vertex, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.facets) - 1

    def opposite(self, vertex: Vertex) -> str:
        """The facet of the simplex not containing ``vertex``."""
        (k,) = [s for s in self.facets if s not in vertex]
        return k

    def simplex(self) -> LabeledPolytope:
        vertices = [frozenset(self.facets) - {s} for s in self.facets]
        return LabeledPolytope(self.dim, self.facets, vertices, self.labels, None)

    def polytope(self) -> LabeledPolytope:
        """The simplex with its free truncations (interfaces left as vertices)."""
        G = self.simplex()
        facets = list(self.facets)
        vertices = set(G.vertices)
        labels = dict(self.labels)
        for v, t in sorted(self.truncations.items(), key=lambda kv: kv[1]):
            facets.append(t)
            vertices.discard(v)
            vertices.update((v - {s}) | {t} for s in v)
            labels.update({frozenset((s, t)): 2 for s in v})
        return LabeledPolytope(self.dim, facets, vertices, labels, None)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "facets": list(self.facets),
            "truncations": {t: sorted(v, key=self.facets.index) for v, t in self.truncations.items()},
            "interfaces": {str(e): sorted(v, key=self.facets.index) for v, e in self.interfaces.items()},
        }


@dataclass(frozen=True)
class GluingEdge:
    index: int
    left: int
    right: int
    delta: Tuple[str, ...]

    @property
    def vertex(self) -> Vertex:
        return frozenset(self.delta)

    def to_json(self) -> dict:
        return {"index": self.index, "left": self.left, "right": self.right, "delta": list(self.delta)}


@dataclass
class GluingTree:
    polytope_facets: Tuple[str, ...]
    dim: int
    nodes: List[GluingNode]
    edges: List[GluingEdge]

    @property
    def essential_count(self) -> int:
        return len(self.edges)

    @property
    def exceeds_dimension_bound(self) -> bool:
        """No Vinberg representation exists above dimension 9."""
        return self.dim > MAX_DIMENSION

    def node(self, i: int) -> GluingNode:
        return self.nodes[i]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(n.id for n in self.nodes)
        for e in self.edges:
            g.add_edge(e.left, e.right, index=e.index, delta=e.delta)
        return g

    def polytope(self) -> LabeledPolytope:
        """Reassemble the labeled polytope from the nodes."""
        vertices = set()
        labels = {}
        for n in self.nodes:
            for v in combinations(n.facets, self.dim):
                vv = frozenset(v)
                if vv in n.interfaces:
                    continue
                if vv in n.truncations:
                    t = n.truncations[vv]
                    vertices.update((vv - {s}) | {t} for s in vv)
                    labels.update({frozenset((s, t)): 2 for s in vv})
                else:
                    vertices.add(vv)
            labels.update(n.labels)
        return LabeledPolytope(self.dim, self.polytope_facets, vertices, labels, None)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "essential_circuits": self.essential_count,
            "exceeds_dimension_bound": self.exceeds_dimension_bound,
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [e.to_json() for e in self.edges],
        }


def _peelable(G: LabeledPolytope, circuit: PrismaticCircuit) -> Optional[int]:
    """Index of the side that is a single cap orthogonal to the circuit, preferring the later cap."""
    options = [
        i for i, side in enumerate(circuit.sides)
        if len(side) == 1 and all(G.label(side[0], s) == 2 for s in circuit.facets)
    ]
    if not options:
        return None
    return max(options, key=lambda i: G.position(circuit.sides[i][0]))


class _Builder:
    def __init__(self, G: LabeledPolytope):
        self.G = G
        self.nodes: List[GluingNode] = []
        self.edges: List[GluingEdge] = []

    def build(self, P: LabeledPolytope, truncations: Dict[Vertex, str]) -> List[int]:
        """Decompose P; returns the ids of the nodes created."""
        circuits = find_prismatic(P, with_groups=False)
        essential = [c for c in circuits if c.kind is CircuitKind.ESSENTIAL]
        if essential:
            delta = essential[0].facets
            pieces = split(P, delta)
            left_ids = self.build(pieces.left_base, self._inherit(truncations, pieces.left_base))
            right_ids = self.build(pieces.right_base, self._inherit(truncations, pieces.right_base))
            vertex = as_vertex(delta)
            left = self._owner(left_ids, vertex)
            right = self._owner(right_ids, vertex)
            edge = GluingEdge(len(self.edges), left, right, delta)
            self.edges.append(edge)
            self.nodes[left].interfaces[vertex] = edge.index
            self.nodes[right].interfaces[vertex] = edge.index
            logger.debug("split along %s into nodes %d and %d", list(delta), left, right)
            return left_ids + right_ids
        for circuit in circuits:
            side = _peelable(P, circuit)
            if side is None:
                continue
            (cap,) = circuit.sides[side]
            pieces = split(P, circuit.facets)
            rest = pieces.right_base if side == 0 else pieces.left_base
            inherited = self._inherit(truncations, rest)
            inherited[as_vertex(circuit.facets)] = cap
            return self.build(rest, inherited)
        if not is_simplex(P):
            raise NotTruncationPolytope(f"piece with facets {list(P.facets)} is neither split nor a simplex")
        node = GluingNode(len(self.nodes), P.facets, P.labels, dict(truncations))
        self.nodes.append(node)
        return [node.id]

    @staticmethod
    def _inherit(truncations: Dict[Vertex, str], piece: LabeledPolytope) -> Dict[Vertex, str]:
        facets = set(piece.facets)
        return {v: t for v, t in truncations.items() if v <= facets}

    def _owner(self, ids: Sequence[int], vertex: Vertex) -> int:
        for i in ids:
            n = self.nodes[i]
            if vertex <= set(n.facets) and vertex not in n.truncations and vertex not in n.interfaces:
                return i
        raise NotTruncationPolytope(f"no piece carries the interface {sorted(vertex)}")


def gluing_tree(G: LabeledPolytope) -> GluingTree:
    """
    Tree of truncated-simplex nodes joined along essential circuits.

    Raises:
        NotTruncationPolytope: if G is not a truncation polytope
    """
    if not is_truncation_polytope(G):
        raise NotTruncationPolytope(f"{G!r} is not a truncation polytope")
    builder = _Builder(G)
    builder.build(G, {})
    tree = GluingTree(G.facets, G.dim, builder.nodes, builder.edges)
    if tree.exceeds_dimension_bound:
        logger.warning("dimension %d > %d: the deformation space is empty", G.dim, MAX_DIMENSION)
    logger.info("gluing tree: %d nodes, %d essential circuits", len(tree.nodes), tree.essential_count)
    return tree
