"""
Coordinate charts of deformation spaces.

A chart lists the circuits whose normalized cyclic products parametrize
the leaf simplices of a gluing tree, the integer relations among them, and
one bending coordinate per tree edge. The cycle space of every leaf diagram
is covered: interface circuits first, then relevant circuits by length.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from src.arithmetic.linalg import inverse, left_nullspace, pivot_rows, rank
from src.cartan.circuits import Circuit, canonical_circuit, fundamental_cycles, undirected_cycles
from src.polytope.gluing_tree import MAX_DIMENSION, GluingNode, GluingTree, gluing_tree
from src.polytope.labeled_polytope import LabeledPolytope, perfection
from src.utils.basic_utils import BasicUtils
from src.utils.errors import EmptyCell, NotTruncationPolytope, UnsupportedShape

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


class ChartCase(Enum):
    TRIANGLE = "triangle"
    RIGHT_TRIANGLE = "right_triangle"
    CASE_1 = "case1"  # no right angle
    CASE_2 = "case2"  # one right angle
    CASE_3 = "case3"  # pan
    CASE_4 = "case4"  # 4-cycle
    CASE_5 = "case5"  # rigid
    CYCLE = "cycle"
    PAN = "pan"
    K23 = "K2,3"
    TREE = "tree"
    OTHER = "other"
    GLUED = "glued"


def diagram_of(node: GluingNode) -> nx.Graph:
    """Edges of the node simplex with label other than 2."""
    g = nx.Graph()
    g.add_nodes_from(node.facets)
    for pair, m in node.labels.items():
        if m != 2:
            s, t = sorted(pair, key=node.facets.index)
            g.add_edge(s, t, label=m)
    return g


def orientation(circuit: Circuit, edge: Edge) -> int:
    """+1 if the circuit runs s -> t along edge (s, t), -1 if t -> s, 0 if it avoids it."""
    s, t = edge
    for a, b in circuit.pairs():
        if (a, b) == (s, t):
            return 1
        if (a, b) == (t, s):
            return -1
    return 0


def circuit_vector(circuit: Circuit, edges: Sequence[Edge]) -> List[int]:
    return [orientation(circuit, e) for e in edges]


def _primitive(row) -> Tuple[int, ...]:
    """Integer multiple of a rational vector with coprime entries and a positive leading entry."""
    fractions = [x.a for x in row]
    den = 1
    for q in fractions:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in fractions]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints] if g else ints
    lead = next((x for x in ints if x), 1)
    return tuple(-x for x in ints) if lead < 0 else tuple(ints)


def simplex_case(node: GluingNode) -> ChartCase:
    g = diagram_of(node)
    d = node.dim
    n_right = len(node.facets) * (len(node.facets) - 1) // 2 - g.number_of_edges()
    rank_h1 = g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)
    if d == 2:
        return ChartCase.TRIANGLE if n_right == 0 else ChartCase.RIGHT_TRIANGLE
    if d == 3:
        if n_right == 0:
            return ChartCase.CASE_1
        if n_right == 1:
            return ChartCase.CASE_2
        if n_right == 2:
            return ChartCase.CASE_4 if nx.is_isomorphic(g, nx.cycle_graph(4)) else ChartCase.CASE_3
        return ChartCase.CASE_5
    if rank_h1 == 0:
        return ChartCase.TREE
    if rank_h1 == 1:
        return ChartCase.CYCLE if all(deg == 2 for _, deg in g.degree()) else ChartCase.PAN
    if rank_h1 == 2 and nx.is_isomorphic(g, nx.complete_bipartite_graph(2, 3)):
        return ChartCase.K23
    return ChartCase.OTHER


@dataclass(frozen=True)
class LeafChart:
    """
    Coordinates of one leaf simplex.

    ``tree_edges`` carry symmetric entries; every chord e gets the log-ratio
    w_e = sum_k exponents[e][k] * R(circuits[basis[k]]).
    """

    node: int
    facets: Tuple[str, ...]
    case: ChartCase
    circuits: Tuple[Circuit, ...]
    tree_edges: Tuple[Edge, ...]
    chords: Tuple[Edge, ...]
    basis: Tuple[int, ...]
    exponents: Tuple[Tuple[Fraction, ...], ...]

    @property
    def cycle_rank(self) -> int:
        return len(self.chords)

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "case": self.case.value,
            "circuits": [c.to_json() for c in self.circuits],
        }


def _align(c: Circuit, order: Sequence[str]) -> Tuple[Circuit, int]:
    canon = canonical_circuit(c.nodes, order)
    return canon, orientation(canon, c.pairs()[0])


def _leaf_candidates(node: GluingNode, g: nx.Graph, case: ChartCase) -> List[Circuit]:
    order = node.facets
    cycles = undirected_cycles(g, order)
    if case is ChartCase.CASE_1:
        return [c for c in cycles if len(c) == 3]
    first: List[Circuit] = []
    for vertex in sorted(node.interfaces, key=lambda v: sorted(node.facets.index(s) for s in v)):
        sub = g.subgraph(vertex)
        first.extend(c for _, c in fundamental_cycles(sub, order))
    return first + [c for c in cycles if c not in first]


def leaf_chart(node: GluingNode, order: Sequence[str]) -> LeafChart:
    """Coordinate circuits of a node simplex, canonical with respect to ``order``."""
    g = diagram_of(node)
    case = simplex_case(node)
    tree = BasicUtils.lex_spanning_tree(g, node.facets)
    chords = BasicUtils.non_tree_edges(g, node.facets, tree)
    candidates = _leaf_candidates(node, g, case)
    chosen: List[Circuit] = []
    vectors: List[List[int]] = []
    for c in candidates:
        if len(chosen) >= len(chords) and case is not ChartCase.CASE_1:
            break
        v = circuit_vector(c, chords)
        if case is ChartCase.CASE_1 or rank(vectors + [v]) == len(vectors) + 1:
            chosen.append(c)
            vectors.append(v)
    if chords:
        basis = tuple(pivot_rows(vectors))
        inv = inverse([vectors[i] for i in basis])
        exponents = tuple(tuple(x.a for x in row) for row in inv)
    else:
        basis, exponents = (), ()
    aligned = [_align(c, order) for c in chosen]
    circuits = tuple(c for c, _ in aligned)
    # a reversed circuit has the inverse ratio
    exponents = tuple(tuple(q * aligned[basis[k]][1] for k, q in enumerate(row)) for row in exponents)
    return LeafChart(node.id, node.facets, case, circuits, tuple(tree), tuple(chords), basis, exponents)


def _check_node(node: GluingNode) -> None:
    S = node.simplex()
    cls = S.group_class()
    if not S.is_irreducible():
        raise UnsupportedShape(f"node {list(node.facets)} is reducible")
    if node.dim == 2:
        if not perfection(S).perfect or cls.is_spherical:
            raise UnsupportedShape(f"triangle {list(node.facets)} is not a perfect non-spherical triangle")
        return
    if not cls.is_large:
        raise UnsupportedShape(f"simplex {list(node.facets)} is {cls.kind.value}, not large")
    if not perfection(S).two_perfect:
        raise UnsupportedShape(f"simplex {list(node.facets)} is not 2-perfect")


@dataclass(frozen=True, eq=False)
class CellChart:
    polytope: LabeledPolytope
    tree: GluingTree
    case: ChartCase
    leaves: Tuple[LeafChart, ...]
    circuits: Tuple[Circuit, ...]
    constraints: Tuple[Tuple[int, ...], ...]
    identifications: Tuple[Circuit, ...]

    @property
    def bends(self) -> int:
        return len(self.tree.edges)

    @property
    def dimension(self) -> int:
        return len(self.circuits) - len(self.constraints) + self.bends

    def leaf(self, node: int) -> LeafChart:
        return self.leaves[node]

    def index_of(self, circuit: Circuit) -> int:
        return self.circuits.index(circuit)

    def to_json(self) -> dict:
        return {
            "case": self.case.value,
            "dimension": self.dimension,
            "e_plus": self.polytope.e_plus,
            "circuits": [c.to_json() for c in self.circuits],
            "constraints": [list(c) for c in self.constraints],
            "identifications": [c.to_json() for c in self.identifications],
            "bends": self.bends,
            "leaves": [leaf.to_json() for leaf in self.leaves],
        }


def cell_chart(G: LabeledPolytope) -> CellChart:
    """
    Chart of the deformation space of a triangle, a large irreducible
    2-perfect simplex, its free truncations, or a gluing tree of those.

    Raises:
        EmptyCell: above dimension 9
        UnsupportedShape: for any other polytope
    """
    if G.dim > MAX_DIMENSION:
        raise EmptyCell(f"no Vinberg representation exists in dimension {G.dim} > {MAX_DIMENSION}")
    try:
        tree = gluing_tree(G)
    except NotTruncationPolytope as e:
        raise UnsupportedShape(str(e)) from e
    if G.dim == 2 and (tree.edges or tree.nodes[0].truncations):
        raise UnsupportedShape("only plain triangles are supported in dimension 2")
    for node in tree.nodes:
        _check_node(node)
    leaves = tuple(leaf_chart(node, G.facets) for node in tree.nodes)

    circuits: List[Circuit] = []
    seen: Dict[Circuit, int] = {}
    shared: List[Circuit] = []
    for leaf in leaves:
        for c in leaf.circuits:
            if c in seen:
                if c not in shared:
                    shared.append(c)
                continue
            seen[c] = len(circuits)
            circuits.append(c)

    edges = sorted(
        {tuple(sorted(p, key=G.position)) for c in circuits for p in c.pairs()},
        key=lambda e: (G.position(e[0]), G.position(e[1])),
    )
    constraints: Tuple[Tuple[int, ...], ...] = ()
    if circuits:
        incidence = [circuit_vector(c, edges) for c in circuits]
        constraints = tuple(_primitive(row) for row in left_nullspace(incidence))
    case = leaves[0].case if len(leaves) == 1 else ChartCase.GLUED
    chart = CellChart(G, tree, case, leaves, tuple(circuits), constraints, tuple(shared))
    if chart.dimension != G.e_plus - G.dim:
        logger.warning("chart dimension %d differs from e_plus - d = %d", chart.dimension, G.e_plus - G.dim)
    logger.info("cell chart: case %s, dimension %d", case.value, chart.dimension)
    return chart
