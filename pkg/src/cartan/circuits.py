"""
Circuits, cyclic products and relevant-circuit enumeration.

A k-circuit is a tuple of facet names read cyclically. Its cyclic product
is the product of A_{i_j i_(j+1)} around the tuple, and every cyclic product
is invariant under diagonal conjugation.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import networkx as nx

from src.arithmetic.alg_scalar import ONE
from src.arithmetic.scalar import INF, Approx, Scalar
from src.cartan.cartan_matrix import CartanMatrix, CyclicRatio
from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.utils.basic_utils import BasicUtils
from src.utils.errors import SignMismatch, TooManyCycles, ZeroCyclicProduct

logger = logging.getLogger(__name__)

MAX_CYCLES = 1_000_000


@dataclass(frozen=True)
class Circuit:
    nodes: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def reversed(self) -> "Circuit":
        """The opposite circuit C-bar."""
        return Circuit(tuple(reversed(self.nodes)))

    def pairs(self) -> List[Tuple[str, str]]:
        n = len(self.nodes)
        return [(self.nodes[i], self.nodes[(i + 1) % n]) for i in range(n)]

    def is_simple(self, graph: nx.Graph) -> bool:
        if len(set(self.nodes)) != len(self.nodes):
            return False
        if len(self.nodes) < 2:
            return len(self.nodes) == 1
        return all(graph.has_edge(s, t) for s, t in self.pairs())

    def canonical(self, order: Sequence[str]) -> "Circuit":
        return canonical_circuit(self.nodes, order)

    def rotated(self, order: Sequence[str]) -> "Circuit":
        """Same orientation, started at the smallest facet of ``order``."""
        if not self.nodes:
            return self
        pos = {s: i for i, s in enumerate(order)}
        start = min(range(len(self.nodes)), key=lambda i: pos[self.nodes[i]])
        return Circuit(self.nodes[start:] + self.nodes[:start])

    def same_cycle(self, other: Union["Circuit", Sequence[str]]) -> bool:
        """True when ``other`` reads the same directed cycle from any start."""
        nodes = other.nodes if isinstance(other, Circuit) else tuple(other)
        if len(nodes) != len(self.nodes):
            return False
        if not nodes:
            return True
        doubled = self.nodes + self.nodes
        return any(doubled[i:i + len(nodes)] == nodes for i in range(len(nodes)))

    def __str__(self) -> str:
        return "(" + ",".join(self.nodes) + ")"

    def to_json(self) -> List[str]:
        return list(self.nodes)


def canonical_circuit(nodes: Sequence[str], order: Sequence[str]) -> Circuit:
    """
    Rotate so the smallest facet (by position in ``order``) comes first,
    then keep the orientation whose second element is smaller.
    """
    pos = {s: i for i, s in enumerate(order)}
    nodes = list(nodes)
    if len(nodes) <= 2:
        start = min(range(len(nodes)), key=lambda i: pos[nodes[i]])
        return Circuit(tuple(nodes[start:] + nodes[:start]))
    start = min(range(len(nodes)), key=lambda i: pos[nodes[i]])
    forward = nodes[start:] + nodes[:start]
    backward = [forward[0]] + forward[1:][::-1]
    if pos[backward[1]] < pos[forward[1]]:
        return Circuit(tuple(backward))
    return Circuit(tuple(forward))


def cyclic_product(A: CartanMatrix, C: Union[Circuit, Sequence[str]]) -> Scalar:
    """Product of the entries along C; exact 0 through a non-adjacent pair."""
    nodes = C.nodes if isinstance(C, Circuit) else tuple(C)
    value = ONE
    n = len(nodes)
    for i in range(n):
        x = A[nodes[i], nodes[(i + 1) % n]]
        if x.is_zero():
            return x * 0
        value = value * x
    return value


def normalized_cyclic_product(A: CartanMatrix, C: Union[Circuit, Sequence[str]]) -> CyclicRatio:
    """The pair (C(A), C-bar(A)) with log(C(A)/C-bar(A))."""
    circuit = C if isinstance(C, Circuit) else Circuit(tuple(C))
    num = cyclic_product(A, circuit)
    den = cyclic_product(A, circuit.reversed())
    if num.is_zero() or den.is_zero():
        raise ZeroCyclicProduct(f"circuit {circuit} has a vanishing cyclic product")
    if num.sign() != den.sign():
        raise SignMismatch(f"circuit {circuit}: C(A) and its reversal differ in sign")
    log_value = Approx(math.log(float(num) / float(den)))
    return CyclicRatio(num=num, den=den, log_value=log_value)


def undirected_cycles(graph: nx.Graph, order: Sequence[str], max_cycles: int = MAX_CYCLES) -> List[Circuit]:
    """Simple cycles of length >= 3, one canonical representative each."""
    found = set()
    for cycle in nx.simple_cycles(graph):
        if len(cycle) < 3:
            continue
        found.add(canonical_circuit(cycle, order))
        if len(found) > max_cycles:
            raise TooManyCycles(f"more than {max_cycles} simple cycles")
    pos = {s: i for i, s in enumerate(order)}
    return sorted(found, key=lambda c: (len(c), [pos[s] for s in c.nodes]))


def relevant_circuits(
    source: Union[CoxeterMatrix, CartanMatrix], max_cycles: int = MAX_CYCLES
) -> List[Circuit]:
    """
    Relevant circuits of a diagram or of the adjacency graph of a Cartan matrix.

    Simple cycles of length >= 3 plus, as 2-circuits, every edge labeled inf
    (for a Cartan matrix: every pair with edge product >= 4).
    """
    order = source.index
    if isinstance(source, CoxeterMatrix):
        graph = source.diagram()
        infinite = [(s, t) for (s, t), m in source.labels().items() if m == INF]
    else:
        graph = source.adjacency()
        infinite = []
        for s, t in graph.edges():
            p = source.edge_product(s, t)
            if p >= 4:
                infinite.append(tuple(sorted((s, t), key=source.position)))
    cycles = undirected_cycles(graph, order, max_cycles)
    twos = [canonical_circuit(pair, order) for pair in sorted(infinite, key=lambda e: (order.index(e[0]), order.index(e[1])))]
    return twos + cycles


def directed_simple_cycles(graph: nx.Graph, order: Sequence[str], max_cycles: int = MAX_CYCLES) -> List[Circuit]:
    """Both orientations of every simple cycle of length >= 3, each started at its smallest facet."""
    out = []
    for c in undirected_cycles(graph, order, max_cycles):
        out.append(c)
        out.append(c.reversed().rotated(order))
    return out


def fundamental_cycles(graph: nx.Graph, order: Sequence[str]) -> List[Tuple[Tuple[str, str], Circuit]]:
    """
    Fundamental cycles of the lexicographic spanning forest.

    Returns (non-tree edge, canonical circuit) pairs in edge order.
    """
    tree = BasicUtils.lex_spanning_tree(graph, order)
    out = []
    for s, t in BasicUtils.non_tree_edges(graph, order, tree):
        path = BasicUtils.tree_path(tree, t, s)
        out.append(((s, t), canonical_circuit([s] + path[:-1], order)))
    return out


def circuit_edges(C: Circuit) -> List[frozenset]:
    return [frozenset(p) for p in C.pairs()]


def edge_product_of(A: CartanMatrix, C: Circuit) -> Scalar:
    """M_C: product of the edge products along C, equal to C(A) * C-bar(A)."""
    value = ONE
    for s, t in C.pairs():
        value = value * A.edge_product(s, t)
    return value


def label_products(M: CoxeterMatrix, C: Iterable[str]) -> List[int]:
    """Integer edge products 4cos^2(pi/m) along a circuit with labels in {3, 4, 6}."""
    from src.arithmetic.scalar import cos_product

    nodes = list(C)
    out = []
    for i in range(len(nodes)):
        p = cos_product(M[nodes[i], nodes[(i + 1) % len(nodes)]])
        ok, value = p.is_integer()
        out.append(value if ok else None)
    return out
