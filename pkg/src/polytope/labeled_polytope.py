"""
Labeled simple polytopes described by facets, vertices and ridge labels.

A vertex of a simple d-polytope is identified with the set of the d facets
containing it; two facets share a ridge exactly when some vertex contains
both. Every polytope records how it was constructed.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from src.arithmetic.scalar import INF, Label, label_to_json, parse_label
from src.coxeter.classification import GroupClass, classify, is_spherical
from src.coxeter.coxeter_matrix import CoxeterMatrix
from src.utils.errors import BadDimension, MissingLabel, UnknownFacet, UnknownVertex, ValidationError

logger = logging.getLogger(__name__)

Vertex = FrozenSet[str]
Pair = FrozenSet[str]


# construction records


@dataclass(frozen=True)
class SimplexStep:
    dim: int
    labels: Tuple[Tuple[Tuple[str, str], Label], ...]


@dataclass(frozen=True)
class TruncateStep:
    of: "LabeledPolytope"
    vertex: Vertex
    facet: str


@dataclass(frozen=True)
class GlueStep:
    left: "LabeledPolytope"
    left_vertex: Vertex
    right: "LabeledPolytope"
    right_vertex: Vertex
    match: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class ExplicitStep:
    name: str


Construction = Union[SimplexStep, TruncateStep, GlueStep, ExplicitStep]


def as_vertex(v: Iterable[str]) -> Vertex:
    return frozenset(str(s) for s in v)


class LabeledPolytope:
    """
    Combinatorial simple d-polytope with a label on every ridge.

    ``labels`` maps unordered adjacent facet pairs to labels in {2, 3, ...} or inf.
    """

    def __init__(
        self,
        dim: int,
        facets: Sequence[str],
        vertices: Iterable[Iterable[str]],
        labels: Mapping[Pair, Label],
        construction: Optional[Construction] = None,
    ) -> None:
        self._dim = int(dim)
        self._facets = tuple(str(s) for s in facets)
        if len(set(self._facets)) != len(self._facets):
            raise ValidationError(f"duplicate facet names in {self._facets}")
        self._pos = {s: i for i, s in enumerate(self._facets)}
        verts = {as_vertex(v) for v in vertices}
        for v in verts:
            if len(v) != self._dim:
                raise ValidationError(f"vertex {sorted(v)} is not simple in dimension {self._dim}")
            for s in v:
                self.position(s)
        self._vertices = frozenset(verts)
        self._adjacent = frozenset(frozenset(p) for v in verts for p in combinations(sorted(v), 2))
        table: Dict[Pair, Label] = {}
        for pair in self._adjacent:
            if pair not in labels:
                raise MissingLabel(f"ridge {self.pair_name(pair)} has no label")
            table[pair] = parse_label(labels[pair])
        self._labels = table
        self.construction = construction

    # access

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def facets(self) -> Tuple[str, ...]:
        return self._facets

    @property
    def vertices(self) -> FrozenSet[Vertex]:
        return self._vertices

    @property
    def labels(self) -> Dict[Pair, Label]:
        return dict(self._labels)

    def position(self, s: str) -> int:
        try:
            return self._pos[s]
        except KeyError:
            raise UnknownFacet(f"unknown facet {s!r}") from None

    def sort_facets(self, subset: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(subset, key=self.position))

    def pair_name(self, pair: Iterable[str]) -> str:
        return ",".join(self.sort_facets(pair))

    def sorted_vertices(self) -> List[Tuple[str, ...]]:
        """Vertices as facet tuples in a deterministic order."""
        return sorted((self.sort_facets(v) for v in self._vertices), key=lambda t: [self._pos[s] for s in t])

    def vertex(self, v: Iterable[str]) -> Vertex:
        vv = as_vertex(v)
        if vv not in self._vertices:
            raise UnknownVertex(f"{sorted(vv)} is not a vertex")
        return vv

    def is_adjacent(self, s: str, t: str) -> bool:
        return frozenset((s, t)) in self._adjacent

    def label(self, s: str, t: str) -> Label:
        """Ridge label, or inf for facets that do not meet."""
        if s == t:
            return 1
        return self._labels.get(frozenset((s, t)), INF)

    @property
    def e_plus(self) -> int:
        return sum(1 for m in self._labels.values() if m != 2)

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        """Pairs of vertices sharing d - 1 facets."""
        verts = self.sorted_vertices()
        out = []
        for a, b in combinations(verts, 2):
            if len(set(a) & set(b)) == self._dim - 1:
                out.append((frozenset(a), frozenset(b)))
        return out

    def facet_graph(self) -> nx.Graph:
        """Facets with an edge for every ridge, carrying its label."""
        g = nx.Graph()
        g.add_nodes_from(self._facets)
        for pair, m in self._labels.items():
            s, t = self.sort_facets(pair)
            g.add_edge(s, t, label=m)
        return g

    def neighbors(self, s: str) -> Tuple[str, ...]:
        self.position(s)
        return self.sort_facets(t for t in self._facets if t != s and self.is_adjacent(s, t))

    # Coxeter data

    def coxeter_matrix(self) -> CoxeterMatrix:
        """W_G: ridge labels, inf for every pair of facets that do not meet."""
        n = len(self._facets)
        table = [[1 if i == j else self.label(self._facets[i], self._facets[j]) for j in range(n)] for i in range(n)]
        return CoxeterMatrix(self._facets, table)

    def finite_diagram(self) -> CoxeterMatrix:
        """Ridge labels only; non-meeting pairs read as 2."""
        pairs = {tuple(self.sort_facets(p)): m for p, m in self._labels.items()}
        return CoxeterMatrix.from_labels(self._facets, pairs)

    def group_class(self) -> GroupClass:
        return classify(self.coxeter_matrix(), require_irreducible=False)

    def is_irreducible(self) -> bool:
        return self.coxeter_matrix().is_connected()

    # comparisons and export

    def key(self) -> Tuple:
        return (
            self._dim,
            self._facets,
            tuple(self.sorted_vertices()),
            tuple(sorted((self.sort_facets(p), label_to_json(m)) for p, m in self._labels.items())),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledPolytope):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"LabeledPolytope(dim={self._dim}, facets={list(self._facets)}, vertices={len(self._vertices)})"

    def to_json(self) -> Dict:
        return {
            "dim": self._dim,
            "facets": list(self._facets),
            "vertices": [list(v) for v in self.sorted_vertices()],
            "labels": {self.pair_name(p): label_to_json(m) for p, m in sorted(
                self._labels.items(), key=lambda kv: [self._pos[s] for s in self.sort_facets(kv[0])]
            )},
            "e_plus": self.e_plus,
        }


@dataclass(frozen=True)
class VertexLink:
    """The (d-1)-polytope around a vertex with the back-map to the facets of G."""

    polytope: LabeledPolytope
    back_map: Dict[str, str] = field(default_factory=dict)


def _pair_labels(index: Sequence[str], labels: Mapping) -> Dict[Pair, Label]:
    table: Dict[Pair, Label] = {}
    for key, m in labels.items():
        if isinstance(key, str):
            s, t = (p.strip() for p in key.split(","))
        else:
            s, t = key
        if s not in index or t not in index:
            raise UnknownFacet(f"label given for unknown pair ({s}, {t})")
        table[frozenset((s, t))] = parse_label(m)
    return table


def simplex(dim: int, labels: Mapping, facets: Optional[Sequence[str]] = None) -> LabeledPolytope:
    """
    The labeled d-simplex on facets F1..F(d+1) (or the given names).

    ``labels`` maps pairs, as tuples or "F1,F2" strings, to labels and must
    cover all C(d+1, 2) ridges.
    """
    if dim < 2:
        raise BadDimension(f"simplices need dimension >= 2, got {dim}")
    names = list(facets) if facets is not None else [f"F{i}" for i in range(1, dim + 2)]
    if len(names) != dim + 1:
        raise BadDimension(f"a {dim}-simplex has {dim + 1} facets, got {len(names)}")
    table = _pair_labels(names, labels)
    missing = [f"{s},{t}" for s, t in combinations(names, 2) if frozenset((s, t)) not in table]
    if missing:
        raise MissingLabel(f"missing labels for {missing}")
    vertices = [frozenset(names) - {s} for s in names]
    step = SimplexStep(dim, tuple(sorted(((s, t), table[frozenset((s, t))]) for s, t in combinations(names, 2))))
    return LabeledPolytope(dim, names, vertices, table, step)


def fresh_facet_name(existing: Iterable[str], prefix: str = "T") -> str:
    taken = set(existing)
    k = 1
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}"


def truncate(G: LabeledPolytope, v: Iterable[str], name: Optional[str] = None) -> LabeledPolytope:
    """
    Cut off vertex v; the new facet meets exactly the facets of v, at right angles.
    """
    vv = G.vertex(v)
    t = name or fresh_facet_name(G.facets)
    if t in G.facets:
        raise ValidationError(f"facet name {t!r} already used")
    vertices = set(G.vertices) - {vv}
    vertices.update((vv - {s}) | {t} for s in vv)
    labels = G.labels
    for s in vv:
        labels[frozenset((s, t))] = 2
    logger.debug("truncated %s at %s as %s", G, sorted(vv), t)
    return LabeledPolytope(G.dim, G.facets + (t,), vertices, labels, TruncateStep(G, vv, t))


def vertex_link(G: LabeledPolytope, v: Iterable[str]) -> VertexLink:
    """
    The link of a vertex of a simple polytope: the (d-1)-simplex on S_v with
    inherited labels. A 2-polytope links to a segment on two facets.
    """
    vv = G.vertex(v)
    names = G.sort_facets(vv)
    labels = {frozenset(p): G.label(*p) for p in combinations(names, 2)}
    verts = [frozenset(names) - {s} for s in names]
    link = LabeledPolytope(G.dim - 1, names, verts, labels, None)
    return VertexLink(link, {s: s for s in names})


def vertex_group(G: LabeledPolytope, v: Iterable[str]) -> CoxeterMatrix:
    """Standard subgroup W_v of a vertex."""
    return G.coxeter_matrix().restrict(G.vertex(v))


@dataclass(frozen=True)
class Perfection:
    perfect: bool
    two_perfect: bool
    non_spherical_vertices: Tuple[Tuple[str, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "perfect": self.perfect,
            "two_perfect": self.two_perfect,
            "non_spherical_vertices": [list(v) for v in self.non_spherical_vertices],
        }


def perfection(G: LabeledPolytope) -> Perfection:
    """
    Perfect when every vertex group is spherical, 2-perfect when every
    edge group is.
    """
    W = G.coxeter_matrix()
    bad_vertices = tuple(v for v in G.sorted_vertices() if not is_spherical(W.restrict(v)))
    edge_facets = {frozenset(a & b) for a, b in G.edges()}
    two_perfect = all(is_spherical(W.restrict(f)) for f in edge_facets)
    return Perfection(perfect=not bad_vertices, two_perfect=two_perfect, non_spherical_vertices=bad_vertices)


def incidence_graph(G: LabeledPolytope) -> nx.Graph:
    """Facet/vertex incidence graph with labeled facet-facet ridges."""
    g = nx.Graph()
    for s in G.facets:
        g.add_node(("facet", s), kind="facet")
    for i, v in enumerate(G.sorted_vertices()):
        g.add_node(("vertex", i), kind="vertex")
        for s in v:
            g.add_edge(("facet", s), ("vertex", i), label=0)
    for pair, m in G.labels.items():
        s, t = G.sort_facets(pair)
        g.add_edge(("facet", s), ("facet", t), label=label_to_json(m))
    return g


def _matcher(G1: LabeledPolytope, G2: LabeledPolytope) -> nx.algorithms.isomorphism.GraphMatcher:
    return nx.algorithms.isomorphism.GraphMatcher(
        incidence_graph(G1),
        incidence_graph(G2),
        node_match=lambda a, b: a["kind"] == b["kind"],
        edge_match=lambda a, b: a["label"] == b["label"],
    )


def facet_isomorphisms(G1: LabeledPolytope, G2: LabeledPolytope):
    """Label-preserving combinatorial isomorphisms as facet maps."""
    if G1.dim != G2.dim or len(G1.facets) != len(G2.facets) or len(G1.vertices) != len(G2.vertices):
        return
    seen = set()
    for mapping in _matcher(G1, G2).isomorphisms_iter():
        facet_map = {a[1]: b[1] for a, b in mapping.items() if a[0] == "facet"}
        key = tuple(sorted(facet_map.items()))
        if key not in seen:
            seen.add(key)
            yield facet_map


def is_isomorphic(G1: LabeledPolytope, G2: LabeledPolytope) -> bool:
    return next(facet_isomorphisms(G1, G2), None) is not None
