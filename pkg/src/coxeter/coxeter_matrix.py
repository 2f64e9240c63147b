"""
Coxeter matrices over named index sets and their diagrams.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import networkx as nx

from src.arithmetic.scalar import INF, Label, label_to_json, parse_label
from src.utils.errors import UnknownFacet, ValidationError


@dataclass(frozen=True)
class Violation:
    """One failed axiom, located at an index pair (or a single index)."""

    where: Tuple[str, ...]
    message: str


class CoxeterMatrix:
    """
    Symmetric table of labels M_st indexed by facet names.

    The constructor stores whatever it is given so that invalid tables can be
    reported by :func:`validate_coxeter`; use :meth:`from_labels` to build a
    matrix from the upper-triangle pairs.
    """

    __slots__ = ("_index", "_pos", "_table")

    def __init__(self, index: Sequence[str], table: Sequence[Sequence[Label]]):
        self._index = tuple(str(s) for s in index)
        if len(set(self._index)) != len(self._index):
            raise ValidationError(f"duplicate facet names in {self._index}")
        rows = tuple(tuple(parse_label(x) for x in row) for row in table)
        if len(rows) != len(self._index) or any(len(r) != len(self._index) for r in rows):
            raise ValidationError("Coxeter table shape does not match the index")
        self._pos = {s: i for i, s in enumerate(self._index)}
        self._table = rows

    @classmethod
    def from_labels(
        cls, index: Sequence[str], labels: Mapping[Tuple[str, str], Label], default: Label = 2
    ) -> "CoxeterMatrix":
        """Build from a map of unordered pairs; unlisted pairs get ``default``."""
        index = [str(s) for s in index]
        pos = {s: i for i, s in enumerate(index)}
        n = len(index)
        table = [[1 if i == j else default for j in range(n)] for i in range(n)]
        for (s, t), m in labels.items():
            if s not in pos or t not in pos:
                raise UnknownFacet(f"label given for unknown pair ({s}, {t})")
            i, j = pos[s], pos[t]
            table[i][j] = table[j][i] = parse_label(m)
        return cls(index, table)

    # access

    @property
    def index(self) -> Tuple[str, ...]:
        return self._index

    @property
    def size(self) -> int:
        return len(self._index)

    def __len__(self) -> int:
        return len(self._index)

    def position(self, s: str) -> int:
        try:
            return self._pos[s]
        except KeyError:
            raise UnknownFacet(f"unknown facet {s!r}") from None

    def __getitem__(self, pair: Tuple[str, str]) -> Label:
        s, t = pair
        return self._table[self.position(s)][self.position(t)]

    def label(self, s: str, t: str) -> Label:
        return self[s, t]

    def labels(self) -> Dict[Tuple[str, str], Label]:
        """Upper-triangle labels in index order."""
        return {
            (s, t): self._table[i][j]
            for (i, s), (j, t) in combinations(enumerate(self._index), 2)
        }

    @property
    def table(self) -> Tuple[Tuple[Label, ...], ...]:
        return self._table

    def key(self) -> Tuple[Tuple[Label, ...], ...]:
        """Hashable description that ignores facet names."""
        return self._table

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        return self._index == other._index and self._table == other._table

    def __hash__(self) -> int:
        return hash((self._index, self._table))

    def __repr__(self) -> str:
        return f"CoxeterMatrix({list(self._index)}, {self.to_json()['labels']})"

    # structure

    def diagram(self) -> nx.Graph:
        """Coxeter diagram: an edge for every pair with label > 2."""
        g = nx.Graph()
        g.add_nodes_from(self._index)
        for (s, t), m in self.labels().items():
            if m != 1 and m > 2:
                g.add_edge(s, t, label=m)
        return g

    def is_connected(self) -> bool:
        if self.size == 0:
            return True
        return nx.is_connected(self.diagram())

    def components(self) -> List[Tuple[str, ...]]:
        """Connected components of the diagram, each in index order."""
        comps = []
        for comp in nx.connected_components(self.diagram()):
            comps.append(tuple(s for s in self._index if s in comp))
        return sorted(comps, key=lambda c: self.position(c[0]))

    def restrict(self, subset: Iterable[str]) -> "CoxeterMatrix":
        wanted = set(subset)
        for s in wanted:
            self.position(s)
        keep = [s for s in self._index if s in wanted]
        idx = [self._pos[s] for s in keep]
        return CoxeterMatrix(keep, [[self._table[i][j] for j in idx] for i in idx])

    def relabel(self, mapping: Mapping[str, str]) -> "CoxeterMatrix":
        return CoxeterMatrix([mapping.get(s, s) for s in self._index], self._table)

    # export

    def to_dot(self, name: str = "coxeter") -> str:
        """DOT text of the diagram; labels shown only when greater than 3."""
        g = self.diagram()
        lines = [f"graph {name} {{"]
        for s in self._index:
            lines.append(f'  "{s}";')
        for s, t, data in sorted(g.edges(data=True), key=lambda e: (self.position(e[0]), self.position(e[1]))):
            a, b = sorted((s, t), key=self.position)
            m = data["label"]
            if m == 3:
                lines.append(f'  "{a}" -- "{b}";')
            else:
                lines.append(f'  "{a}" -- "{b}" [label="{label_to_json(m)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> Dict:
        return {
            "index": list(self._index),
            "labels": {f"{s},{t}": label_to_json(m) for (s, t), m in self.labels().items() if m != 2},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoxeterMatrix":
        """Pair labels {"s,t": m}, or a full "table" that is stored unchecked."""
        index = list(data["index"])
        if "table" in data:
            return cls(index, data["table"])
        pairs = {}
        for key, m in data.get("labels", {}).items():
            s, t = (p.strip() for p in key.split(","))
            pairs[(s, t)] = m
        return cls.from_labels(index, pairs)


def validate_coxeter(M: CoxeterMatrix) -> List[Violation]:
    """All violations of M_ss = 1 and M_st = M_ts >= 2; empty list when valid."""
    violations: List[Violation] = []
    table = M.table
    for i, s in enumerate(M.index):
        if table[i][i] != 1:
            violations.append(Violation((s, s), f"diagonal entry {table[i][i]} != 1"))
        for j in range(i + 1, M.size):
            t = M.index[j]
            if table[i][j] != table[j][i]:
                violations.append(Violation((s, t), "table is not symmetric"))
            for m in (table[i][j], table[j][i]):
                if m != INF and m < 2:
                    violations.append(Violation((s, t), f"off-diagonal label {m} < 2"))
                    break
    return violations


def standard_subgroup(M: CoxeterMatrix, subset: Iterable[str]) -> CoxeterMatrix:
    """Restriction of M to ``subset``; raises UnknownFacet for foreign names."""
    return M.restrict(subset)

