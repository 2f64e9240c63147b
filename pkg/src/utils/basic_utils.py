"""
Basic utility functions: configuration loading and small graph helpers.
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import yaml

DEFAULT_CONFIG: Dict[str, Any] = {
    "tolerances": {
        "reproduction_eps": 1.0e-10,
        "relation_eps": 1.0e-8,
        "trace_eps": 1.0e-6,
        "approx_eps": 1.0e-9,
    },
    "limits": {
        "max_rank": 12,
        "max_dimension": 9,
        "max_cycles": 1_000_000,
        "interval_max_bits": 4096,
    },
    "enumeration": {
        "parallel": 1,
        "oracle": False,
        "quotient_symmetry": False,
    },
    "probe": {
        "word_count": 200,
        "max_word_length": 8,
    },
    "output": {
        "output_dir": "output",
        "format": "json",
    },
    "random_seed": 42,
}


def get_project_root() -> Path:
    """Get the absolute path to the project root directory."""
    return Path(__file__).parent.parent.parent.absolute()


def deep_update(base: Dict[str, Any], overrides: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Return a copy of ``base`` with nested ``overrides`` applied."""
    merged = copy.deepcopy(base)
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_update(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file on top of the built-in defaults.

    Args:
        config_path: Path to the YAML configuration file (relative to the
            project root or absolute). ``None`` returns the defaults.

    Returns:
        Dictionary containing the configuration

    Raises:
        FileNotFoundError: If config file doesn't exist
        yaml.YAMLError: If config file is invalid
    """
    if config_path is None:
        return copy.deepcopy(DEFAULT_CONFIG)
    if not os.path.isabs(config_path):
        config_path = os.path.join(get_project_root(), config_path)
    try:
        with open(config_path, "r") as f:
            loaded = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise FileNotFoundError(f"Configuration file not found at: {config_path}")
    except yaml.YAMLError as e:
        raise yaml.YAMLError(f"Error parsing YAML file: {str(e)}")
    return deep_update(DEFAULT_CONFIG, loaded)


class BasicUtils:
    """
    Graph helpers shared by the diagram, gauge and enumeration code.
    """

    @staticmethod
    def lex_spanning_tree(graph: nx.Graph, order: Sequence[Hashable]) -> List[Tuple[Hashable, Hashable]]:
        """
        Spanning forest by Kruskal over edges sorted lexicographically by
        the positions of their endpoints in ``order``.

        Every edge is returned as (u, v) with u before v in ``order``.
        """
        pos = {s: i for i, s in enumerate(order)}
        edges = sorted(
            (tuple(sorted((u, v), key=pos.__getitem__)) for u, v in graph.edges()),
            key=lambda e: (pos[e[0]], pos[e[1]]),
        )
        uf = nx.utils.UnionFind(order)
        tree = []
        for u, v in edges:
            if uf[u] != uf[v]:
                uf.union(u, v)
                tree.append((u, v))
        return tree

    @staticmethod
    def tree_path(tree_edges: Sequence[Tuple[Hashable, Hashable]], source: Hashable, target: Hashable) -> List[Hashable]:
        """Vertex sequence of the unique path from source to target in a tree."""
        tree = nx.Graph()
        tree.add_nodes_from((source, target))
        tree.add_edges_from(tree_edges)
        return nx.shortest_path(tree, source, target)

    @staticmethod
    def non_tree_edges(graph: nx.Graph, order: Sequence[Hashable], tree_edges) -> List[Tuple[Hashable, Hashable]]:
        pos = {s: i for i, s in enumerate(order)}
        tree = {frozenset(e) for e in tree_edges}
        rest = [
            tuple(sorted((u, v), key=pos.__getitem__))
            for u, v in graph.edges()
            if frozenset((u, v)) not in tree
        ]
        return sorted(rest, key=lambda e: (pos[e[0]], pos[e[1]]))
