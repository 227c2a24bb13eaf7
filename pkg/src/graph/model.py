"""
Graph helpers: adjacency, induced subgraphs, distances, edge-list input.
"""
import logging
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx
import numpy as np

from ..schema.models import Graph, InstanceFormatError
from ..utils.isomorphism import EdgeSet, relabel

# Set up logger
logger = logging.getLogger(__name__)

Adjacency = Tuple[FrozenSet[int], ...]


def neighbor_sets(g: Graph) -> Adjacency:
    """Neighbourhood of every vertex, index-aligned."""
    neighbors = [set() for _ in range(g.n)]
    for u, v in g.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    return tuple(frozenset(ns) for ns in neighbors)


def induced_edge_count(adjacency: Adjacency, vertices: Iterable[int]) -> int:
    """|E(G[vertices])|."""
    chosen = frozenset(vertices)
    return sum(len(adjacency[v] & chosen) for v in chosen) // 2


def boundary_edge_count(adjacency: Adjacency, vertices: Iterable[int]) -> int:
    """Number of edges with exactly one endpoint in `vertices`."""
    chosen = frozenset(vertices)
    return sum(len(adjacency[v] - chosen) for v in chosen)


def induced_subgraph(adjacency: Adjacency, vertices: Iterable[int]) -> Tuple[int, EdgeSet]:
    """G[vertices] relabelled onto 0..|vertices|-1."""
    ordered = sorted(vertices)
    chosen = frozenset(ordered)
    edges = [(u, v) for u in ordered for v in adjacency[u] if v in chosen and u < v]
    return relabel(ordered, edges)


def to_networkx(g: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges)
    return nx_graph


def graph_distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; unreachable pairs are +inf."""
    distances = np.full((g.n, g.n), np.inf)
    lengths: Dict[int, Dict[int, int]] = dict(nx.all_pairs_shortest_path_length(to_networkx(g)))
    for source, reached in lengths.items():
        for target, hops in reached.items():
            distances[source, target] = hops
    return distances


def parse_edge_list(text: str) -> Graph:
    """Read the `n m` header plus m `u v` lines format."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise InstanceFormatError("empty edge list")
    try:
        header = [int(x) for x in rows[0]]
        body = [tuple(int(x) for x in row) for row in rows[1:]]
    except ValueError as e:
        raise InstanceFormatError(f"edge list must contain integers only: {e}")
    if len(header) != 2:
        raise InstanceFormatError("edge list header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise InstanceFormatError(f"edge list header announces {m} edges but {len(body)} follow")
    try:
        return Graph(n=n, edges=body)
    except ValueError as e:
        raise InstanceFormatError(f"invalid edge list: {e}")
