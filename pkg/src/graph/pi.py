"""
Community property checks and naive enumeration of induced Π-subgraphs.
"""
import logging
from itertools import combinations
from typing import Iterator, Optional

from ..schema.models import ElementSet, Graph, PiKind, PiSpec, SetFamily
from ..utils.isomorphism import are_isomorphic, pattern_edge_set
from .model import Adjacency, boundary_edge_count, induced_edge_count, induced_subgraph, neighbor_sets

# Set up logger
logger = logging.getLogger(__name__)


def check_pi(g: Graph, s: ElementSet, pi: PiSpec, adjacency: Optional[Adjacency] = None) -> bool:
    """True iff the subgraph of g induced by s satisfies pi."""
    adjacency = adjacency or neighbor_sets(g)
    size = len(s)
    if pi.kind == PiKind.CLIQUE:
        return induced_edge_count(adjacency, s) == size * (size - 1) // 2
    if pi.kind == PiKind.MIN_EDGES:
        if induced_edge_count(adjacency, s) < pi.t:
            return False
        if pi.max_boundary_edges is not None:
            return boundary_edge_count(adjacency, s) <= pi.max_boundary_edges
        return True
    if pi.kind == PiKind.MIN_DEGREE_OFFSET:
        members = frozenset(s)
        return all(len(adjacency[v] & members) >= size - pi.c for v in s)
    # PiKind.FAMILY
    n_sub, sub_edges = induced_subgraph(adjacency, s)
    return any(
        are_isomorphic(n_sub, sub_edges, pattern.vertices, pattern_edge_set(pattern.edges))
        for pattern in pi.family
    )


def iter_pi_subgraphs(g: Graph, pi: PiSpec, r: int, min_size: int = 1) -> Iterator[ElementSet]:
    """Vertex sets of Π-subgraphs, smallest first, lexicographic within a size."""
    adjacency = neighbor_sets(g)
    for size in range(max(min_size, 1), min(r, g.n) + 1):
        for s in combinations(range(g.n), size):
            if check_pi(g, s, pi, adjacency):
                yield s


def enumerate_pi_subgraphs(g: Graph, pi: PiSpec, r: int, min_size: int = 1) -> SetFamily:
    """
    All induced subgraphs with min_size..r vertices that satisfy pi.

    Args:
        g: Host graph
        pi: Community property
        r: Maximum order
        min_size: Minimum order, at least 1

    Returns:
        SetFamily of vertex sets in canonical order
    """
    members = list(iter_pi_subgraphs(g, pi, r, min_size))
    logger.info(f"Enumerated {len(members)} Π-subgraphs ({pi.kind.value}, r={r}) on {g.n} vertices")
    return SetFamily(members=members, r=r)
