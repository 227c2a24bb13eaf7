"""
Exhaustive isomorphism checks for graphs on a handful of vertices.

Overlap regions and Π-subgraphs have at most r vertices, so plain
permutation matching is enough. Cheap invariants (order, size, degree
sequence) are compared first to skip most permutation work.
"""
import itertools
import logging
from typing import FrozenSet, Iterable, List, Sequence, Tuple

# Set up logger
logger = logging.getLogger(__name__)

EdgeSet = FrozenSet[FrozenSet[int]]


def relabel(vertices: Sequence[int], edges: Iterable[Tuple[int, int]]) -> Tuple[int, EdgeSet]:
    """Relabel an induced subgraph onto 0..len(vertices)-1."""
    position = {v: i for i, v in enumerate(vertices)}
    relabelled = frozenset(
        frozenset((position[u], position[v]))
        for u, v in edges
        if u in position and v in position
    )
    return len(vertices), relabelled


def _degrees(n: int, edges: EdgeSet) -> List[int]:
    degree = [0] * n
    for edge in edges:
        for v in edge:
            degree[v] += 1
    return degree


def are_isomorphic(n_a: int, edges_a: EdgeSet, n_b: int, edges_b: EdgeSet) -> bool:
    """True iff the two labelled graphs are isomorphic."""
    if n_a != n_b or len(edges_a) != len(edges_b):
        return False
    degree_a = _degrees(n_a, edges_a)
    degree_b = _degrees(n_b, edges_b)
    if sorted(degree_a) != sorted(degree_b):
        return False
    for mapping in itertools.permutations(range(n_b)):
        if any(degree_a[v] != degree_b[mapping[v]] for v in range(n_a)):
            continue
        if all(frozenset(mapping[v] for v in edge) in edges_b for edge in edges_a):
            return True
    return False


def contains_induced(n_host: int, host_edges: EdgeSet, n_pattern: int, pattern_edges: EdgeSet) -> bool:
    """True iff some induced subgraph of the host is isomorphic to the pattern."""
    if n_pattern > n_host:
        return False
    for chosen in itertools.combinations(range(n_host), n_pattern):
        n_sub, sub_edges = relabel(chosen, (tuple(edge) for edge in host_edges))
        if are_isomorphic(n_sub, sub_edges, n_pattern, pattern_edges):
            return True
    return False


def pattern_edge_set(edges: Iterable[Tuple[int, int]]) -> EdgeSet:
    return frozenset(frozenset(edge) for edge in edges)
