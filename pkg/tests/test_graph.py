"""
Tests for graph helpers, Π-subgraph enumeration and the graph reduction.
"""
import random
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from src.graph.model import graph_distance_matrix, parse_edge_list
from src.graph.pi import check_pi, enumerate_pi_subgraphs
from src.graph.reduction import (
    brute_force_graph_packing,
    graph_universe,
    parse_graph_instance,
    reduce_to_set_instance,
    serialize_graph_instance,
)
from src.schema.models import Graph, InstanceFormatError, PiKind, PiSpec
from src.solver.bst import solve
from src.tools.generator import random_graph
from src.utils.isomorphism import are_isomorphic, pattern_edge_set

K3 = {"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}
K4 = Graph(n=4, edges=list(combinations(range(4), 2)))
PATH3 = Graph(n=3, edges=[[0, 1], [1, 2]])


class TestDistances:
    """Tests for graph_distance_matrix."""

    def test_path(self):
        assert graph_distance_matrix(PATH3)[0, 2] == 2

    def test_disconnected_pair_is_infinite(self):
        distances = graph_distance_matrix(Graph(n=2))
        assert np.isinf(distances[0, 1])
        assert distances[1, 1] == 0

    def test_single_vertex(self):
        assert graph_distance_matrix(Graph(n=1))[0, 0] == 0


class TestEdgeList:
    """Tests for the plain edge-list format."""

    def test_parse(self):
        graph = parse_edge_list("# path\n3 2\n0 1\n2 1\n")
        assert graph == PATH3

    @pytest.mark.parametrize("text,message", [
        ("", "empty edge list"),
        ("3 2\n0 1\n", "announces 2 edges but 1 follow"),
        ("3\n", "header must be 'n m'"),
        ("3 1\n0 x\n", "integers only"),
        ("3 1\n1 1\n", "invalid edge list"),
    ])
    def test_errors(self, text, message):
        with pytest.raises(InstanceFormatError, match=message):
            parse_edge_list(text)


class TestCheckPi:
    """Tests for the community property check."""

    def test_triangle_is_clique(self):
        assert check_pi(K4, (0, 1, 2), PiSpec(kind=PiKind.CLIQUE))

    def test_path_meets_min_edges(self):
        assert check_pi(PATH3, (0, 1, 2), PiSpec(kind=PiKind.MIN_EDGES, t=2))
        assert not check_pi(PATH3, (0, 1, 2), PiSpec(kind=PiKind.MIN_EDGES, t=3))

    def test_path_fails_min_degree_offset(self):
        assert not check_pi(PATH3, (0, 1, 2), PiSpec(kind=PiKind.MIN_DEGREE_OFFSET, c=1))
        assert check_pi(PATH3, (0, 1, 2), PiSpec(kind=PiKind.MIN_DEGREE_OFFSET, c=2))

    def test_family_membership(self):
        pi = PiSpec.model_validate({"kind": "family", "family": [K3]})
        assert check_pi(K4, (1, 2, 3), pi)
        assert not check_pi(PATH3, (0, 1, 2), pi)

    def test_max_boundary_edges(self):
        graph = Graph(n=4, edges=[[0, 1], [1, 2], [2, 3]])
        capped = PiSpec(kind=PiKind.MIN_EDGES, t=1, max_boundary_edges=1)
        assert check_pi(graph, (0, 1), capped)
        assert not check_pi(graph, (1, 2), capped)


class TestEnumeration:
    """Tests for enumerate_pi_subgraphs."""

    def test_k4_cliques(self):
        family = enumerate_pi_subgraphs(K4, PiSpec(kind=PiKind.CLIQUE), 3)
        assert len(family) == 14
        assert family.members[:4] == ((0,), (1,), (2,), (3,))

    def test_min_size(self):
        assert len(enumerate_pi_subgraphs(K4, PiSpec(kind=PiKind.CLIQUE), 3, min_size=2)) == 10

    def test_edgeless_graph(self):
        family = enumerate_pi_subgraphs(Graph(n=5), PiSpec(kind=PiKind.CLIQUE), 3)
        assert family.members == tuple((v,) for v in range(5))

    def test_triangle_family_matches_direct_enumeration(self):
        rng = random.Random(5)
        pi = PiSpec.model_validate({"kind": "family", "family": [K3]})
        for _ in range(10):
            graph = random_graph(rng, 7, 0.5)
            nx_graph = nx.Graph(list(graph.edges))
            triangles = sorted(
                tuple(sorted(c)) for c in combinations(range(7), 3)
                if all(nx_graph.has_edge(u, v) for u, v in combinations(c, 2))
            )
            assert list(enumerate_pi_subgraphs(graph, pi, 3).members) == triangles


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(1, 5)
        a = random_graph(rng, n, 0.5)
        b = random_graph(rng, n, 0.5)
        nx_a, nx_b = nx.Graph(), nx.Graph()
        nx_a.add_nodes_from(range(n))
        nx_b.add_nodes_from(range(n))
        nx_a.add_edges_from(a.edges)
        nx_b.add_edges_from(b.edges)
        expected = nx.is_isomorphic(nx_a, nx_b)
        assert are_isomorphic(n, pattern_edge_set(a.edges), n, pattern_edge_set(b.edges)) == expected


class TestReduction:
    """Tests for the Π-packing to set-packing reduction."""

    def test_vertex_sharing_triangles_are_packable(self, vertex_sharing_triangles):
        gi = parse_graph_instance(vertex_sharing_triangles)
        instance = reduce_to_set_instance(gi)
        assert instance.family.members == ((0, 1, 2), (2, 3, 4))
        report = solve(instance)
        assert report.solution is not None
        assert brute_force_graph_packing(gi) == [(0, 1, 2), (2, 3, 4)]

    def test_edge_sharing_triangles_are_not(self, edge_sharing_triangles):
        gi = parse_graph_instance(edge_sharing_triangles)
        assert solve(reduce_to_set_instance(gi)).solution is None
        assert brute_force_graph_packing(gi) is None

    def test_empty_graph_singletons(self):
        gi = parse_graph_instance({
            "vertices": 3, "r": 3, "k": 1, "pi": {"kind": "clique"}, "alpha": {"kind": "size", "t": 0},
        })
        instance = reduce_to_set_instance(gi)
        assert instance.family.members == ((0,), (1,), (2,))
        assert solve(instance).solution == [0]

    def test_min_pi_size_drops_small_sets(self, vertex_sharing_triangles):
        payload = dict(vertex_sharing_triangles, pi={"kind": "clique"})
        gi = parse_graph_instance(payload)
        assert len(reduce_to_set_instance(gi).family) == 5 + 6 + 2
        assert len(reduce_to_set_instance(gi, min_pi_size=3).family) == 2

    def test_graph_travels_with_the_reduction(self, vertex_sharing_triangles):
        payload = dict(vertex_sharing_triangles, alpha={"kind": "dense_overlap", "c": 0})
        instance = reduce_to_set_instance(parse_graph_instance(payload))
        assert instance.graph is not None
        assert instance.graph.n == 5

    def test_metric_alpha_gets_graph_distances(self, vertex_sharing_triangles):
        payload = dict(vertex_sharing_triangles, alpha={"kind": "metric", "d_t": 1})
        universe = graph_universe(parse_graph_instance(payload))
        assert universe.distances[0][4] == 2.0

    def test_round_trip(self, vertex_sharing_triangles):
        gi = parse_graph_instance(vertex_sharing_triangles)
        assert parse_graph_instance(serialize_graph_instance(gi)) == gi

    @pytest.mark.parametrize("change,message", [
        ({"bogus": 1}, "unknown graph instance field"),
        ({"edges": [[0, 9]]}, "out of range"),
        ({"alpha": {"kind": "weight", "w_t": 1}}, "missing annotation 'weights'"),
        ({"alpha": {"kind": "distance", "d_t": 0}}, "needs d_t > 0"),
    ])
    def test_parse_errors(self, vertex_sharing_triangles, change, message):
        with pytest.raises(InstanceFormatError, match=message):
            parse_graph_instance(dict(vertex_sharing_triangles, **change))

    def test_missing_pi(self, vertex_sharing_triangles):
        payload = dict(vertex_sharing_triangles)
        del payload["pi"]
        with pytest.raises(InstanceFormatError, match="missing graph instance field"):
            parse_graph_instance(payload)
