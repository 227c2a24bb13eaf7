"""
Tests for the pydantic data models.
"""
import json

import pytest
from pydantic import ValidationError

from src.schema.models import (
    AlphaKind,
    AlphaSpec,
    ClusterHeads,
    Graph,
    GraphInstance,
    PatternClassKind,
    PiKind,
    PiSpec,
    SetFamily,
    SolveReport,
    Universe,
    make_element_set,
)


def test_make_element_set_sorts_and_dedups():
    assert make_element_set([3, 1, 3, 2]) == (1, 2, 3)


def test_set_family_canonicalizes_members():
    family = SetFamily(members=[[2, 1, 0], [4, 3]], r=3)
    assert family.members == ((0, 1, 2), (3, 4))
    assert len(family) == 2


def test_set_family_rejects_oversize_set():
    with pytest.raises(ValidationError, match="exceeds r"):
        SetFamily(members=[[0, 1, 2, 3]], r=3)


def test_set_family_rejects_duplicates_after_sorting():
    with pytest.raises(ValidationError, match="duplicate sets"):
        SetFamily(members=[[0, 1], [1, 0]], r=2)


def test_set_family_rejects_repeated_element_and_empty_set():
    with pytest.raises(ValidationError, match="repeats an element"):
        SetFamily(members=[[0, 0]], r=2)
    with pytest.raises(ValidationError, match="empty"):
        SetFamily(members=[[]], r=2)


def test_universe_checks_annotation_lengths():
    with pytest.raises(ValidationError, match="weights has 2 entries"):
        Universe(size=3, weights=[1, 1])
    with pytest.raises(ValidationError, match="non-negative"):
        Universe(size=2, weights=[1, -1])
    with pytest.raises(ValidationError, match="unique"):
        Universe(size=2, names=["a", "a"])


def test_universe_rejects_broken_triangle_inequality():
    distances = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(ValidationError, match="triangle inequality"):
        Universe(size=3, distances=distances)


def test_universe_rejects_asymmetric_and_nonzero_diagonal():
    with pytest.raises(ValidationError, match="symmetric"):
        Universe(size=2, distances=[[0, 1], [2, 0]])
    with pytest.raises(ValidationError, match="dist\\(u,u\\)"):
        Universe(size=2, distances=[[1, 1], [1, 0]])


def test_universe_accepts_path_metric(path_metric):
    universe = Universe(size=5, distances=path_metric)
    assert universe.distance_matrix()[0, 4] == 4


def test_graph_edges_are_canonical():
    graph = Graph(n=3, edges=[[2, 1], [0, 1]])
    assert graph.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("edges,message", [
    ([[0, 0]], "self-loop"),
    ([[0, 1], [1, 0]], "parallel edge"),
    ([[0, 3]], "out of range"),
])
def test_graph_rejects_bad_edges(edges, message):
    with pytest.raises(ValidationError, match=message):
        Graph(n=3, edges=edges)


def test_alpha_spec_class_alias_and_dump():
    spec = AlphaSpec.model_validate({"kind": "pattern", "class": "clique"})
    assert spec.pattern_class == PatternClassKind.CLIQUE
    assert spec.to_json_dict() == {"kind": "pattern", "class": "clique"}


def test_alpha_spec_rejects_unknown_kind_and_fields():
    with pytest.raises(ValidationError):
        AlphaSpec.model_validate({"kind": "percentage", "t": 1})
    with pytest.raises(ValidationError):
        AlphaSpec.model_validate({"kind": "size", "t": 1, "bogus": 2})


def test_alpha_spec_requirements():
    assert AlphaSpec(kind=AlphaKind.SIZE, t=1).requirements() == set()
    assert AlphaSpec(kind=AlphaKind.WEIGHT, w_t=1).requirements() == {"weights"}
    assert AlphaSpec(kind=AlphaKind.DISTANCE, d_t=1).requirements() == {"graph"}
    conjunction = AlphaSpec.model_validate({
        "kind": "conjunction",
        "parts": [{"kind": "metric", "d_t": 1}, {"kind": "property"}],
    })
    assert conjunction.requirements() == {"distances", "properties"}


def test_pi_spec_parameter_checks():
    with pytest.raises(ValidationError, match="needs 't'"):
        PiSpec(kind=PiKind.MIN_EDGES)
    with pytest.raises(ValidationError, match="needs 'c'"):
        PiSpec(kind=PiKind.MIN_DEGREE_OFFSET)
    with pytest.raises(ValidationError, match="non-empty"):
        PiSpec(kind=PiKind.FAMILY)


def test_graph_instance_rejects_pattern_larger_than_r():
    with pytest.raises(ValidationError, match="exceeds r"):
        GraphInstance(
            graph=Graph(n=4),
            r=2,
            k=1,
            pi={"kind": "family", "family": [{"vertices": 3, "edges": [[0, 1]]}]},
            alpha={"kind": "size", "t": 0},
        )


def test_graph_instance_requires_weights_for_weight_alpha():
    with pytest.raises(ValidationError, match="missing annotation 'weights'"):
        GraphInstance(graph=Graph(n=2), r=2, k=1, pi={"kind": "clique"}, alpha={"kind": "weight", "w_t": 1})


def test_cluster_heads_values():
    heads = ClusterHeads(heads=((0, 1), (3,)))
    assert heads.values == frozenset({0, 1, 3})
    assert len(heads) == 2


def test_solve_report_json_omits_unset_optionals():
    report = SolveReport(solution=[0, 1], nodes_expanded=3)
    data = json.loads(report.to_json())
    assert data["solution"] == [0, 1]
    assert data["budget_exhausted"] is False
    assert "head_count" not in data
    assert "trace" not in data
    assert report.outcome.chosen == (0, 1)


def test_solve_report_without_solution():
    report = SolveReport(nodes_expanded=21, root_children=6)
    assert report.outcome is None
    data = json.loads(report.to_json())
    assert data["solution"] is None
    assert data["nodes_expanded"] == 21
    assert "head_count" not in data
    assert "trace" not in data


def test_solve_report_keeps_pch_fields():
    data = json.loads(SolveReport(head_count=2, trace=[]).to_json())
    assert data["head_count"] == 2
    assert data["trace"] == []
