"""
Tests for instance parsing, containment queries and solution validation.
"""
import json
import random
from itertools import combinations

import pytest

from src.core.family import FamilyIndex, sets_containing
from src.core.instance import parse_instance, serialize_instance
from src.core.validation import validate_solution
from src.schema.models import InstanceFormatError, SetFamily, Solution

MINIMAL = {"universe": 5, "r": 3, "k": 1, "sets": [[0, 1, 2]], "alpha": {"kind": "size", "t": 1}}


def _payload(**changes):
    payload = dict(MINIMAL)
    payload.update(changes)
    return payload


class TestParseInstance:
    """Tests for parse_instance."""

    def test_minimal_instance(self):
        instance = parse_instance(json.dumps(MINIMAL))
        assert len(instance.family) == 1
        assert instance.universe.size == 5
        assert instance.r == 3
        assert instance.k == 1

    def test_accepts_bytes_and_dicts(self):
        assert parse_instance(json.dumps(MINIMAL).encode("utf-8")) == parse_instance(MINIMAL)

    def test_set_exceeding_r(self):
        with pytest.raises(InstanceFormatError, match="exceeds r"):
            parse_instance(_payload(sets=[[0, 1, 2, 3]]))

    def test_sets_are_canonicalized(self):
        instance = parse_instance(_payload(sets=[[2, 1, 0]]))
        assert instance.family.members == ((0, 1, 2),)

    def test_duplicate_sets_rejected(self):
        with pytest.raises(InstanceFormatError, match="duplicate sets"):
            parse_instance(_payload(sets=[[0, 1], [1, 0]]))

    def test_element_out_of_range(self):
        with pytest.raises(InstanceFormatError, match="out of range"):
            parse_instance(_payload(sets=[[0, 7]]))

    def test_malformed_json(self):
        with pytest.raises(InstanceFormatError, match="malformed JSON"):
            parse_instance('{"universe": 5,')

    def test_non_object(self):
        with pytest.raises(InstanceFormatError, match="JSON object"):
            parse_instance("[1, 2, 3]")

    def test_unknown_and_missing_fields(self):
        with pytest.raises(InstanceFormatError, match="unknown instance field"):
            parse_instance(_payload(bogus=1))
        payload = dict(MINIMAL)
        del payload["alpha"]
        with pytest.raises(InstanceFormatError, match="missing instance field\\(s\\): alpha"):
            parse_instance(payload)

    def test_weight_alpha_without_weights(self):
        with pytest.raises(InstanceFormatError, match="missing annotation 'weights'"):
            parse_instance(_payload(alpha={"kind": "weight", "w_t": 1}))

    def test_graph_alpha_without_edges(self):
        with pytest.raises(InstanceFormatError, match="requires graph context"):
            parse_instance(_payload(alpha={"kind": "dense_overlap", "c": 0}))

    def test_bad_alpha_parameter_is_a_format_error(self):
        with pytest.raises(InstanceFormatError, match="needs parameter 't'"):
            parse_instance(_payload(alpha={"kind": "size"}))

    def test_names_resolve_to_indices(self):
        instance = parse_instance(_payload(
            universe=3,
            names=["a", "b", "c"],
            sets=[["a", "b"], ["c"]],
            cluster_heads=[["c"]],
        ))
        assert instance.family.members == ((0, 1), (2,))
        assert instance.cluster_heads == ((2,),)

    def test_unknown_name(self):
        with pytest.raises(InstanceFormatError, match="unknown element 'z'"):
            parse_instance(_payload(universe=3, names=["a", "b", "c"], sets=[["a", "z"]]))

    def test_boolean_element(self):
        with pytest.raises(InstanceFormatError, match="boolean"):
            parse_instance(_payload(sets=[[True, 1]]))

    def test_edges_become_graph_context(self):
        instance = parse_instance(_payload(edges=[[1, 0], [1, 2]], alpha={"kind": "dense_overlap", "c": 0}))
        assert instance.graph.edges == ((0, 1), (1, 2))
        assert instance.graph.n == 5

    def test_round_trip(self):
        payload = _payload(
            sets=[[2, 1, 0], [4, 3]],
            weights=[1, 1, 1, 1, 1],
            alpha={"kind": "weight", "w_t": 1},
            cluster_heads=[[0]],
        )
        instance = parse_instance(payload)
        text = serialize_instance(instance)
        assert parse_instance(text) == instance
        assert serialize_instance(parse_instance(text)) == text
        assert json.loads(text)["sets"] == [[0, 1, 2], [3, 4]]

    def test_serialized_key_order(self):
        payload = _payload(names=["a", "b", "c", "d", "e"], cluster_heads=[[0]])
        keys = list(json.loads(serialize_instance(parse_instance(payload))))
        assert keys == ["universe", "r", "k", "sets", "names", "alpha", "cluster_heads"]


class TestSetsContaining:
    """Tests for containment lookups."""

    FAMILY = SetFamily(members=[[0, 1, 2], [1, 2, 3], [3, 4]], r=3)

    @pytest.mark.parametrize("s,expected", [
        ({1, 2}, [0, 1]),
        ({5}, []),
        ({3}, [1, 2]),
        (set(), [0, 1, 2]),
    ])
    def test_examples(self, s, expected):
        assert sets_containing(self.FAMILY, s) == expected

    def test_matches_direct_filter_on_random_families(self):
        rng = random.Random(7)
        for n in range(1, 9):
            candidates = [c for size in range(1, 4) for c in combinations(range(n), size)]
            members = rng.sample(candidates, min(len(candidates), 12))
            family = SetFamily(members=members, r=3)
            index = FamilyIndex(family)
            for size in range(0, 3):
                for s in combinations(range(n), size):
                    expected = [i for i, member in enumerate(family.members) if set(s) <= set(member)]
                    assert index.sets_containing(s) == expected


class TestValidateSolution:
    """Tests for validate_solution."""

    def test_disjoint_sets_pass(self, instance_factory):
        instance = instance_factory([[0, 1, 2], [3, 4, 5]], k=2, alpha={"kind": "size", "t": 0})
        report = validate_solution(instance, Solution(chosen=(0, 1)))
        assert report.valid
        assert report.conflicting_pairs == []

    def test_conflicting_pair_reported(self, instance_factory):
        instance = instance_factory([[0, 1, 2], [1, 2, 3]], k=2, alpha={"kind": "size", "t": 1})
        report = validate_solution(instance, Solution(chosen=(0, 1)))
        assert not report.valid
        assert report.conflicting_pairs == [(0, 1)]

    def test_wrong_cardinality(self, instance_factory):
        instance = instance_factory([[0, 1, 2], [3, 4, 5]], k=2, alpha={"kind": "size", "t": 0})
        report = validate_solution(instance, Solution(chosen=(0,)))
        assert not report.valid
        assert any("wrong cardinality" in error for error in report.errors)

    def test_out_of_range_and_repeats(self, instance_factory):
        instance = instance_factory([[0, 1, 2], [3, 4, 5]], k=2, alpha={"kind": "size", "t": 0})
        assert "out of range" in validate_solution(instance, Solution(chosen=(0, 9))).errors[0]
        report = validate_solution(instance, Solution(chosen=(1, 1)))
        assert "solution repeats a set index" in report.errors

    def test_pch_shared_head_element(self, instance_factory):
        instance = instance_factory(
            [[0, 1, 2], [0, 3, 4]], k=2, alpha={"kind": "size", "t": 1}, cluster_heads=[[0]],
        )
        report = validate_solution(instance, Solution(chosen=(0, 1)))
        assert not report.valid
        assert "sets 0 and 1 share a cluster head element" in report.errors
        assert validate_solution(instance, Solution(chosen=(0, 1)), shared_heads=True).valid

    def test_pch_set_without_head(self, instance_factory):
        instance = instance_factory(
            [[0, 1, 2], [3, 4, 5]], k=2, alpha={"kind": "size", "t": 0}, cluster_heads=[[0]],
        )
        report = validate_solution(instance, Solution(chosen=(0, 1)))
        assert "set 1 contains no cluster head" in report.errors
        assert validate_solution(instance, Solution(chosen=(0, 1)), pch_mode=False).valid
