"""
Tests for the brute-force reference solver.
"""
import pytest

from src.oracle.brute_force import brute_force_solve, iter_solutions
from src.schema.models import BudgetExhaustedError, OracleConfig, Solution

SIZE_0 = {"kind": "size", "t": 0}


def test_disjoint_pair(instance_factory):
    assert brute_force_solve(instance_factory([[0, 1], [2, 3]], k=2, alpha=SIZE_0)) == Solution(chosen=(0, 1))


def test_overlapping_pair(instance_factory):
    assert brute_force_solve(instance_factory([[0, 1], [1, 2]], k=2, alpha=SIZE_0)) is None


def test_solutions_in_lexicographic_order(instance_factory):
    instance = instance_factory([[0], [1], [2]], k=2, alpha=SIZE_0)
    assert [s.chosen for s in iter_solutions(instance)] == [(0, 1), (0, 2), (1, 2)]


def test_first_solution_is_lexicographically_smallest(instance_factory):
    instance = instance_factory([[0, 1], [1, 2], [2, 3], [3, 4]], k=2, alpha=SIZE_0)
    assert brute_force_solve(instance).chosen == (0, 2)


def test_refuses_large_families(instance_factory):
    instance = instance_factory([[i] for i in range(5)], k=2, alpha=SIZE_0)
    with pytest.raises(BudgetExhaustedError, match="oracle refuses 5 sets") as exc_info:
        brute_force_solve(instance, OracleConfig(max_family_size=4))
    assert exc_info.value.details["max_family_size"] == 4


def test_pch_mode_requires_a_head_per_set(instance_factory):
    instance = instance_factory(
        [[0, 1], [2, 3], [4, 5]], k=2, alpha=SIZE_0, cluster_heads=[[0], [4]],
    )
    solutions = [s.chosen for s in iter_solutions(instance, OracleConfig(pch_mode=True))]
    assert solutions == [(0, 2)]


def test_pch_mode_head_elements(instance_factory):
    instance = instance_factory(
        [[0, 1], [0, 2]], k=2, alpha={"kind": "size", "t": 1}, cluster_heads=[[0]],
    )
    assert brute_force_solve(instance) == Solution(chosen=(0, 1))
    assert brute_force_solve(instance, OracleConfig(pch_mode=True)) is None
    assert brute_force_solve(instance, OracleConfig(pch_mode=True, shared_heads=True)) == Solution(chosen=(0, 1))


def test_pch_mode_ignores_oversize_heads(instance_factory):
    instance = instance_factory(
        [[0, 1], [2, 3]], k=2, alpha=SIZE_0, cluster_heads=[[0, 1, 2], [0], [2]],
    )
    assert brute_force_solve(instance, OracleConfig(pch_mode=True)) == Solution(chosen=(0, 1))
