"""
Brute-force reference solver: every k-combination of members, checked pair by pair.
"""
import logging
from itertools import combinations
from math import comb
from typing import Iterator, Optional

from ..alpha.factory import build_predicate
from ..alpha.predicates import MemoizedPredicate, OverlapPredicate
from ..schema.models import (
    BudgetExhaustedError,
    OracleConfig,
    SetSystemInstance,
    Solution,
    family_sets,
)

# Set up logger
logger = logging.getLogger(__name__)


def iter_solutions(instance: SetSystemInstance, cfg: Optional[OracleConfig] = None,
                   pred: Optional[OverlapPredicate] = None) -> Iterator[Solution]:
    """
    Yield every solution in lexicographic order of member indices.

    Raises:
        BudgetExhaustedError: if the family is larger than cfg.max_family_size
    """
    cfg = cfg or OracleConfig()
    m, k = len(instance.family), instance.k
    if m > cfg.max_family_size:
        raise BudgetExhaustedError(
            f"oracle refuses {m} sets (limit {cfg.max_family_size}, C(m,k)={comb(m, k)})",
            {"m": m, "k": k, "max_family_size": cfg.max_family_size},
        )
    sets = family_sets(instance.family)
    pred = pred or MemoizedPredicate(build_predicate(instance.alpha, instance.universe, instance.graph))

    candidates = range(m)
    head_values = frozenset()
    if cfg.pch_mode:
        heads = [frozenset(head) for head in instance.usable_cluster_heads()]
        candidates = [i for i in range(m) if any(head <= sets[i] for head in heads)]
        if not cfg.shared_heads:
            head_values = frozenset().union(*heads)
    logger.debug(f"Oracle enumerating C({len(candidates)}, {k}) combinations")

    for combo in combinations(candidates, k):
        if all(
            not (sets[i] & sets[j] & head_values) and not pred.conflicts(sets[i], sets[j])
            for i, j in combinations(combo, 2)
        ):
            yield Solution(chosen=combo)


def brute_force_solve(instance: SetSystemInstance, cfg: Optional[OracleConfig] = None,
                      pred: Optional[OverlapPredicate] = None) -> Optional[Solution]:
    """First solution in lexicographic order, or None."""
    return next(iter_solutions(instance, cfg, pred), None)
