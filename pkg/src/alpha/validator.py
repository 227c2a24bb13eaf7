"""
Exhaustive well-conditionedness check for overlap predicates.

Every pair of subsets of {0..n_max-1} with at most r elements (the empty
set included) is compared against every pair of their subsets:

* heredity: a non-conflicting pair may not have a conflicting subset pair;
* a conflicting pair must overlap, and every subset pair that keeps the
  whole overlap must conflict as well.
"""
import logging
from typing import Dict, List, Tuple

import numpy as np

from ..config import VALIDATOR_MAX_N
from ..schema.models import ConditionReport, ConditionWitness, PredicateConfigError
from ..utils.subsets import mask_to_set, mask_to_tuple, masks_up_to, submasks
from .predicates import OverlapPredicate

# Set up logger
logger = logging.getLogger(__name__)


def _witness(a: int, b: int, sub_a: int = None, sub_b: int = None) -> ConditionWitness:
    subpair = None
    if sub_a is not None:
        subpair = (mask_to_tuple(sub_a), mask_to_tuple(sub_b))
    return ConditionWitness(pair=(mask_to_tuple(a), mask_to_tuple(b)), subpair=subpair)


def validate_well_conditioned(pred: OverlapPredicate, n_max: int, r: int,
                              max_witnesses: int = 25) -> ConditionReport:
    """
    Check heredity and the shrinking-overlap condition by enumeration.

    Args:
        pred: Predicate to check; must accept elements 0..n_max-1
        n_max: Universe size to enumerate over (at most VALIDATOR_MAX_N)
        r: Maximum subset size
        max_witnesses: Cap on witnesses stored per violation list

    Returns:
        ConditionReport with witnesses and the number of pairs checked
    """
    if not 0 <= n_max <= VALIDATOR_MAX_N:
        raise PredicateConfigError(
            f"n_max must be between 0 and {VALIDATOR_MAX_N}, got {n_max}",
            {"n_max": n_max},
        )
    if r < 1:
        raise PredicateConfigError(f"r must be at least 1, got {r}", {"r": r})

    masks = masks_up_to(n_max, r)
    position: Dict[int, int] = {mask: i for i, mask in enumerate(masks)}
    as_sets = [mask_to_set(mask) for mask in masks]
    verdicts = np.zeros((len(masks), len(masks)), dtype=bool)
    # Full matrix; predicates are not assumed symmetric
    for i, s_i in enumerate(as_sets):
        for j, s_j in enumerate(as_sets):
            verdicts[i, j] = pred.conflicts(s_i, s_j)
    subs: List[List[int]] = [[position[s] for s in submasks(mask)] for mask in masks]

    report = ConditionReport()
    logger.info(f"Checking {pred.describe()} on {len(masks) ** 2} subset pairs (n={n_max}, r={r})")

    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if not verdicts[i, j]:
                block = verdicts[np.ix_(subs[i], subs[j])]
                if block.any():
                    if len(report.hereditary_violations) < max_witnesses:
                        x, y = np.argwhere(block)[0]
                        report.hereditary_violations.append(
                            _witness(a, b, masks[subs[i][x]], masks[subs[j][y]])
                        )
                    else:
                        report.hereditary_violations_overflow += 1
                continue

            overlap = a & b
            if overlap == 0:
                _record(report, _witness(a, b), max_witnesses)
                continue
            keep_i = [p for p in subs[i] if masks[p] & overlap == overlap]
            keep_j = [p for p in subs[j] if masks[p] & overlap == overlap]
            block = verdicts[np.ix_(keep_i, keep_j)]
            if not block.all():
                x, y = np.argwhere(~block)[0]
                _record(report, _witness(a, b, masks[keep_i[x]], masks[keep_j[y]]), max_witnesses)

    report.checked_pairs = len(masks) ** 2
    if not report.passed:
        logger.warning(
            f"{pred.describe()} failed: {report.violation_count()} violations over {report.checked_pairs} pairs"
        )
    return report


def _record(report: ConditionReport, witness: ConditionWitness, max_witnesses: int) -> None:
    if len(report.condition_ii_violations) < max_witnesses:
        report.condition_ii_violations.append(witness)
    else:
        report.condition_ii_violations_overflow += 1


def pairs_of_subsets(n_max: int, r: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All ordered pairs of subsets the validator enumerates."""
    masks = masks_up_to(n_max, r)
    return [(mask_to_tuple(a), mask_to_tuple(b)) for a in masks for b in masks]
