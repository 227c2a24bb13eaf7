"""
Checks a candidate solution against its instance.
"""
import logging
from typing import Optional

from ..alpha.factory import build_predicate
from ..alpha.predicates import OverlapPredicate
from ..schema.models import SetSystemInstance, Solution, ValidationReport, family_sets

# Set up logger
logger = logging.getLogger(__name__)


def validate_solution(instance: SetSystemInstance, sol: Solution,
                      pch_mode: Optional[bool] = None, shared_heads: bool = False,
                      pred: Optional[OverlapPredicate] = None) -> ValidationReport:
    """
    Validate `sol` pair by pair.

    Violations become report entries; nothing is raised.

    Args:
        instance: The instance the solution claims to solve
        sol: Candidate solution
        pch_mode: Also check the cluster-head conditions; defaults to
            whether the instance carries cluster heads
        shared_heads: In PCH mode, allow chosen sets to share head elements
        pred: Prebuilt predicate for the instance's alpha spec

    Returns:
        ValidationReport listing every conflicting pair and error
    """
    if pch_mode is None:
        pch_mode = instance.cluster_heads is not None
    report = ValidationReport(valid=True)
    m = len(instance.family)
    chosen = list(sol.chosen)

    if len(chosen) != instance.k:
        report.errors.append(f"wrong cardinality: expected {instance.k} sets, got {len(chosen)}")
    out_of_range = [i for i in chosen if not 0 <= i < m]
    if out_of_range:
        report.errors.append(f"indices out of range for {m} sets: {out_of_range}")
        report.valid = False
        return report
    if len(set(chosen)) != len(chosen):
        report.errors.append("solution repeats a set index")

    sets = family_sets(instance.family)
    pred = pred or build_predicate(instance.alpha, instance.universe, instance.graph)
    heads = [frozenset(head) for head in instance.usable_cluster_heads()]
    head_elements = frozenset().union(*heads)

    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            i, j = chosen[a], chosen[b]
            if i == j:
                continue
            pair = (min(i, j), max(i, j))
            if pred.conflicts(sets[i], sets[j]):
                report.conflicting_pairs.append(pair)
            elif pch_mode and not shared_heads and sets[i] & sets[j] & head_elements:
                report.conflicting_pairs.append(pair)
                report.errors.append(f"sets {pair[0]} and {pair[1]} share a cluster head element")

    if pch_mode:
        for i in chosen:
            if not any(head <= sets[i] for head in heads):
                report.errors.append(f"set {i} contains no cluster head")

    report.valid = not report.errors and not report.conflicting_pairs
    if not report.valid:
        logger.debug(f"Solution {chosen} rejected: {report.errors or report.conflicting_pairs}")
    return report
