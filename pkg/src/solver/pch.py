"""
Packing with predetermined cluster heads.

Every set of the packing must contain at least one head. In strict mode
no two sets may share an element of any head, which is enforced by
wrapping the overlap predicate; with shared heads allowed the predicate
is used as is.
"""
import logging
from itertools import combinations, combinations_with_replacement
from typing import FrozenSet, List, Optional

from ..alpha.factory import build_predicate
from ..alpha.predicates import MemoizedPredicate, OverlapPredicate
from ..core.family import FamilyIndex
from ..schema.models import ClusterHeads, InstanceFormatError, SetSystemInstance, SolveReport
from .bounds import pch_tree_size_bound
from .bst import Slots, TreeSearch, resolve_budget

# Set up logger
logger = logging.getLogger(__name__)


def load_cluster_heads(instance: SetSystemInstance) -> ClusterHeads:
    """Filter the instance's heads, warning about ones that cannot be used."""
    if instance.cluster_heads is None:
        raise InstanceFormatError("instance has no cluster_heads")
    usable = instance.usable_cluster_heads()
    discarded = tuple(head for head in instance.cluster_heads if len(head) > instance.r)
    for head in discarded:
        logger.warning(f"Discarding cluster head {list(head)}: larger than r={instance.r}")
    index = FamilyIndex(instance.family)
    for head in usable:
        if not index.sets_containing(head):
            logger.warning(f"Cluster head {list(head)} is contained in no family member")
    return ClusterHeads(heads=usable, discarded=discarded)


class PchPredicate(OverlapPredicate):
    """Conflict when the overlap touches a head element, else defer to the inner predicate."""

    name = "pch"

    def __init__(self, inner: OverlapPredicate, head_values: FrozenSet[int]):
        self.inner = inner
        self.head_values = head_values

    def conflicts(self, s_i: FrozenSet[int], s_j: FrozenSet[int]) -> bool:
        if s_i & s_j & self.head_values:
            return True
        return self.inner.conflicts(s_i, s_j)

    def describe(self) -> str:
        return f"pch({self.inner.describe()})"


def wrap_alpha_pch(pred: OverlapPredicate, heads: ClusterHeads) -> OverlapPredicate:
    return PchPredicate(pred, heads.values)


def initialize_children_pch(heads: ClusterHeads, k: int, shared: bool = False) -> List[Slots]:
    """One root child per choice of k heads; repeats are allowed only when heads may be shared."""
    pick = combinations_with_replacement if shared else combinations
    return [tuple(frozenset(head) for head in combo) for combo in pick(heads.heads, k)]


def solve_pch(instance: SetSystemInstance, shared_heads: bool = False, node_budget: Optional[int] = None,
              trace: bool = False, parallel: bool = False, workers: Optional[int] = None) -> SolveReport:
    """
    Search for a packing whose every set contains a cluster head.

    Args:
        instance: Validated instance carrying cluster_heads
        shared_heads: Allow two chosen sets to share head elements
        node_budget: Maximum number of search nodes to expand
        trace: Record every expanded node in the report
        parallel: Explore root subtrees on a thread pool
        workers: Pool size for parallel mode

    Returns:
        SolveReport; head_count is the number of usable heads
    """
    heads = load_cluster_heads(instance)
    k, r = instance.k, instance.r
    inner = build_predicate(instance.alpha, instance.universe, instance.graph)
    pred = MemoizedPredicate(inner if shared_heads else wrap_alpha_pch(inner, heads))
    index = FamilyIndex(instance.family)

    roots = initialize_children_pch(heads, k, shared=shared_heads)
    logger.info(f"PCH search: {len(heads)} heads, {len(roots)} root children, shared_heads={shared_heads}")
    budget = resolve_budget(node_budget, pch_tree_size_bound(k, r, len(heads), shared_heads))
    search = TreeSearch(index, pred, budget, trace)
    search.run(roots, parallel=parallel, workers=workers)
    return search.report(len(roots), pred, head_count=len(heads))
