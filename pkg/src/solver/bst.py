"""
Bounded search tree for r-set packing with pairwise overlap constraints.

A node holds a partial solution: k slots, each a set that must end up
inside a distinct member of the packing. Greedy tries to complete the
node; when it gets stuck, the elements responsible for the collision
become the branching alphabet and each child grows the stuck slot by
one of them.

Slot indices are 0-based throughout.
"""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, combinations_with_replacement
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from ..alpha.factory import build_predicate
from ..alpha.predicates import MemoizedPredicate, OverlapPredicate
from ..config import DEFAULT_NODE_BUDGET, PARALLEL_WORKERS
from ..core.family import FamilyIndex
from ..schema.models import (
    GreedyKind,
    GreedyOutcome,
    SetFamily,
    SetSystemInstance,
    SolveReport,
    TraceEntry,
)
from .bounds import tree_size_bound

# Set up logger
logger = logging.getLogger(__name__)

Slots = Tuple[FrozenSet[int], ...]
FamilyLike = Union[SetFamily, FamilyIndex]


def _as_index(family: FamilyLike) -> FamilyIndex:
    return family if isinstance(family, FamilyIndex) else FamilyIndex(family)


def maximal_alpha_packing(family: FamilyLike, pred: OverlapPredicate) -> List[int]:
    """Greedy maximal conflict-free collection, scanning members in index order."""
    index = _as_index(family)
    packing: List[int] = []
    for i, candidate in enumerate(index.sets):
        if all(not pred.conflicts(candidate, index.sets[c]) for c in packing):
            packing.append(i)
    return packing


def initialize_children(packing: Sequence[int], family: FamilyLike, k: int) -> List[Slots]:
    """One root child per size-k multiset over the elements of the packing."""
    index = _as_index(family)
    elements = sorted(frozenset().union(*(index.sets[i] for i in packing)))
    return [
        tuple(frozenset((u,)) for u in combo)
        for combo in combinations_with_replacement(elements, k)
    ]


def feasible_sponsors(j: int, slots: Slots, family: FamilyLike, pred: OverlapPredicate) -> List[int]:
    """
    Members that contain slot j and are compatible with every other slot.

    A member is compatible with slot f when it neither conflicts with it
    nor equals it.
    """
    index = _as_index(family)
    others = [slot for f, slot in enumerate(slots) if f != j]
    sponsors = []
    for i in index.sets_containing(slots[j]):
        member = index.sets[i]
        if all(member != other and not pred.conflicts(other, member) for other in others):
            sponsors.append(i)
    return sponsors


def greedy_complete(slots: Slots, family: FamilyLike, pred: OverlapPredicate) -> GreedyOutcome:
    """Try to fill every slot with the lowest-index compatible sponsor."""
    index = _as_index(family)
    for f, g in combinations(range(len(slots)), 2):
        if pred.conflicts(slots[f], slots[g]):
            return GreedyOutcome(kind=GreedyKind.INFEASIBLE)

    chosen: List[int] = []
    for j in range(len(slots)):
        sponsors = feasible_sponsors(j, slots, index, pred)
        if not sponsors:
            return GreedyOutcome(kind=GreedyKind.INFEASIBLE, chosen=tuple(chosen))
        pick = next(
            (
                i for i in sponsors
                if all(i != c and not pred.conflicts(index.sets[i], index.sets[c]) for c in chosen)
            ),
            None,
        )
        if pick is None:
            return GreedyOutcome(
                kind=GreedyKind.STUCK,
                chosen=tuple(chosen),
                stuck_slot=j,
                sponsors=tuple(sponsors),
            )
        chosen.append(pick)
    return GreedyOutcome(kind=GreedyKind.COMPLETE, chosen=tuple(chosen))


def branching_alphabet(slots: Slots, outcome: GreedyOutcome, family: FamilyLike,
                       pred: OverlapPredicate) -> List[int]:
    """Elements of sponsors that collide with Greedy's picks, minus the stuck slot."""
    index = _as_index(family)
    stuck = slots[outcome.stuck_slot]
    sponsors = outcome.sponsors or tuple(feasible_sponsors(outcome.stuck_slot, slots, index, pred))
    alphabet = set()
    for s in sponsors:
        sponsor = index.sets[s]
        for c in outcome.chosen:
            picked = index.sets[c]
            if s == c or pred.conflicts(sponsor, picked):
                alphabet |= (sponsor - stuck) & picked
    return sorted(alphabet)


def branch(slots: Slots, outcome: GreedyOutcome, family: FamilyLike, pred: OverlapPredicate) -> List[Slots]:
    """Children of a stuck node, one per branching-alphabet element."""
    if outcome.kind != GreedyKind.STUCK:
        raise ValueError(f"branch needs a stuck greedy outcome, got {outcome.kind.value}")
    index = _as_index(family)
    alphabet = branching_alphabet(slots, outcome, index, pred)
    return grow_slot(slots, outcome.stuck_slot, alphabet, index.family.r)


def grow_slot(slots: Slots, j: int, alphabet: Sequence[int], r: int) -> List[Slots]:
    children = []
    for u in alphabet:
        grown = slots[j] | {u}
        if len(grown) > r:
            continue
        children.append(slots[:j] + (grown,) + slots[j + 1:])
    return children


def _render(slots: Slots) -> List[List[int]]:
    return [sorted(slot) for slot in slots]


class TreeSearch:
    """
    Depth-first exploration of the search tree below a list of root children.

    In parallel mode each root child is a separate task; tasks share the
    predicate cache, the node counter and a stop flag, and the first
    complete outcome wins.
    """

    def __init__(self, index: FamilyIndex, pred: OverlapPredicate, node_budget: int, trace: bool = False):
        self.index = index
        self.pred = pred
        self.node_budget = node_budget
        self.nodes_expanded = 0
        self.max_depth = 0
        self.budget_exhausted = False
        self.solution: Optional[Tuple[int, ...]] = None
        self.trace: Optional[List[TraceEntry]] = [] if trace else None
        self._stop = threading.Event()
        self._lock = threading.Lock()

    def _claim(self, depth: int) -> bool:
        with self._lock:
            if self.nodes_expanded >= self.node_budget:
                if not self.budget_exhausted:
                    logger.warning(f"Node budget of {self.node_budget} exhausted")
                self.budget_exhausted = True
                self._stop.set()
                return False
            self.nodes_expanded += 1
            self.max_depth = max(self.max_depth, depth)
            return True

    def explore(self, roots: Sequence[Slots]) -> None:
        stack: List[Tuple[Slots, int]] = [(root, 0) for root in reversed(roots)]
        while stack and not self._stop.is_set():
            slots, depth = stack.pop()
            if not self._claim(depth):
                return
            outcome = greedy_complete(slots, self.index, self.pred)
            alphabet: List[int] = []
            if outcome.kind == GreedyKind.STUCK:
                alphabet = branching_alphabet(slots, outcome, self.index, self.pred)
                children = grow_slot(slots, outcome.stuck_slot, alphabet, self.index.family.r)
                stack.extend((child, depth + 1) for child in reversed(children))
            logger.debug(f"depth={depth} slots={_render(slots)} -> {outcome.kind.value} alphabet={alphabet}")
            if self.trace is not None:
                with self._lock:
                    self.trace.append(
                        TraceEntry(depth=depth, slots=_render(slots), outcome=outcome.kind, alphabet=alphabet)
                    )
            if outcome.kind == GreedyKind.COMPLETE:
                with self._lock:
                    if self.solution is None:
                        self.solution = outcome.chosen
                self._stop.set()
                return

    def run(self, roots: Sequence[Slots], parallel: bool = False, workers: Optional[int] = None) -> None:
        if parallel and len(roots) > 1:
            with ThreadPoolExecutor(max_workers=workers or PARALLEL_WORKERS) as pool:
                list(pool.map(lambda root: self.explore([root]), roots))
        else:
            self.explore(roots)

    def report(self, root_children: int, pred: MemoizedPredicate, **extra) -> SolveReport:
        return SolveReport(
            solution=list(self.solution) if self.solution is not None else None,
            nodes_expanded=self.nodes_expanded,
            max_depth=self.max_depth,
            root_children=root_children,
            predicate_evaluations=pred.evaluations,
            budget_exhausted=self.budget_exhausted and self.solution is None,
            trace=self.trace,
            **extra,
        )


def resolve_budget(node_budget: Optional[int], bound: int) -> int:
    """Explicit budget, else the configured default, else the tree-size bound."""
    if node_budget is not None:
        return node_budget
    if DEFAULT_NODE_BUDGET is not None:
        return DEFAULT_NODE_BUDGET
    return bound


def solve(instance: SetSystemInstance, node_budget: Optional[int] = None, trace: bool = False,
          parallel: bool = False, workers: Optional[int] = None) -> SolveReport:
    """
    Find k pairwise conflict-free members, or prove there are none.

    Args:
        instance: Validated set-system instance
        node_budget: Maximum number of search nodes to expand
        trace: Record every expanded node in the report
        parallel: Explore root subtrees on a thread pool
        workers: Pool size for parallel mode

    Returns:
        SolveReport with the solution (or None) and search statistics
    """
    k, r = instance.k, instance.r
    index = FamilyIndex(instance.family)
    pred = MemoizedPredicate(build_predicate(instance.alpha, instance.universe, instance.graph))
    logger.info(f"Solving m={len(index)} r={r} k={k} alpha={pred.describe()}")

    packing = maximal_alpha_packing(index, pred)
    logger.info(f"Maximal packing has {len(packing)} members")
    if len(packing) >= k:
        return SolveReport(
            solution=packing[:k],
            predicate_evaluations=pred.evaluations,
            seeded_by_maximal=True,
            trace=[] if trace else None,
        )

    roots = initialize_children(packing, index, k)
    logger.info(f"Search tree has {len(roots)} root children")
    search = TreeSearch(index, pred, resolve_budget(node_budget, tree_size_bound(k, r)), trace)
    search.run(roots, parallel=parallel, workers=workers)
    report = search.report(len(roots), pred)
    logger.info(
        f"Search finished: solution={report.solution} nodes={report.nodes_expanded} "
        f"depth={report.max_depth} budget_exhausted={report.budget_exhausted}"
    )
    return report
