"""
Built-in overlap predicates.

A predicate answers one question about a pair of element sets: may they
coexist in a packing? `conflicts()` returning True means they may not.
All built-ins look only at the overlap region, treat an empty overlap as
no conflict and are symmetric in their two arguments.
"""
import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..graph.model import Adjacency, induced_edge_count, induced_subgraph
from ..schema.models import PatternClassKind, PatternGraph, Verdict
from ..utils.isomorphism import EdgeSet, contains_induced, pattern_edge_set

# Set up logger
logger = logging.getLogger(__name__)


class OverlapPredicate(ABC):
    """Pairwise verdict function over element subsets."""

    name: str = "predicate"

    @abstractmethod
    def conflicts(self, s_i: FrozenSet[int], s_j: FrozenSet[int]) -> bool:
        """Return True iff s_i and s_j conflict."""

    def describe(self) -> str:
        return self.name


class OverlapRegionPredicate(OverlapPredicate):
    """Base for predicates that only depend on s_i ∩ s_j."""

    def conflicts(self, s_i: FrozenSet[int], s_j: FrozenSet[int]) -> bool:
        overlap = s_i & s_j
        if not overlap:
            return False
        return self.region_conflicts(overlap)

    @abstractmethod
    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        """Verdict for a non-empty overlap region."""


class SizePredicate(OverlapRegionPredicate):
    """Conflict iff the overlap has more than t elements."""

    name = "size"

    def __init__(self, t: int):
        self.t = t

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        return len(overlap) > self.t

    def describe(self) -> str:
        return f"size(t={self.t})"


class AdditivePredicate(OverlapRegionPredicate):
    """Conflict iff the summed per-element values of the overlap exceed a bound."""

    name = "additive"

    def __init__(self, values: Sequence[float], bound: float):
        self.values = tuple(float(v) for v in values)
        self.bound = float(bound)

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        return math.fsum(self.values[e] for e in overlap) > self.bound

    def describe(self) -> str:
        return f"{self.name}(bound={self.bound:g})"


class WeightPredicate(AdditivePredicate):
    name = "weight"


class MeasurePredicate(AdditivePredicate):
    name = "measure"


class MetricPredicate(OverlapRegionPredicate):
    """
    Conflict iff two distinct overlap elements are farther apart than d_t.

    Overlaps of a single element never conflict.
    """

    name = "metric"

    def __init__(self, distances: np.ndarray, d_t: float):
        self.distances = distances
        self.d_t = float(d_t)

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        if len(overlap) < 2:
            return False
        idx = sorted(overlap)
        return bool((self.distances[np.ix_(idx, idx)] > self.d_t).any())

    def describe(self) -> str:
        return f"{self.name}(d_t={self.d_t:g})"


class DistancePredicate(MetricPredicate):
    """MetricPredicate over shortest-path hop counts of the whole graph."""

    name = "distance"


class PropertyPredicate(OverlapRegionPredicate):
    """Conflict iff some overlap element lacks the property flag."""

    name = "property"

    def __init__(self, flags: Sequence[bool]):
        self.flags = tuple(bool(f) for f in flags)

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        return not all(self.flags[e] for e in overlap)


class PatternPredicate(OverlapRegionPredicate):
    """Conflict iff the subgraph induced by the overlap falls outside a hereditary class."""

    name = "pattern"

    def __init__(self, adjacency: Adjacency, pattern_class: PatternClassKind,
                 forbidden: Iterable[PatternGraph] = ()):
        self.adjacency = adjacency
        self.pattern_class = pattern_class
        self.forbidden: Tuple[Tuple[int, EdgeSet], ...] = tuple(
            (pattern.vertices, pattern_edge_set(pattern.edges)) for pattern in forbidden
        )

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        size = len(overlap)
        if self.pattern_class == PatternClassKind.CLIQUE:
            return induced_edge_count(self.adjacency, overlap) != size * (size - 1) // 2
        if self.pattern_class == PatternClassKind.EDGELESS:
            return induced_edge_count(self.adjacency, overlap) != 0
        n_host, host_edges = induced_subgraph(self.adjacency, overlap)
        return any(
            contains_induced(n_host, host_edges, n_pattern, pattern_edges)
            for n_pattern, pattern_edges in self.forbidden
        )

    def describe(self) -> str:
        return f"pattern({self.pattern_class.value})"


class DenseOverlapPredicate(OverlapRegionPredicate):
    """Conflict iff the overlap misses more than c of its possible edges."""

    name = "dense_overlap"

    def __init__(self, adjacency: Adjacency, c: int):
        self.adjacency = adjacency
        self.c = c

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        size = len(overlap)
        return induced_edge_count(self.adjacency, overlap) < size * (size - 1) // 2 - self.c

    def describe(self) -> str:
        return f"dense_overlap(c={self.c})"


class DensityPredicate(OverlapRegionPredicate):
    """Conflict iff the overlap has more than t vertices or more than c edges."""

    name = "density"

    def __init__(self, adjacency: Adjacency, t: int, c: int):
        self.adjacency = adjacency
        self.t = t
        self.c = c

    def region_conflicts(self, overlap: FrozenSet[int]) -> bool:
        if len(overlap) > self.t:
            return True
        return induced_edge_count(self.adjacency, overlap) > self.c

    def describe(self) -> str:
        return f"density(t={self.t}, c={self.c})"


class ConjunctionPredicate(OverlapPredicate):
    """No conflict only if every part agrees there is none."""

    name = "conjunction"

    def __init__(self, parts: Sequence[OverlapPredicate]):
        self.parts = tuple(parts)

    def conflicts(self, s_i: FrozenSet[int], s_j: FrozenSet[int]) -> bool:
        return any(part.conflicts(s_i, s_j) for part in self.parts)

    def describe(self) -> str:
        return " & ".join(part.describe() for part in self.parts)


class MemoizedPredicate(OverlapPredicate):
    """
    Caches verdicts per unordered pair of sets.

    Shared between worker threads the cache stays coherent because the
    wrapped predicate is pure; `evaluations` then becomes approximate.
    """

    def __init__(self, inner: OverlapPredicate):
        self.inner = inner
        self.name = inner.name
        self.evaluations = 0
        self._cache: Dict[FrozenSet[FrozenSet[int]], bool] = {}

    def conflicts(self, s_i: FrozenSet[int], s_j: FrozenSet[int]) -> bool:
        key = frozenset((s_i, s_j))
        verdict: Optional[bool] = self._cache.get(key)
        if verdict is None:
            verdict = self.inner.conflicts(s_i, s_j)
            self._cache[key] = verdict
            self.evaluations += 1
        return verdict

    def describe(self) -> str:
        return self.inner.describe()


def evaluate(pred: OverlapPredicate, s_i: Iterable[int], s_j: Iterable[int]) -> Verdict:
    """Verdict of `pred` on two element sets given in any iterable form."""
    if pred.conflicts(frozenset(s_i), frozenset(s_j)):
        return Verdict.CONFLICT
    return Verdict.NO_CONFLICT
