"""
Pydantic models for overlap-pack.
"""
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

# Canonical element set: sorted, duplicate-free tuple of element indices.
ElementSet = Tuple[int, ...]

Number = Union[int, float]


def make_element_set(elements: Iterable[int]) -> ElementSet:
    """Canonicalize any iterable of element indices into an ElementSet."""
    return tuple(sorted(set(int(e) for e in elements)))


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class OverlapPackError(Exception):
    """Base error for overlap-pack."""
    def __init__(self, error: str, details: Optional[Dict[str, Any]] = None):
        self.error = error
        self.details = details
        super().__init__(error)


class InstanceFormatError(OverlapPackError):
    """Malformed or invalid instance input."""


class PredicateConfigError(OverlapPackError):
    """An overlap predicate cannot be built from its spec."""


class BudgetExhaustedError(OverlapPackError):
    """A search or enumeration exceeded its configured budget."""


class GeneratorConfigError(OverlapPackError):
    """Incompatible instance generator parameters."""


# ---------------------------------------------------------------------------
# Graph-shaped values
# ---------------------------------------------------------------------------


def _canonical_edges(n: int, edges: Iterable[Iterable[int]]) -> Tuple[Tuple[int, int], ...]:
    seen: Set[Tuple[int, int]] = set()
    for edge in edges:
        pair = tuple(int(v) for v in edge)
        if len(pair) != 2:
            raise ValueError(f"edge {list(pair)} must have exactly two endpoints")
        u, v = pair
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"parallel edge ({key[0]}, {key[1]})")
        seen.add(key)
    return tuple(sorted(seen))


def _canonical_heads(heads: Any) -> Any:
    if heads is None:
        return None
    canonical = []
    for position, head in enumerate(heads):
        elements = [int(e) for e in head]
        if not elements:
            raise ValueError(f"cluster head {position} is empty")
        canonical.append(make_element_set(elements))
    return tuple(canonical)


class PatternGraph(BaseModel):
    """A small pattern graph used by pattern classes and Π families."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    vertices: int = Field(..., ge=1, description="Number of pattern vertices")
    edges: Tuple[Tuple[int, int], ...] = Field((), description="Undirected edge list")

    @field_validator("edges")
    @classmethod
    def _check_edges(cls, edges: Tuple[Tuple[int, int], ...], info: ValidationInfo):
        if "vertices" not in info.data:
            return edges
        return _canonical_edges(info.data["vertices"], edges)


class Graph(BaseModel):
    """A simple undirected graph over vertices 0..n-1."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., ge=0, description="Vertex count")
    edges: Tuple[Tuple[int, int], ...] = Field((), description="Canonical edge list, u < v")

    @field_validator("edges")
    @classmethod
    def _check_edges(cls, edges: Tuple[Tuple[int, int], ...], info: ValidationInfo):
        if "n" not in info.data:
            return edges
        return _canonical_edges(info.data["n"], edges)


# ---------------------------------------------------------------------------
# Core data model
# ---------------------------------------------------------------------------


class Universe(BaseModel):
    """Elements 0..n-1 plus optional per-element annotations."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    size: int = Field(..., ge=0, description="Number of elements n")
    weights: Optional[Tuple[float, ...]] = None
    properties: Optional[Tuple[bool, ...]] = None
    distances: Optional[Tuple[Tuple[float, ...], ...]] = None
    names: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def _check_annotations(self) -> "Universe":
        n = self.size
        if self.weights is not None:
            if len(self.weights) != n:
                raise ValueError(f"weights has {len(self.weights)} entries, expected {n}")
            if any(not np.isfinite(w) or w < 0 for w in self.weights):
                raise ValueError("weights must be finite and non-negative")
        if self.properties is not None and len(self.properties) != n:
            raise ValueError(f"properties has {len(self.properties)} entries, expected {n}")
        if self.names is not None:
            if len(self.names) != n:
                raise ValueError(f"names has {len(self.names)} entries, expected {n}")
            if len(set(self.names)) != n:
                raise ValueError("element names must be unique")
        if self.distances is not None:
            check_metric(self.distances, n)
        return self

    def distance_matrix(self) -> Optional[np.ndarray]:
        if self.distances is None:
            return None
        return np.array(self.distances, dtype=float).reshape(self.size, self.size)


def check_metric(distances: Tuple[Tuple[float, ...], ...], n: int) -> None:
    """Raise ValueError unless `distances` is an n x n metric."""
    if len(distances) != n or any(len(row) != n for row in distances):
        raise ValueError(f"distances must be a {n}x{n} matrix")
    if n == 0:
        return
    d = np.array(distances, dtype=float)
    if np.isnan(d).any() or (d < 0).any():
        raise ValueError("metric axioms violated: distances must be non-negative")
    if (np.diag(d) != 0).any():
        raise ValueError("metric axioms violated: dist(u,u) must be 0")
    if (d != d.T).any():
        raise ValueError("metric axioms violated: distances must be symmetric")
    for v in range(n):
        via = d[:, v][:, None] + d[v, :][None, :]
        if (d > via).any():
            u, w = np.argwhere(d > via)[0]
            raise ValueError(
                f"metric axioms violated: triangle inequality fails for ({u}, {v}, {w})"
            )


class SetFamily(BaseModel):
    """The collection S of candidate sets, in canonical index order."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    members: Tuple[ElementSet, ...] = ()
    r: int = Field(..., ge=1, description="Maximum set size")

    @field_validator("members", mode="before")
    @classmethod
    def _canonicalize(cls, members: Any) -> Any:
        canonical = []
        for position, member in enumerate(members):
            elements = [int(e) for e in member]
            if len(set(elements)) != len(elements):
                raise ValueError(f"set {position} repeats an element: {elements}")
            canonical.append(tuple(sorted(elements)))
        return tuple(canonical)

    @model_validator(mode="after")
    def _check_members(self) -> "SetFamily":
        seen: Dict[ElementSet, int] = {}
        for position, member in enumerate(self.members):
            if len(member) == 0:
                raise ValueError(f"set {position} is empty")
            if len(member) > self.r:
                raise ValueError(
                    f"set {position} exceeds r: {list(member)} has {len(member)} elements, r={self.r}"
                )
            if member in seen:
                raise ValueError(
                    f"duplicate sets: set {position} equals set {seen[member]} ({list(member)})"
                )
            seen[member] = position
        return self

    def __len__(self) -> int:
        return len(self.members)


class AlphaKind(str, Enum):
    SIZE = "size"
    WEIGHT = "weight"
    MEASURE = "measure"
    METRIC = "metric"
    DISTANCE = "distance"
    PATTERN = "pattern"
    PROPERTY = "property"
    DENSE_OVERLAP = "dense_overlap"
    DENSITY = "density"
    CONJUNCTION = "conjunction"


class PatternClassKind(str, Enum):
    CLIQUE = "clique"
    EDGELESS = "edgeless"
    FORBIDDEN_INDUCED = "forbidden_induced"


class AlphaSpec(BaseModel):
    """Declarative description of an overlap predicate."""
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    kind: AlphaKind
    t: Optional[Number] = Field(None, description="size/density: overlap size bound; measure: threshold")
    w_t: Optional[Number] = Field(None, description="weight: overlap weight bound")
    d_t: Optional[Number] = Field(None, description="metric/distance: pairwise distance bound")
    c: Optional[int] = Field(None, description="dense_overlap: missing-edge allowance; density: edge bound")
    values: Optional[Tuple[float, ...]] = Field(None, description="measure: per-element non-negative values")
    pattern_class: Optional[PatternClassKind] = Field(None, alias="class")
    forbidden: Optional[Tuple[PatternGraph, ...]] = None
    parts: Optional[Tuple["AlphaSpec", ...]] = None

    def requirements(self) -> Set[str]:
        """Universe annotations or context this spec needs."""
        if self.kind == AlphaKind.WEIGHT:
            return {"weights"}
        if self.kind == AlphaKind.PROPERTY:
            return {"properties"}
        if self.kind == AlphaKind.METRIC:
            return {"distances"}
        if self.kind in (AlphaKind.DISTANCE, AlphaKind.PATTERN,
                         AlphaKind.DENSE_OVERLAP, AlphaKind.DENSITY):
            return {"graph"}
        if self.kind == AlphaKind.CONJUNCTION:
            needed: Set[str] = set()
            for part in self.parts or ():
                needed |= part.requirements()
            return needed
        return set()

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class SetSystemInstance(BaseModel):
    """An r-set packing instance with an overlap constraint."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    universe: Universe
    family: SetFamily
    k: int = Field(..., ge=1, description="Solution size parameter")
    alpha: AlphaSpec
    cluster_heads: Optional[Tuple[ElementSet, ...]] = None
    graph: Optional[Graph] = Field(None, description="Graph context over the universe")

    @field_validator("cluster_heads", mode="before")
    @classmethod
    def _canonicalize_heads(cls, heads: Any) -> Any:
        return _canonical_heads(heads)

    @model_validator(mode="after")
    def _check_ranges(self) -> "SetSystemInstance":
        n = self.universe.size
        for position, member in enumerate(self.family.members):
            if member and member[-1] >= n:
                raise ValueError(
                    f"set {position} has element index {member[-1]} out of range for universe {n}"
                )
        for position, head in enumerate(self.cluster_heads or ()):
            if head[-1] >= n:
                raise ValueError(
                    f"cluster head {position} has element index {head[-1]} out of range for universe {n}"
                )
        if self.graph is not None and self.graph.n != n:
            raise ValueError(f"graph has {self.graph.n} vertices but universe has {n} elements")
        for need in sorted(self.alpha.requirements()):
            if need == "graph":
                if self.graph is None:
                    raise ValueError(f"alpha kind requires graph context but the instance has no edges")
            elif getattr(self.universe, need) is None:
                raise ValueError(f"alpha spec references missing annotation '{need}'")
        return self

    @property
    def r(self) -> int:
        return self.family.r

    def usable_cluster_heads(self) -> Tuple[ElementSet, ...]:
        """Cluster heads that fit in a member; larger heads can never be contained."""
        return tuple(head for head in self.cluster_heads or () if len(head) <= self.r)


class Solution(BaseModel):
    """Indices of the chosen family members."""
    model_config = ConfigDict(frozen=True)

    chosen: Tuple[int, ...]


class ValidationReport(BaseModel):
    """Outcome of checking a candidate solution against an instance."""
    valid: bool
    conflicting_pairs: List[Tuple[int, int]] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)


class Verdict(str, Enum):
    CONFLICT = "conflict"
    NO_CONFLICT = "no_conflict"


class ConditionWitness(BaseModel):
    """A pair (s_i, s_j) and, when relevant, the offending subset pair."""
    pair: Tuple[ElementSet, ElementSet]
    subpair: Optional[Tuple[ElementSet, ElementSet]] = None


class ConditionReport(BaseModel):
    """Result of an exhaustive well-conditionedness check."""
    hereditary_violations: List[ConditionWitness] = Field(default_factory=list)
    condition_ii_violations: List[ConditionWitness] = Field(default_factory=list)
    checked_pairs: int = 0
    # Violations found beyond the witness cap
    hereditary_violations_overflow: int = 0
    condition_ii_violations_overflow: int = 0

    @property
    def passed(self) -> bool:
        return not self.hereditary_violations and not self.condition_ii_violations

    def violation_count(self) -> int:
        return (len(self.hereditary_violations) + self.hereditary_violations_overflow
                + len(self.condition_ii_violations) + self.condition_ii_violations_overflow)


# ---------------------------------------------------------------------------
# Graph instances
# ---------------------------------------------------------------------------


class PiKind(str, Enum):
    FAMILY = "family"
    MIN_EDGES = "min_edges"
    MIN_DEGREE_OFFSET = "min_degree_offset"
    CLIQUE = "clique"


class PiSpec(BaseModel):
    """The community property Π."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: PiKind
    family: Optional[Tuple[PatternGraph, ...]] = None
    t: Optional[int] = Field(None, ge=0, description="min_edges: edge-count threshold")
    c: Optional[int] = Field(None, ge=0, description="min_degree_offset: degree slack")
    max_boundary_edges: Optional[int] = Field(None, ge=0, description="min_edges: boundary cap")

    @model_validator(mode="after")
    def _check_params(self) -> "PiSpec":
        if self.kind == PiKind.FAMILY and not self.family:
            raise ValueError("pi kind 'family' needs a non-empty 'family' list")
        if self.kind == PiKind.MIN_EDGES and self.t is None:
            raise ValueError("pi kind 'min_edges' needs 't'")
        if self.kind == PiKind.MIN_DEGREE_OFFSET and self.c is None:
            raise ValueError("pi kind 'min_degree_offset' needs 'c'")
        return self


class GraphInstance(BaseModel):
    """A Π-packing instance on a graph."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    graph: Graph
    r: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    pi: PiSpec
    alpha: AlphaSpec
    cluster_heads: Optional[Tuple[ElementSet, ...]] = None
    weights: Optional[Tuple[float, ...]] = None
    properties: Optional[Tuple[bool, ...]] = None
    names: Optional[Tuple[str, ...]] = None

    @field_validator("cluster_heads", mode="before")
    @classmethod
    def _canonicalize_heads(cls, heads: Any) -> Any:
        return _canonical_heads(heads)

    @model_validator(mode="after")
    def _check_patterns(self) -> "GraphInstance":
        for pattern in self.pi.family or ():
            if pattern.vertices > self.r:
                raise ValueError(
                    f"pi pattern with {pattern.vertices} vertices exceeds r={self.r}"
                )
        for position, head in enumerate(self.cluster_heads or ()):
            if head[-1] >= self.graph.n:
                raise ValueError(f"cluster head {position} out of range for {self.graph.n} vertices")
        for need in sorted(self.alpha.requirements() & {"weights", "properties"}):
            if getattr(self, need) is None:
                raise ValueError(f"alpha spec references missing annotation '{need}'")
        return self


class ClusterHeads(BaseModel):
    """Predetermined cluster heads that survived size filtering."""
    model_config = ConfigDict(frozen=True)

    heads: Tuple[ElementSet, ...] = ()
    discarded: Tuple[ElementSet, ...] = ()

    @property
    def values(self) -> FrozenSet[int]:
        """Union of all usable heads."""
        return frozenset(e for head in self.heads for e in head)

    def __len__(self) -> int:
        return len(self.heads)


# ---------------------------------------------------------------------------
# Solver outputs
# ---------------------------------------------------------------------------


class GreedyKind(str, Enum):
    COMPLETE = "complete"
    STUCK = "stuck"
    INFEASIBLE = "infeasible"


class GreedyOutcome(BaseModel):
    """What Greedy did with one partial solution.

    `chosen` is Q^gr as member indices. For STUCK, `stuck_slot` is the
    0-based slot Greedy could not fill, always equal to len(chosen).
    """
    model_config = ConfigDict(frozen=True)

    kind: GreedyKind
    chosen: Tuple[int, ...] = ()
    stuck_slot: Optional[int] = None
    sponsors: Tuple[int, ...] = Field((), description="Feasible sponsors of the stuck slot")


class TraceEntry(BaseModel):
    """One expanded search-tree node."""
    depth: int
    slots: List[List[int]]
    outcome: GreedyKind
    alphabet: List[int] = Field(default_factory=list)


class SolveReport(BaseModel):
    """Outcome and search-tree statistics of one solve run."""
    solution: Optional[List[int]] = None
    nodes_expanded: int = 0
    max_depth: int = 0
    root_children: int = 0
    predicate_evaluations: int = 0
    seeded_by_maximal: bool = False
    budget_exhausted: bool = False
    head_count: Optional[int] = Field(None, description="PCH only: number of usable heads l")
    trace: Optional[List[TraceEntry]] = None

    @property
    def outcome(self) -> Optional[Solution]:
        if self.solution is None:
            return None
        return Solution(chosen=tuple(self.solution))

    def to_json(self) -> str:
        return self.model_dump_json(exclude={key for key in ("head_count", "trace") if getattr(self, key) is None})


class OracleConfig(BaseModel):
    """Brute-force oracle limits and mode."""
    max_family_size: int = Field(24, ge=0)
    pch_mode: bool = False
    shared_heads: bool = False


class RunConfig(BaseModel):
    """One CLI invocation."""
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    node_budget: Optional[int] = Field(None, ge=0)
    seed: Optional[int] = None
    shared_heads: bool = False
    min_pi_size: int = Field(1, ge=1)
    parallel: bool = False
    pretty: bool = False


def family_sets(family: SetFamily) -> Tuple[FrozenSet[int], ...]:
    """Members of a family as frozensets, index-aligned."""
    return tuple(frozenset(member) for member in family.members)
