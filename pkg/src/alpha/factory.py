"""
Turns declarative AlphaSpec values into predicate objects.
"""
import logging
from typing import Any, Dict, Optional, Union

import numpy as np
from pydantic import ValidationError

from ..graph.model import graph_distance_matrix, neighbor_sets
from ..schema.models import AlphaKind, AlphaSpec, Graph, PatternClassKind, PredicateConfigError, Universe
from .predicates import (
    ConjunctionPredicate,
    DenseOverlapPredicate,
    DensityPredicate,
    DistancePredicate,
    MeasurePredicate,
    MetricPredicate,
    OverlapPredicate,
    PatternPredicate,
    PropertyPredicate,
    SizePredicate,
    WeightPredicate,
)

# Set up logger
logger = logging.getLogger(__name__)


def _require(value: Any, name: str, kind: AlphaKind) -> Any:
    if value is None:
        raise PredicateConfigError(
            f"alpha kind '{kind.value}' needs parameter '{name}'",
            {"kind": kind.value, "parameter": name},
        )
    return value


def _non_negative(value: Any, name: str, kind: AlphaKind) -> Any:
    _require(value, name, kind)
    if value < 0:
        raise PredicateConfigError(
            f"alpha parameter '{name}' must be non-negative, got {value}",
            {"kind": kind.value, "parameter": name},
        )
    return value


def _non_negative_int(value: Any, name: str, kind: AlphaKind) -> int:
    _non_negative(value, name, kind)
    if int(value) != value:
        raise PredicateConfigError(
            f"alpha parameter '{name}' must be an integer, got {value}",
            {"kind": kind.value, "parameter": name},
        )
    return int(value)


def _positive_distance(spec: AlphaSpec) -> float:
    d_t = _require(spec.d_t, "d_t", spec.kind)
    if d_t <= 0:
        raise PredicateConfigError(
            f"alpha kind '{spec.kind.value}' needs d_t > 0, got {d_t}",
            {"kind": spec.kind.value, "parameter": "d_t"},
        )
    return float(d_t)


def _missing(kind: AlphaKind, what: str) -> PredicateConfigError:
    return PredicateConfigError(
        f"alpha kind '{kind.value}' requires {what}",
        {"kind": kind.value, "missing": what},
    )


class _GraphContext:
    """Lazily derived views of the graph shared by all parts of one predicate."""

    def __init__(self, graph: Optional[Graph]):
        self.graph = graph
        self._adjacency = None
        self._distances = None

    def adjacency(self, kind: AlphaKind):
        if self.graph is None:
            raise _missing(kind, "graph context")
        if self._adjacency is None:
            self._adjacency = neighbor_sets(self.graph)
        return self._adjacency

    def distances(self, kind: AlphaKind) -> np.ndarray:
        if self.graph is None:
            raise _missing(kind, "graph context")
        if self._distances is None:
            self._distances = graph_distance_matrix(self.graph)
        return self._distances


def _build(spec: AlphaSpec, universe: Universe, context: _GraphContext) -> OverlapPredicate:
    kind = spec.kind

    if kind == AlphaKind.SIZE:
        return SizePredicate(_non_negative_int(spec.t, "t", kind))

    if kind == AlphaKind.WEIGHT:
        w_t = _non_negative(spec.w_t, "w_t", kind)
        if universe.weights is None:
            raise _missing(kind, "universe weights")
        return WeightPredicate(universe.weights, w_t)

    if kind == AlphaKind.MEASURE:
        t = _non_negative(spec.t, "t", kind)
        values = _require(spec.values, "values", kind)
        if len(values) != universe.size:
            raise PredicateConfigError(
                f"measure values has {len(values)} entries, expected {universe.size}",
                {"kind": kind.value, "parameter": "values"},
            )
        if any(not np.isfinite(v) or v < 0 for v in values):
            raise PredicateConfigError(
                "measure values must be finite and non-negative",
                {"kind": kind.value, "parameter": "values"},
            )
        return MeasurePredicate(values, t)

    if kind == AlphaKind.METRIC:
        d_t = _positive_distance(spec)
        distances = universe.distance_matrix()
        if distances is None:
            raise _missing(kind, "universe distances")
        return MetricPredicate(distances, d_t)

    if kind == AlphaKind.DISTANCE:
        d_t = _positive_distance(spec)
        return DistancePredicate(context.distances(kind), d_t)

    if kind == AlphaKind.PROPERTY:
        if universe.properties is None:
            raise _missing(kind, "universe properties")
        return PropertyPredicate(universe.properties)

    if kind == AlphaKind.PATTERN:
        pattern_class = _require(spec.pattern_class, "class", kind)
        if pattern_class == PatternClassKind.FORBIDDEN_INDUCED and not spec.forbidden:
            raise PredicateConfigError(
                "pattern class 'forbidden_induced' needs a non-empty 'forbidden' list",
                {"kind": kind.value, "parameter": "forbidden"},
            )
        return PatternPredicate(context.adjacency(kind), pattern_class, spec.forbidden or ())

    if kind == AlphaKind.DENSE_OVERLAP:
        c = _non_negative_int(spec.c, "c", kind)
        return DenseOverlapPredicate(context.adjacency(kind), c)

    if kind == AlphaKind.DENSITY:
        t = _non_negative_int(spec.t, "t", kind)
        c = _non_negative_int(spec.c, "c", kind)
        return DensityPredicate(context.adjacency(kind), t, c)

    if kind == AlphaKind.CONJUNCTION:
        parts = _require(spec.parts, "parts", kind)
        if not parts:
            raise PredicateConfigError("conjunction needs at least one part", {"kind": kind.value})
        return ConjunctionPredicate([_build(part, universe, context) for part in parts])

    raise PredicateConfigError(f"unknown alpha kind '{kind}'", {"kind": str(kind)})


def build_predicate(spec: Union[AlphaSpec, Dict[str, Any]], universe: Universe,
                    graph_context: Optional[Graph] = None) -> OverlapPredicate:
    """
    Build the predicate described by `spec` over `universe`.

    Args:
        spec: AlphaSpec or its JSON dict form
        universe: Universe supplying weights, flags and distances
        graph_context: Graph over the universe, needed by graph-based kinds

    Returns:
        The constructed predicate

    Raises:
        PredicateConfigError: unknown kind, bad parameters or missing context
    """
    if not isinstance(spec, AlphaSpec):
        try:
            spec = AlphaSpec.model_validate(spec)
        except ValidationError as e:
            raise PredicateConfigError(
                f"invalid alpha spec: {e.errors()[0]['msg']}",
                {"spec": spec},
            )
    if graph_context is not None and graph_context.n != universe.size:
        raise PredicateConfigError(
            f"graph has {graph_context.n} vertices but universe has {universe.size} elements"
        )
    predicate = _build(spec, universe, _GraphContext(graph_context))
    logger.debug(f"Built predicate {predicate.describe()}")
    return predicate
