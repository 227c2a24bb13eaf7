"""
Reproducible random instance generator.

All randomness flows from one `random.Random(seed)`, so the same
config and seed always give the same instance, byte for byte once
serialized.
"""
import logging
import random
from itertools import combinations
from math import comb
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ..alpha.factory import build_predicate
from ..config import GENERATOR_MAX_N
from ..graph.reduction import graph_universe
from ..schema.models import (
    AlphaKind,
    AlphaSpec,
    ElementSet,
    GeneratorConfigError,
    Graph,
    GraphInstance,
    PiKind,
    PiSpec,
    PredicateConfigError,
    SetFamily,
    SetSystemInstance,
    Universe,
)

# Set up logger
logger = logging.getLogger(__name__)

# Below this many candidate sets the generator samples from the full list
_ENUMERATE_LIMIT = 4096


class GeneratorConfig(BaseModel):
    """Parameters for one generated instance."""
    graph: bool = Field(False, description="Generate a graph instance instead of a set system")
    n: int = Field(10, ge=1, description="Universe size / vertex count")
    m: int = Field(15, ge=0, description="Number of sets (set systems only)")
    r: int = Field(3, ge=1)
    k: int = Field(2, ge=1)
    alpha: AlphaSpec = Field(default_factory=lambda: AlphaSpec(kind=AlphaKind.SIZE, t=1))
    pi: Optional[PiSpec] = Field(None, description="Community property; defaults to clique")
    edge_probability: float = Field(0.3, ge=0.0, le=1.0)
    with_edges: bool = Field(False, description="Attach a random graph to a set system")
    heads: int = Field(0, ge=0, description="Number of cluster heads")
    head_size: int = Field(1, ge=1)
    max_weight: float = Field(2.0, ge=0.0)
    coordinate_range: int = Field(10, ge=1, description="Side of the grid metric points are drawn from")


def random_weights(rng: random.Random, n: int, high: float = 2.0) -> Tuple[float, ...]:
    return tuple(round(rng.uniform(0.0, high), 2) for _ in range(n))


def random_flags(rng: random.Random, n: int, p_true: float = 0.7) -> Tuple[bool, ...]:
    return tuple(rng.random() < p_true for _ in range(n))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph(n=n, edges=edges)


def random_metric(rng: random.Random, n: int, side: int = 10) -> Tuple[Tuple[float, ...], ...]:
    """
    Shortest-path closure of rounded Euclidean distances between random grid points.

    Rounding can break the triangle inequality; the closure restores it.
    """
    if n == 0:
        return ()
    points = np.array([[rng.randint(0, side), rng.randint(0, side)] for _ in range(n)], dtype=float)
    d = np.rint(np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1))
    for v in range(n):
        d = np.minimum(d, d[:, v][:, None] + d[v, :][None, :])
    return tuple(tuple(float(x) for x in row) for row in d)


def random_sets(rng: random.Random, n: int, m: int, r: int) -> List[ElementSet]:
    """m distinct non-empty subsets of {0..n-1} with at most r elements."""
    available = sum(comb(n, size) for size in range(1, r + 1))
    if m > available:
        raise GeneratorConfigError(
            f"cannot draw {m} distinct sets: only {available} subsets of size 1..{r} over {n} elements",
            {"m": m, "available": available},
        )
    if available <= _ENUMERATE_LIMIT:
        every = [s for size in range(1, r + 1) for s in combinations(range(n), size)]
        return rng.sample(every, m)
    chosen: List[ElementSet] = []
    seen = set()
    while len(chosen) < m:
        size = rng.randint(1, r)
        s = tuple(sorted(rng.sample(range(n), size)))
        if s not in seen:
            seen.add(s)
            chosen.append(s)
    return chosen


def fill_alpha(rng: random.Random, spec: AlphaSpec, n: int, max_weight: float = 2.0) -> AlphaSpec:
    """Supply random per-element values for measure specs, recursing into conjunctions."""
    if spec.kind == AlphaKind.MEASURE and spec.values is None:
        values = random_weights(rng, n, max_weight)
        return spec.model_copy(update={"values": values, "t": spec.t if spec.t is not None else 1.0})
    if spec.kind == AlphaKind.CONJUNCTION and spec.parts:
        return spec.model_copy(update={"parts": tuple(fill_alpha(rng, part, n, max_weight) for part in spec.parts)})
    return spec


def random_context(rng: random.Random, spec: AlphaSpec, n: int,
                   edge_probability: float = 0.4) -> Tuple[AlphaSpec, Universe, Graph]:
    """
    A fully annotated universe and random graph on n elements for `spec`.

    Every annotation is drawn whether or not the spec uses it, so the
    stream of random numbers does not depend on the predicate kind.
    """
    spec = fill_alpha(rng, spec, n)
    universe = Universe(
        size=n,
        weights=random_weights(rng, n),
        properties=random_flags(rng, n),
        distances=random_metric(rng, n),
    )
    return spec, universe, random_graph(rng, n, edge_probability)


class InstanceGenerator:
    """Draws random instances from a GeneratorConfig."""

    def __init__(self, config: GeneratorConfig, seed: int):
        self.config = config
        self.seed = seed
        self.rng = random.Random(seed)
        self._check()

    def _check(self) -> None:
        cfg = self.config
        if cfg.n > GENERATOR_MAX_N:
            raise GeneratorConfigError(f"n={cfg.n} exceeds the generator cap of {GENERATOR_MAX_N}", {"n": cfg.n})
        if cfg.r > cfg.n:
            raise GeneratorConfigError(f"r={cfg.r} exceeds n={cfg.n}", {"r": cfg.r, "n": cfg.n})
        if cfg.heads and cfg.head_size > cfg.r:
            raise GeneratorConfigError(
                f"head_size={cfg.head_size} exceeds r={cfg.r}", {"head_size": cfg.head_size}
            )
        if cfg.pi is not None and not cfg.graph:
            raise GeneratorConfigError("a pi spec only applies to graph instances")

    def fill_alpha(self, spec: AlphaSpec) -> AlphaSpec:
        return fill_alpha(self.rng, spec, self.config.n, self.config.max_weight)

    def _heads(self) -> Optional[List[ElementSet]]:
        cfg = self.config
        if not cfg.heads:
            return None
        drawn = [tuple(sorted(self.rng.sample(range(cfg.n), cfg.head_size))) for _ in range(cfg.heads)]
        return list(dict.fromkeys(drawn))

    def set_instance(self) -> SetSystemInstance:
        cfg = self.config
        alpha = self.fill_alpha(cfg.alpha)
        needs = alpha.requirements()
        members = random_sets(self.rng, cfg.n, cfg.m, cfg.r)
        weights = random_weights(self.rng, cfg.n, cfg.max_weight) if "weights" in needs else None
        properties = random_flags(self.rng, cfg.n) if "properties" in needs else None
        distances = random_metric(self.rng, cfg.n, cfg.coordinate_range) if "distances" in needs else None
        graph = None
        if "graph" in needs or cfg.with_edges:
            graph = random_graph(self.rng, cfg.n, cfg.edge_probability)
        return SetSystemInstance(
            universe=Universe(size=cfg.n, weights=weights, properties=properties, distances=distances),
            family=SetFamily(members=members, r=cfg.r),
            k=cfg.k,
            alpha=alpha,
            cluster_heads=self._heads(),
            graph=graph,
        )

    def graph_instance(self) -> GraphInstance:
        cfg = self.config
        alpha = self.fill_alpha(cfg.alpha)
        needs = alpha.requirements()
        graph = random_graph(self.rng, cfg.n, cfg.edge_probability)
        return GraphInstance(
            graph=graph,
            r=cfg.r,
            k=cfg.k,
            pi=cfg.pi or PiSpec(kind=PiKind.CLIQUE),
            alpha=alpha,
            cluster_heads=self._heads(),
            weights=random_weights(self.rng, cfg.n, cfg.max_weight) if "weights" in needs else None,
            properties=random_flags(self.rng, cfg.n) if "properties" in needs else None,
        )

    def generate(self) -> Union[SetSystemInstance, GraphInstance]:
        instance = self.graph_instance() if self.config.graph else self.set_instance()
        try:
            if self.config.graph:
                build_predicate(instance.alpha, graph_universe(instance), instance.graph)
            else:
                build_predicate(instance.alpha, instance.universe, instance.graph)
        except PredicateConfigError as e:
            raise GeneratorConfigError(e.error, e.details)
        logger.info(f"Generated {'graph' if self.config.graph else 'set'} instance with seed {self.seed}")
        return instance


def gen(config: GeneratorConfig, seed: int) -> Union[SetSystemInstance, GraphInstance]:
    """Generate one instance; identical (config, seed) pairs give identical instances."""
    return InstanceGenerator(config, seed).generate()
