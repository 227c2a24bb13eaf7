"""
Graph instances: JSON I/O, reduction to set packing, and a graph-side brute force.
"""
import json
import logging
from itertools import combinations
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from ..alpha.factory import build_predicate
from ..alpha.predicates import MemoizedPredicate
from ..core.instance import describe_validation_error, load_json, resolve_elements
from ..schema.models import (
    AlphaSpec,
    ElementSet,
    Graph,
    GraphInstance,
    InstanceFormatError,
    PiSpec,
    PredicateConfigError,
    SetSystemInstance,
    Universe,
)
from .model import graph_distance_matrix
from .pi import enumerate_pi_subgraphs, iter_pi_subgraphs

# Set up logger
logger = logging.getLogger(__name__)

GRAPH_KEYS = (
    "vertices", "edges", "r", "k", "pi", "weights", "properties", "names",
    "alpha", "cluster_heads",
)
REQUIRED_GRAPH_KEYS = ("vertices", "r", "k", "pi", "alpha")


def is_graph_payload(payload: Any) -> bool:
    return isinstance(payload, dict) and "vertices" in payload


def parse_graph_instance(data: Union[bytes, str, Dict[str, Any]]) -> GraphInstance:
    """
    Parse and validate a graph instance.

    Raises:
        InstanceFormatError: on any syntax, schema or consistency problem
    """
    payload = data if isinstance(data, dict) else load_json(data)
    if not isinstance(payload, dict):
        raise InstanceFormatError("graph instance must be a JSON object")
    unknown = sorted(set(payload) - set(GRAPH_KEYS))
    if unknown:
        raise InstanceFormatError(f"unknown graph instance field(s): {', '.join(unknown)}", {"fields": unknown})
    missing = [key for key in REQUIRED_GRAPH_KEYS if key not in payload]
    if missing:
        raise InstanceFormatError(f"missing graph instance field(s): {', '.join(missing)}", {"fields": missing})

    names = payload.get("names")
    name_index = {name: i for i, name in enumerate(names)} if isinstance(names, list) else None
    heads = payload.get("cluster_heads")
    if heads is not None:
        if not isinstance(heads, list):
            raise InstanceFormatError("cluster_heads must be a list")
        heads = [resolve_elements(head, name_index, f"cluster head {i}") for i, head in enumerate(heads)]
    edges = payload.get("edges", [])
    if not isinstance(edges, list):
        raise InstanceFormatError("edges must be a list")
    edges = [resolve_elements(edge, name_index, f"edge {i}") for i, edge in enumerate(edges)]

    try:
        gi = GraphInstance(
            graph=Graph(n=payload["vertices"], edges=edges),
            r=payload["r"],
            k=payload["k"],
            pi=PiSpec.model_validate(payload["pi"]),
            alpha=AlphaSpec.model_validate(payload["alpha"]),
            cluster_heads=heads,
            weights=payload.get("weights"),
            properties=payload.get("properties"),
            names=names,
        )
        universe = graph_universe(gi)
        build_predicate(gi.alpha, universe, gi.graph)
    except ValidationError as e:
        raise InstanceFormatError(describe_validation_error(e), {"errors": e.errors(include_url=False)})
    except PredicateConfigError as e:
        raise InstanceFormatError(e.error, e.details)
    return gi


def graph_instance_to_dict(gi: GraphInstance) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "vertices": gi.graph.n,
        "edges": [list(edge) for edge in gi.graph.edges],
        "r": gi.r,
        "k": gi.k,
        "pi": gi.pi.model_dump(mode="json", exclude_none=True),
    }
    for key in ("weights", "properties", "names"):
        value = getattr(gi, key)
        if value is not None:
            payload[key] = list(value)
    payload["alpha"] = gi.alpha.to_json_dict()
    if gi.cluster_heads is not None:
        payload["cluster_heads"] = [list(head) for head in gi.cluster_heads]
    return payload


def serialize_graph_instance(gi: GraphInstance, pretty: bool = False) -> str:
    return json.dumps(graph_instance_to_dict(gi), indent=2 if pretty else None)


def graph_universe(gi: GraphInstance) -> Universe:
    """Universe over V(G) with the annotations the alpha spec needs."""
    distances = None
    if "distances" in gi.alpha.requirements():
        distances = tuple(tuple(float(d) for d in row) for row in graph_distance_matrix(gi.graph))
    return Universe(
        size=gi.graph.n,
        weights=gi.weights,
        properties=gi.properties,
        distances=distances,
        names=gi.names,
    )


def reduce_to_set_instance(gi: GraphInstance, min_pi_size: int = 1) -> SetSystemInstance:
    """
    Set-packing instance whose solutions are exactly the graph's Π-packings.

    The universe is V(G), the family is every induced Π-subgraph of order
    min_pi_size..r, and the graph travels along as predicate context.
    """
    family = enumerate_pi_subgraphs(gi.graph, gi.pi, gi.r, min_size=min_pi_size)
    instance = SetSystemInstance(
        universe=graph_universe(gi),
        family=family,
        k=gi.k,
        alpha=gi.alpha,
        cluster_heads=gi.cluster_heads,
        graph=gi.graph,
    )
    logger.info(f"Reduced graph instance to {len(family)} candidate sets over {gi.graph.n} elements")
    return instance


def brute_force_graph_packing(gi: GraphInstance, min_pi_size: int = 1) -> Optional[List[ElementSet]]:
    """
    First k Π-subgraphs (as vertex sets) that pairwise pass the overlap predicate.

    Works directly on the graph: Π-subgraphs are generated on the fly and
    every k-combination is checked. Cluster heads are not considered.
    """
    pred = MemoizedPredicate(build_predicate(gi.alpha, graph_universe(gi), gi.graph))
    candidates = [frozenset(s) for s in iter_pi_subgraphs(gi.graph, gi.pi, gi.r, min_pi_size)]
    for combo in combinations(candidates, gi.k):
        if all(not pred.conflicts(a, b) for a, b in combinations(combo, 2)):
            return [tuple(sorted(s)) for s in combo]
    return None
