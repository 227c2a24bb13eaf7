"""
Reading and writing the JSON set-system instance format.
"""
import json
import logging
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from ..alpha.factory import build_predicate
from ..schema.models import (
    AlphaSpec,
    Graph,
    InstanceFormatError,
    PredicateConfigError,
    SetFamily,
    SetSystemInstance,
    Universe,
)

# Set up logger
logger = logging.getLogger(__name__)

# Canonical key order of the instance format
INSTANCE_KEYS = (
    "universe", "r", "k", "sets", "weights", "properties", "distances",
    "names", "edges", "alpha", "cluster_heads",
)
REQUIRED_KEYS = ("universe", "r", "k", "sets", "alpha")


def describe_validation_error(e: ValidationError) -> str:
    """First pydantic error as a one-line message."""
    first = e.errors()[0]
    message = first["msg"]
    if message.startswith("Value error, "):
        message = message[len("Value error, "):]
    location = ".".join(str(part) for part in first.get("loc", ()))
    return f"{location}: {message}" if location else message


def load_json(data: Union[bytes, str]) -> Any:
    """Decode UTF-8 JSON text, mapping failures to InstanceFormatError."""
    try:
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return json.loads(data)
    except UnicodeDecodeError as e:
        raise InstanceFormatError(f"input is not valid UTF-8: {e}")
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}")


def resolve_elements(member: Any, names: Optional[Dict[str, int]], what: str) -> List[int]:
    """Map one set of element references (indices or names) to indices."""
    if not isinstance(member, list):
        raise InstanceFormatError(f"{what} must be a list of elements, got {member!r}")
    resolved = []
    for element in member:
        if isinstance(element, bool):
            raise InstanceFormatError(f"{what} contains a boolean element")
        if isinstance(element, int):
            resolved.append(element)
        elif isinstance(element, str) and names is not None and element in names:
            resolved.append(names[element])
        else:
            raise InstanceFormatError(f"{what} references unknown element {element!r}")
    return resolved


def parse_instance(data: Union[bytes, str, Dict[str, Any]]) -> SetSystemInstance:
    """
    Parse and fully validate a set-system instance.

    Args:
        data: UTF-8 JSON text (bytes or str) or an already decoded dict

    Returns:
        Validated instance with canonically sorted sets

    Raises:
        InstanceFormatError: on any syntax, schema or consistency problem
    """
    payload = data if isinstance(data, dict) else load_json(data)
    if not isinstance(payload, dict):
        raise InstanceFormatError("instance must be a JSON object")

    unknown = sorted(set(payload) - set(INSTANCE_KEYS))
    if unknown:
        raise InstanceFormatError(f"unknown instance field(s): {', '.join(unknown)}", {"fields": unknown})
    missing = [key for key in REQUIRED_KEYS if key not in payload]
    if missing:
        raise InstanceFormatError(f"missing instance field(s): {', '.join(missing)}", {"fields": missing})

    names = payload.get("names")
    name_index = {name: i for i, name in enumerate(names)} if isinstance(names, list) else None
    if not isinstance(payload["sets"], list):
        raise InstanceFormatError("sets must be a list")
    sets = [resolve_elements(member, name_index, f"set {i}") for i, member in enumerate(payload["sets"])]
    heads = payload.get("cluster_heads")
    if heads is not None:
        if not isinstance(heads, list):
            raise InstanceFormatError("cluster_heads must be a list")
        heads = [resolve_elements(head, name_index, f"cluster head {i}") for i, head in enumerate(heads)]

    try:
        universe = Universe(
            size=payload["universe"],
            weights=payload.get("weights"),
            properties=payload.get("properties"),
            distances=payload.get("distances"),
            names=names,
        )
        graph = None
        if payload.get("edges") is not None:
            graph = Graph(n=universe.size, edges=payload["edges"])
        instance = SetSystemInstance(
            universe=universe,
            family=SetFamily(members=sets, r=payload["r"]),
            k=payload["k"],
            alpha=AlphaSpec.model_validate(payload["alpha"]),
            cluster_heads=heads,
            graph=graph,
        )
        build_predicate(instance.alpha, instance.universe, instance.graph)
    except ValidationError as e:
        raise InstanceFormatError(describe_validation_error(e), {"errors": e.errors(include_url=False)})
    except PredicateConfigError as e:
        raise InstanceFormatError(e.error, e.details)

    logger.info(
        f"Parsed instance: n={instance.universe.size}, m={len(instance.family)}, "
        f"r={instance.r}, k={instance.k}, alpha={instance.alpha.kind.value}"
    )
    return instance


def instance_to_dict(instance: SetSystemInstance) -> Dict[str, Any]:
    """JSON-ready dict in canonical key order; absent optionals are omitted."""
    universe = instance.universe
    payload: Dict[str, Any] = {
        "universe": universe.size,
        "r": instance.r,
        "k": instance.k,
        "sets": [list(member) for member in instance.family.members],
    }
    if universe.weights is not None:
        payload["weights"] = list(universe.weights)
    if universe.properties is not None:
        payload["properties"] = list(universe.properties)
    if universe.distances is not None:
        payload["distances"] = [list(row) for row in universe.distances]
    if universe.names is not None:
        payload["names"] = list(universe.names)
    if instance.graph is not None:
        payload["edges"] = [list(edge) for edge in instance.graph.edges]
    payload["alpha"] = instance.alpha.to_json_dict()
    if instance.cluster_heads is not None:
        payload["cluster_heads"] = [list(head) for head in instance.cluster_heads]
    return payload


def serialize_instance(instance: SetSystemInstance, pretty: bool = False) -> str:
    """Inverse of parse_instance."""
    return json.dumps(instance_to_dict(instance), indent=2 if pretty else None)
