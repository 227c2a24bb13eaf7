"""
Shared helpers for the test suite.
"""
import json
import os
from itertools import permutations
from typing import Any, Dict, Iterable, List, Optional

from src.core.instance import parse_instance
from src.schema.models import SetSystemInstance

# Randomized sweeps run at acceptance scale only when this is set
FULL_SWEEP = os.getenv("OVERLAP_PACK_FULL_SWEEP", "").strip().lower() not in ("", "0", "false")


def sweep_count(full: int, quick: int) -> int:
    return full if FULL_SWEEP else quick


def make_instance(sets: List[List[Any]], k: int, alpha: Dict[str, Any], n: Optional[int] = None,
                  r: Optional[int] = None, **extra) -> SetSystemInstance:
    """Parse a set instance from its parts, inferring n and r when omitted."""
    elements = [e for member in sets for e in member if isinstance(e, int)]
    payload = {
        "universe": n if n is not None else (max(elements) + 1 if elements else 1),
        "r": r if r is not None else max([len(member) for member in sets] + [1]),
        "k": k,
        "sets": sets,
        "alpha": alpha,
    }
    payload.update(extra)
    return parse_instance(json.dumps(payload))


def is_restriction(slots: Iterable[Iterable[int]], solution_sets: List[Iterable[int]]) -> bool:
    """True iff the slots can be matched one-to-one into the solution sets by containment."""
    slots = [frozenset(s) for s in slots]
    targets = [frozenset(s) for s in solution_sets]
    if len(slots) != len(targets):
        return False
    return any(all(slot <= target for slot, target in zip(slots, order)) for order in permutations(targets))


def last_json_line(output: str) -> Dict[str, Any]:
    """The JSON report printed by a CLI command, ignoring any diagnostics around it."""
    for line in reversed(output.strip().splitlines()):
        if line.startswith("{"):
            return json.loads(line)
    raise AssertionError(f"no JSON report in output: {output!r}")
