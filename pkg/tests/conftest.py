"""
Test fixtures for overlap-pack.
"""
import json
from typing import Any, Dict, List

import pytest

from helpers import make_instance


@pytest.fixture
def instance_factory():
    """Build validated set instances from lists."""
    return make_instance


@pytest.fixture
def path_metric() -> List[List[float]]:
    """Path metric on 0-1-2-3-4."""
    return [[abs(u - v) for v in range(5)] for u in range(5)]


@pytest.fixture
def vertex_sharing_triangles() -> Dict[str, Any]:
    """Triangles {0,1,2} and {2,3,4} sharing vertex 2."""
    return {
        "vertices": 5,
        "edges": [[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [2, 4]],
        "r": 3,
        "k": 2,
        "pi": {"kind": "family", "family": [{"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}]},
        "alpha": {"kind": "size", "t": 1},
    }


@pytest.fixture
def edge_sharing_triangles() -> Dict[str, Any]:
    """Triangles {0,1,2} and {1,2,3} sharing edge {1,2}."""
    return {
        "vertices": 4,
        "edges": [[0, 1], [1, 2], [0, 2], [1, 3], [2, 3]],
        "r": 3,
        "k": 2,
        "pi": {"kind": "family", "family": [{"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}]},
        "alpha": {"kind": "size", "t": 1},
    }


@pytest.fixture
def write_json(tmp_path):
    """Write a payload to a temporary JSON file and return its path."""
    def _write(payload: Dict[str, Any], name: str = "instance.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write
