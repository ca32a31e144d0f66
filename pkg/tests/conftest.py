import copy
import json

import pytest

from scall import validate_model
from scall.ahp import TradeoffVector


def e1_doc() -> dict:
    """Two components, two units, one resource; every cost expands by hand."""
    return {
        "resources": [{"id": "mem", "name": "Memory", "unit": "MB"}],
        "units": [
            {"id": "h1", "name": "Host 1", "kind": "CPU"},
            {"id": "h2", "name": "Host 2", "kind": "GPU"},
        ],
        "components": [
            {"id": "s1", "name": "Sensor", "allowedUnits": []},
            {"id": "s2", "name": "Filter", "allowedUnits": []},
        ],
        "T": [[[2], [4]], [[3], [1]]],
        "R": [[5], [5]],
        "K": [[0, 2], [2, 0]],
        "C": [[0, 1], [1, 0]],
        "B": [[0, 10], [10, 0]],
    }


def e1_variant(**overrides) -> dict:
    doc = copy.deepcopy(e1_doc())
    doc.update(overrides)
    return doc


F_E1 = TradeoffVector(f=(0.5,), fc=0.5)


@pytest.fixture
def e1_model():
    return validate_model(e1_doc())


@pytest.fixture
def e1_file(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(e1_doc()))
    return path
