import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def systems():
    return ROOT / "systems"


@pytest.fixture
def schema():
    import json

    return json.loads((ROOT / "schema" / "report.schema.json").read_text())
