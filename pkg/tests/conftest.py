import json

import pytest

from ewlgames import make_game


@pytest.fixture
def pd():
    """The canonical prisoner's dilemma with payoffs (R, S, T, P) = (3, 0, 5, 1)."""
    return make_game(("C", "D"), ("C", "D"), [[(3, 3), (0, 5)], [(5, 0), (1, 1)]])


@pytest.fixture
def write_json(tmp_path):
    """Write a dict to a temp JSON file and return its path as a string."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write
