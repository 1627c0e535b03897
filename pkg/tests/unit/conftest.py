# tests/unit/conftest.py
"""Shared fixtures for unit tests."""
import os

import pytest

# Set environment variables BEFORE any app imports
os.environ.setdefault("ENUM_JOBS", "1")
os.environ.setdefault("DEDUP_ISO", "false")


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON-serializable payload to a temp file and return its path."""
    import json

    def _write(payload, name: str = "polytope.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write
