# tests/e2e/conftest.py
"""E2E test configuration and fixtures."""
import pytest


@pytest.fixture
def campaign_dir(tmp_path_factory):
    """Fresh results directory for one campaign."""
    return tmp_path_factory.mktemp("campaign")
