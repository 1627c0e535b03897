"""
Unit tests for application settings.
"""
from pathlib import Path

import pytest
from pydantic import ValidationError

from app.config import PACKAGE_DIR, Settings


class TestSettings:
    """Tests for environment-driven configuration."""

    def test_defaults(self, monkeypatch):
        """Test defaults when nothing is set."""
        for name in ("WIDTH_BOUND", "JOIN_PAIR_CAP", "ENUM_JOBS", "DEDUP_ISO", "RESULTS_DIR", "GOLDEN_PATH"):
            monkeypatch.delenv(name, raising=False)
        s = Settings(_env_file=None)
        assert s.width_bound == 3
        assert s.join_pair_cap == 20_000
        assert s.enum_jobs == 1
        assert s.dedup_iso is False
        assert s.golden_path == PACKAGE_DIR / "static" / "golden.json"

    def test_environment_overrides(self, monkeypatch, tmp_path):
        """Test that environment variables override defaults."""
        monkeypatch.setenv("WIDTH_BOUND", "5")
        monkeypatch.setenv("DEDUP_ISO", "true")
        monkeypatch.setenv("RESULTS_DIR", str(tmp_path))
        s = Settings(_env_file=None)
        assert s.width_bound == 5
        assert s.dedup_iso is True
        assert s.results_dir == Path(tmp_path)

    @pytest.mark.parametrize("name", ["WIDTH_BOUND", "ENUM_JOBS"])
    def test_positive_bounds(self, monkeypatch, name):
        """Test that zero bounds are rejected."""
        monkeypatch.setenv(name, "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_packaged_golden_file_exists(self):
        """Test that the default golden file ships with the package."""
        assert (PACKAGE_DIR / "static" / "golden.json").is_file()
