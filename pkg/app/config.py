"""
Pydantic Settings Configuration for the lattice invariants toolkit
"""
from functools import lru_cache
from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

PACKAGE_DIR = Path(__file__).parent


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Geometry
    width_bound: int = Field(
        default=3,
        description="Coordinate bound B for the lattice width direction search",
    )
    join_pair_cap: int = Field(
        default=20_000,
        description="Maximum number of face pairs scanned by join searches",
    )

    # Enumeration
    enum_jobs: int = Field(
        default=1,
        description="Worker processes used by simplex enumeration",
    )
    dedup_iso: bool = Field(
        default=False,
        description="Deduplicate enumerated simplices up to unimodular equivalence",
    )
    results_dir: Path = Field(
        default=Path("results"),
        description="Directory for enumeration logs",
    )

    # Golden values
    golden_path: Path = Field(
        default=PACKAGE_DIR / "static" / "golden.json",
        description="Golden values checked by verify-paper",
    )

    # Application
    app_env: str = Field(default="production")
    log_level: str = Field(default="INFO")

    @field_validator("results_dir", "golden_path", mode="before")
    @classmethod
    def parse_path(cls, v):
        if isinstance(v, str):
            return Path(v)
        return v

    @field_validator("width_bound", "enum_jobs")
    @classmethod
    def check_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience access
settings = get_settings()
