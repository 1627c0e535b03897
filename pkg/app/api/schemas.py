# app/api/schemas.py
"""Pydantic schemas for CLI input and JSON/JSONL output."""
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator

SCHEMA_VERSION = 1


# ============================================================================
# Input
# ============================================================================


class PolytopeInput(BaseModel):
    """A polytope given by (possibly redundant) integer points."""

    vertices: list[list[int]]

    @field_validator("vertices")
    @classmethod
    def check_shape(cls, v: list[list[int]]) -> list[list[int]]:
        if not v:
            raise ValueError("vertex list is empty")
        if len({len(p) for p in v}) != 1:
            raise ValueError("vertices have different lengths")
        return v


class RunConfig(BaseModel):
    """Parameters a result was produced under."""

    command: str
    width_bound: int = 3
    join_pair_cap: int = 20_000
    jobs: int = 1
    dedup_iso: bool = False
    version: str = ""


# ============================================================================
# Invariant Reports
# ============================================================================


class VerdictModel(BaseModel):
    name: str
    passed: bool
    applicable: bool = True
    detail: dict[str, Any] = Field(default_factory=dict)


class EhrhartResponse(BaseModel):
    """h* and the quantities read off it."""

    dim: int
    hstar: list[int]
    degree: int
    codegree: int
    volume: int
    dilate_counts: list[int]
    run_config: RunConfig


class LocalHStarResponse(BaseModel):
    dim: int
    lstar: list[int]
    thin: bool
    trivially_thin: bool
    checks: list[VerdictModel] = Field(default_factory=list)
    run_config: RunConfig


class GPolyResponse(BaseModel):
    """Toric f, g, h of the proper-face poset [∅, P)."""

    dim: int
    f_vector: list[int]
    f: list[int]
    g: list[int]
    h: list[int]
    run_config: RunConfig


class GorensteinResponse(BaseModel):
    dim: int
    gorenstein: bool
    codegree: int
    hstar: list[int]
    interior_point: Optional[list[int]] = None
    dual_vertices: Optional[list[list[int]]] = None
    checks: list[VerdictModel] = Field(default_factory=list)
    run_config: RunConfig


class WidthResponse(BaseModel):
    width: int
    direction: list[int]
    bound: int
    exact_within_bound: bool
    run_config: RunConfig


class Classification3DResponse(BaseModel):
    """Verdict of the three-dimensional thinness classifier."""

    verdict: str
    witness: dict[str, Any] = Field(default_factory=dict)
    lstar: list[int]
    lstar_closed_form: list[int]
    criterion: bool
    checks: list[VerdictModel] = Field(default_factory=list)
    run_config: RunConfig


class InvariantsResponse(BaseModel):
    """Everything computable for one polytope."""

    dim: int
    vertices: list[list[int]]
    n_vertices: int
    f_vector: list[int]
    volume: int
    hstar: list[int]
    degree: int
    codegree: int
    lstar: list[int]
    g: list[int]
    h: list[int]
    thin: bool
    trivially_thin: bool
    hollow: bool
    spanning: bool
    width: int
    width_direction: list[int]
    pyramid: bool
    gorenstein: bool
    newton_number: Optional[int] = None
    box: Optional[list[int]] = None
    checks: list[VerdictModel] = Field(default_factory=list)
    run_config: RunConfig


# ============================================================================
# Enumeration Log
# ============================================================================


class EnumRecordModel(BaseModel):
    """One classified simplex, one JSONL line."""

    kind: Literal["record"] = "record"
    schema_version: int = SCHEMA_VERSION
    dim: int
    volume: int
    hnf: list[list[int]]
    hstar: list[int]
    lstar: list[int]
    quotient_invariants: list[int] = Field(default_factory=list)
    thin: bool
    trivially_thin: bool
    pyramid: bool
    free_join_found: bool
    cyclic_quotient: bool
    spanning: bool
    resolution: Optional[str] = None


class BucketMarker(BaseModel):
    """Written after every record of one volume has been logged."""

    kind: Literal["bucket_done"] = "bucket_done"
    schema_version: int = SCHEMA_VERSION
    dim: int
    volume: int
    count: int


class Question1Report(BaseModel):
    """Flag statistics and unresolved thin simplices of a scan."""

    total: int
    thin: int
    flag_combinations: dict[str, int] = Field(default_factory=dict)
    resolutions: dict[str, int] = Field(default_factory=dict)
    counterexamples: list[EnumRecordModel] = Field(default_factory=list)
    dims: list[int] = Field(default_factory=list)
    max_volume: int = 0
    run_config: Optional[RunConfig] = None


# ============================================================================
# Golden Values
# ============================================================================


class GoldenCase(BaseModel):
    """Expected values for one named reproduction case."""

    name: str
    expected: dict[str, Any]


class GoldenFile(BaseModel):
    schema_version: int = SCHEMA_VERSION
    cases: list[GoldenCase]

    def by_name(self) -> dict[str, GoldenCase]:
        return {case.name: case for case in self.cases}
