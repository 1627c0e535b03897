"""
Golden reproduction suite

Handles:
- Named reproduction cases, each computing a JSON-friendly value dict
- Loading golden expectations (packaged or user supplied)
- Comparing computed values against the golden file, key by key
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from pydantic import ValidationError

from app.api.schemas import GoldenFile
from app.config import settings
from app.exceptions import InputError, VerificationFailure
from app.services.classify_enum import (
    classify_simplex,
    enumerate_simplices,
    lstar_3d,
    question1_scan,
    two_delta_family,
)
from app.services.counting import newton_number
from app.services.gorenstein import (
    dual_lstar_check,
    gorenstein_data,
    is_cayley_join,
    is_gorenstein_join,
    subdegree_law_check,
)
from app.services.intlinalg import IntMatrix, smith_normal_form
from app.services.local_hstar import is_trivially_thin, lstar, polytope_hstar
from app.services.polytope import (
    build,
    cube,
    dilate,
    free_join,
    is_lattice_pyramid,
    lattice_width,
    quotient_group,
    spanning_sublattice,
    standard_simplex,
    sublattice_view,
)
from app.services.poset_poly import proper_face_record

logger = logging.getLogger(__name__)

CaseFn = Callable[[], dict[str, Any]]

# Volume bound of the packaged tetrahedron scan
SCAN_3D_MAX_VOLUME = 5

_CASES: dict[str, CaseFn] = {}


def case(name: str) -> Callable[[CaseFn], CaseFn]:
    """Register a reproduction case under ``name``."""

    def register(fn: CaseFn) -> CaseFn:
        _CASES[name] = fn
        return fn

    return register


def case_names() -> list[str]:
    return sorted(_CASES)


# =============================================================================
# Data Classes
# =============================================================================


@dataclass
class CaseResult:
    name: str
    computed: dict[str, Any]
    expected: dict[str, Any]
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "mismatches": self.mismatches,
            "computed": self.computed,
            "expected": self.expected,
        }


@dataclass
class SuiteResult:
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {"passed": self.passed, "cases": [c.to_dict() for c in self.cases]}

    def raise_for_failures(self):
        if not self.passed:
            names = ", ".join(c.name for c in self.failures)
            raise VerificationFailure(f"golden mismatch in: {names}")


# =============================================================================
# Cases
# =============================================================================


@case("nonspanning_thin_4simplex")
def _nonspanning_thin_4simplex() -> dict[str, Any]:
    P = build([[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 2, 4, 0], [2, 1, 0, 4]])
    record = classify_simplex(P)
    span = spanning_sublattice(P)
    coarse = sublattice_view(P, span.basis, span.translation)
    witness = is_lattice_pyramid(coarse)
    base = coarse.face_polytope(witness.base) if witness is not None else None
    base_data = gorenstein_data(base) if base is not None else None
    v0 = P.vertices[0]
    diffs = IntMatrix.from_rows([[a - b for a, b in zip(p, v0)] for p in P.lattice_points()])
    return {
        "hstar": record.hstar.to_list(),
        "lstar": record.lstar.to_list(),
        "thin": record.thin,
        "trivially_thin": record.trivially_thin,
        "pyramid": record.pyramid,
        "free_join_found": record.free_join_found,
        "width": lattice_width(P, settings.width_bound).width,
        "sublattice_index": span.index,
        "lattice_point_invariants": list(smith_normal_form(diffs).invariant_factors),
        "quotient_invariants": list(quotient_group(P).invariant_factors),
        "coarse_pyramid": witness is not None,
        "coarse_base_volume": base.volume if base is not None else None,
        "coarse_base_reflexive": bool(
            base_data and base_data.is_gorenstein and base_data.codegree == 1
        ),
        "resolution": record.resolution,
    }


@case("non_gorenstein_5simplex_low_lstar_degree")
def _low_lstar_degree() -> dict[str, Any]:
    P = build(
        [
            [0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 1, 1, 2, 0],
            [5, 3, 3, 2, 6],
        ]
    )
    h, l = polytope_hstar(P), lstar(P)
    return {
        "hstar": h.to_list(),
        "lstar": l.to_list(),
        "lstar_degree": l.degree,
        "degree": h.degree,
        "gorenstein": gorenstein_data(P).is_gorenstein,
    }


@case("5simplex_small_leading_lstar")
def _small_leading_lstar() -> dict[str, Any]:
    P = build(
        [
            [0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [1, 1, 2, 0, 0],
            [3, 5, 6, 8, 0],
            [1, 1, 0, 0, 2],
        ]
    )
    h, l = polytope_hstar(P), lstar(P)
    return {
        "hstar": h.to_list(),
        "lstar": l.to_list(),
        "same_degree": l.degree == h.degree,
        "leading_coefficients": [l.leading_coefficient, h.leading_coefficient],
    }


@case("cube_gorenstein_duality")
def _cube_duality() -> dict[str, Any]:
    P = cube(3, -1, 1)
    data = gorenstein_data(P)
    verdict = dual_lstar_check(P)
    return {
        "lstar": lstar(P).to_list(),
        "lstar_closed_form": lstar_3d(P).to_list(),
        "gorenstein": data.is_gorenstein,
        "codegree": data.codegree,
        "dual_vertices": data.dual.n_vertices,
        "dual_lstar": lstar(data.dual).to_list(),
        "thin_and_degree_duality": verdict.passed,
    }


@case("cayley_join_tetrahedron")
def _cayley_tetrahedron() -> dict[str, Any]:
    P = build([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 1]])
    lattice = P.face_lattice()
    F = lattice.face_of([0, 1])
    G = lattice.face_of([2, 3])
    data = gorenstein_data(P)
    return {
        "hstar": polytope_hstar(P).to_list(),
        "lstar": lstar(P).to_list(),
        "gorenstein": data.is_gorenstein,
        "codegree": data.codegree,
        "cayley_join": is_cayley_join(P, F, G),
        "gorenstein_join": is_gorenstein_join(P, F, G),
        "factors_are_pyramids": [
            is_lattice_pyramid(P.face_polytope(F)) is not None,
            is_lattice_pyramid(P.face_polytope(G)) is not None,
        ],
        "pyramid": is_lattice_pyramid(P) is not None,
        "subdegree_law": subdegree_law_check(P).passed,
    }


@case("unit_cube_newton_number")
def _unit_cube() -> dict[str, Any]:
    P = cube(3)
    record = proper_face_record(P)
    return {
        "newton_number": newton_number(P, allow_non_simplex=True),
        "hstar": polytope_hstar(P).to_list(),
        "lstar": lstar(P).to_list(),
        "lstar_closed_form": lstar_3d(P).to_list(),
        "g": record.g.to_list(),
        "h": record.h.to_list(),
        "gorenstein": gorenstein_data(P).is_gorenstein,
        "double_simplex_thin": lstar(dilate(standard_simplex(3), 2)).is_zero,
    }


@case("triangle_join_double_triangle")
def _triangle_join() -> dict[str, Any]:
    triangle = build([[1, 0], [0, 1], [-1, -1]])
    P = free_join(triangle, dilate(standard_simplex(2), 2))
    record = classify_simplex(P)
    return {
        "dim": P.dim,
        "hstar": record.hstar.to_list(),
        "degree": record.hstar.degree,
        "thin": record.thin,
        "trivially_thin": record.trivially_thin,
        "pyramid": record.pyramid,
        "free_join_found": record.free_join_found,
        "thin_factor_trivially_thin": is_trivially_thin(dilate(standard_simplex(2), 2)),
        "resolution": record.resolution,
    }


@case("thin_3simplices_are_pyramids")
def _scan_3d() -> dict[str, Any]:
    """Every thin tetrahedron of volume ≤ 5 is a lattice pyramid (the e2e suite goes to 8)."""
    records = list(enumerate_simplices(3, SCAN_3D_MAX_VOLUME, jobs=1, dedup_iso=False))
    scan = question1_scan(records)
    return {
        "max_volume": SCAN_3D_MAX_VOLUME,
        "records": scan.total,
        "thin_not_pyramid": sum(1 for r in records if r.thin and not r.pyramid),
        "unresolved": len(scan.counterexamples),
    }


@case("double_simplex_family")
def _two_delta() -> dict[str, Any]:
    return {f"dim_{d}": two_delta_family(d).passed for d in (2, 3, 4)}


# =============================================================================
# Runner
# =============================================================================


def load_golden(path: Optional[Path] = None) -> GoldenFile:
    """
    Read a golden file.

    Raises:
        InputError: missing file, invalid JSON or wrong shape
    """
    path = Path(path) if path is not None else settings.golden_path
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return GoldenFile.model_validate(payload)
    except FileNotFoundError as e:
        raise InputError(f"golden file not found: {path}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise InputError(f"invalid golden file {path}: {e}") from e


def _compare(computed: dict[str, Any], expected: dict[str, Any]) -> list[str]:
    mismatches = []
    for key in sorted(expected):
        if key not in computed:
            mismatches.append(f"{key}: not computed")
        elif computed[key] != expected[key]:
            mismatches.append(f"{key}: expected {expected[key]!r}, got {computed[key]!r}")
    return mismatches


def run_suite(golden: GoldenFile, names: Optional[list[str]] = None) -> SuiteResult:
    """
    Run every case (or the named subset) against the golden expectations.

    A golden entry without a registered case, and a case without a golden
    entry, are both reported as mismatches.
    """
    expected = golden.by_name()
    selected = names if names is not None else sorted(set(_CASES) | set(expected))
    result = SuiteResult()
    for name in selected:
        fn = _CASES.get(name)
        exp = expected[name].expected if name in expected else {}
        if fn is None:
            result.cases.append(CaseResult(name, {}, exp, ["no such case"]))
            continue
        logger.info(f"Running reproduction case {name}")
        computed = fn()
        mismatches = _compare(computed, exp) if name in expected else ["no golden entry"]
        result.cases.append(CaseResult(name, computed, exp, mismatches))
        if mismatches:
            logger.error(f"{name}: {mismatches}")
    return result


def verify(golden_path: Optional[Path] = None) -> SuiteResult:
    return run_suite(load_golden(golden_path))


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    outcome = verify()
    for c in outcome.cases:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}")
