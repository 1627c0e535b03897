"""
Thin polytope classification and simplex enumeration

Handles:
- The three-dimensional l* closed form, interior inequality and thinness criterion
- Lattice pyramid / Lawrence prism classification of thin 3-polytopes
- Degree-one vocabulary (pyramid, Lawrence prism, 2Δ_2) and the 2Δ_d family
- HNF enumeration of d-simplices by lattice volume, classified per record
- Resumable JSONL logs and the "thin ⇒ trivially thin or a join" scan
"""
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement, product
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Sequence

from pydantic import ValidationError

from app.api.schemas import BucketMarker, EnumRecordModel
from app.config import settings
from app.exceptions import FalsificationError, InputError, InternalConsistencyError
from app.services.counting import (
    box_polynomial,
    interior_count,
    simplex_hstar,
    simplex_lattice_points,
)
from app.services.gorenstein import is_gorenstein
from app.services.intlinalg import (
    IntMatrix,
    determinant,
    gcd_of,
    generated_lattice_index,
    hermite_normal_form,
    primitive,
)
from app.services.local_hstar import Verdict, is_thin, is_trivially_thin, lstar, polytope_hstar
from app.services.polynomial import IntPolynomial
from app.services.polytope import (
    LatticePolytope,
    NotASimplexError,
    Vector,
    build,
    dilate,
    find_free_join,
    free_join_index,
    is_lattice_pyramid,
    is_unimodularly_equivalent,
    iter_joins,
    quotient_group,
    spanning_sublattice,
    standard_simplex,
    sublattice_view,
)

logger = logging.getLogger(__name__)


class Thin3DVerdict(str, Enum):
    """Outcome of the three-dimensional classifier."""

    PYRAMID_OVER_POLYGON = "PyramidOverPolygon"
    LAWRENCE_PRISM = "LawrencePrism"
    NOT_THIN = "NotThin"


RESOLUTIONS = ("trivially_thin", "pyramid", "free_join", "non_spanning")


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class LawrenceWitness:
    """Fibre direction, heights and the vertex pairs of each fibre."""

    direction: Vector
    heights: tuple[int, ...]
    fibers: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "direction": list(self.direction),
            "heights": list(self.heights),
            "fibers": [list(f) for f in self.fibers],
        }


@dataclass(frozen=True)
class Thin3DClassification:
    verdict: Thin3DVerdict
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def is_thin(self) -> bool:
        return self.verdict != Thin3DVerdict.NOT_THIN


@dataclass(frozen=True)
class EnumRecord:
    """One classified simplex of the enumeration."""

    dim: int
    volume: int
    hnf: tuple[tuple[int, ...], ...]
    hstar: IntPolynomial
    lstar: IntPolynomial
    quotient_invariants: tuple[int, ...]
    thin: bool
    trivially_thin: bool
    pyramid: bool
    free_join_found: bool
    cyclic_quotient: bool
    spanning: bool
    resolution: Optional[str] = None

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "thin": self.thin,
            "trivially_thin": self.trivially_thin,
            "pyramid": self.pyramid,
            "free_join": self.free_join_found,
            "cyclic_quotient": self.cyclic_quotient,
            "spanning": self.spanning,
        }

    @property
    def is_counterexample(self) -> bool:
        """Thin, but none of the known explanations applies."""
        return self.thin and self.resolution is None

    def to_model(self) -> EnumRecordModel:
        return EnumRecordModel(
            dim=self.dim,
            volume=self.volume,
            hnf=[list(row) for row in self.hnf],
            hstar=self.hstar.to_list(),
            lstar=self.lstar.to_list(),
            quotient_invariants=list(self.quotient_invariants),
            thin=self.thin,
            trivially_thin=self.trivially_thin,
            pyramid=self.pyramid,
            free_join_found=self.free_join_found,
            cyclic_quotient=self.cyclic_quotient,
            spanning=self.spanning,
            resolution=self.resolution,
        )

    @classmethod
    def from_model(cls, model: EnumRecordModel) -> "EnumRecord":
        return cls(
            dim=model.dim,
            volume=model.volume,
            hnf=tuple(tuple(row) for row in model.hnf),
            hstar=IntPolynomial.of(model.hstar),
            lstar=IntPolynomial.of(model.lstar),
            quotient_invariants=tuple(model.quotient_invariants),
            thin=model.thin,
            trivially_thin=model.trivially_thin,
            pyramid=model.pyramid,
            free_join_found=model.free_join_found,
            cyclic_quotient=model.cyclic_quotient,
            spanning=model.spanning,
            resolution=model.resolution,
        )


@dataclass
class EnumerationLog:
    records: list[EnumRecord] = field(default_factory=list)
    markers: list[BucketMarker] = field(default_factory=list)

    @property
    def completed_volumes(self) -> set[int]:
        return {m.volume for m in self.markers}


@dataclass(frozen=True)
class EnumerationSummary:
    """What one enumeration run wrote."""

    dim: int
    max_volume: int
    path: Path
    records_written: int
    skipped_volumes: tuple[int, ...]
    thin: int
    counterexamples: int


@dataclass
class Question1Result:
    total: int = 0
    thin: int = 0
    flag_combinations: Counter = field(default_factory=Counter)
    resolutions: Counter = field(default_factory=Counter)
    counterexamples: list[EnumRecord] = field(default_factory=list)
    dims: set[int] = field(default_factory=set)
    max_volume: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "thin": self.thin,
            "flag_combinations": dict(sorted(self.flag_combinations.items())),
            "resolutions": {key: self.resolutions.get(key, 0) for key in (*RESOLUTIONS, "unresolved")},
            "counterexamples": [r.to_model().model_dump() for r in self.counterexamples],
            "dims": sorted(self.dims),
            "max_volume": self.max_volume,
        }


# =============================================================================
# Dimension three
# =============================================================================


def _require_dim(P: LatticePolytope, d: int):
    if P.dim != d:
        raise InputError(f"expected a {d}-dimensional polytope, got dimension {P.dim}")


def _interior_data_3d(P: LatticePolytope) -> tuple[int, int, int]:
    """(|int P|, |int 2P|, Σ over facets |int F|)."""
    lattice = P.face_lattice()
    facet_sum = sum(interior_count(P.face_polytope(F), 1) for F in lattice.of_dim(2))
    return interior_count(P, 1), interior_count(P, 2), facet_sum


def lstar_3d(P: LatticePolytope) -> IntPolynomial:
    """
    l* of a 3-polytope from interior counts alone:
    |int P|(t + t³) + (|int 2P| - 4|int P| - Σ_F |int F|) t².

    Raises:
        InputError: P is not three-dimensional
    """
    _require_dim(P, 3)
    i1, i2, facet_sum = _interior_data_3d(P)
    return IntPolynomial.of([0, i1, i2 - 4 * i1 - facet_sum, i1])


def interior_inequality_check(P: LatticePolytope) -> Verdict:
    """|int 2P| ≥ 5|int P| + Σ_F |int F|."""
    _require_dim(P, 3)
    i1, i2, facet_sum = _interior_data_3d(P)
    rhs = 5 * i1 + facet_sum
    return Verdict("interior_inequality", i2 >= rhs, {"interior_2P": i2, "bound": rhs})


def thin_criterion_3d(P: LatticePolytope) -> bool:
    """Hollow and |int 2P| = Σ_F |int F|."""
    _require_dim(P, 3)
    i1, i2, facet_sum = _interior_data_3d(P)
    return i1 == 0 and i2 == facet_sum


def _parallel(u: Sequence[int], w: Sequence[int]) -> bool:
    return all(u[i] * w[j] == u[j] * w[i] for i, j in combinations(range(len(w)), 2))


def _fibers_along(P: LatticePolytope, w: Vector) -> Optional[list[list[int]]]:
    fibers: list[list[int]] = []
    for i, v in enumerate(P.vertices):
        for fiber in fibers:
            u = P.vertices[fiber[0]]
            if _parallel([a - b for a, b in zip(v, u)], w):
                fiber.append(i)
                break
        else:
            fibers.append([i])
    return fibers


def is_lawrence_prism(P: LatticePolytope) -> Optional[LawrenceWitness]:
    """
    Lawrence prism test.

    P must have 2d vertices falling into d parallel edges along a primitive
    w, and its projection along w must be a unimodular simplex. The fibre
    lengths are then the heights k_0..k_{d-1}, reported sorted.

    Returns:
        LawrenceWitness or None
    """
    d = P.dim
    if d < 1 or P.n_vertices != 2 * d:
        return None
    tried: set[Vector] = set()
    for i, j in combinations(range(P.n_vertices), 2):
        w = primitive([b - a for a, b in zip(P.vertices[i], P.vertices[j])])
        if w in tried or tuple(-x for x in w) in tried:
            continue
        tried.add(w)
        fibers = _fibers_along(P, w)
        if len(fibers) != d or any(len(f) != 2 for f in fibers):
            continue
        base = [P.vertices[f[0]] for f in fibers]
        rows = [[a - b for a, b in zip(p, base[0])] for p in base[1:]] + [list(w)]
        if abs(determinant(rows)) != 1:
            continue
        heights = tuple(
            sorted(
                gcd_of(a - b for a, b in zip(P.vertices[f[1]], P.vertices[f[0]]))
                for f in fibers
            )
        )
        return LawrenceWitness(
            direction=w, heights=heights, fibers=tuple((f[0], f[1]) for f in fibers)
        )
    return None


def classify_thin_3d(P: LatticePolytope) -> Thin3DClassification:
    """
    Classify a 3-polytope as a lattice pyramid over a polygon, a Lawrence
    prism, or not thin.

    The interior-count criterion and l* are evaluated independently and
    must agree.

    Raises:
        InputError: P is not three-dimensional
        FalsificationError: the criterion disagrees with l*, or a thin P has
            neither witness
    """
    _require_dim(P, 3)
    thin = is_thin(P)
    criterion = thin_criterion_3d(P)
    i1, i2, facet_sum = _interior_data_3d(P)
    counts = {"interior_P": i1, "interior_2P": i2, "facet_interior_sum": facet_sum}
    vertices = [list(v) for v in P.vertices]
    if criterion != thin:
        raise FalsificationError(
            "3D thinness criterion disagrees with l*",
            {"vertices": vertices, "thin": thin, **counts},
        )
    if not thin:
        return Thin3DClassification(Thin3DVerdict.NOT_THIN, counts)

    pyramid = is_lattice_pyramid(P)
    if pyramid is not None:
        return Thin3DClassification(
            Thin3DVerdict.PYRAMID_OVER_POLYGON,
            {"apex": list(P.vertices[pyramid.apex]), "base": [list(v) for v in P.face_points(pyramid.base)]},
        )
    prism = is_lawrence_prism(P)
    if prism is not None:
        return Thin3DClassification(Thin3DVerdict.LAWRENCE_PRISM, prism.to_dict())
    raise FalsificationError(
        "thin 3-polytope is neither a lattice pyramid nor a Lawrence prism",
        {"vertices": vertices, **counts},
    )


def degree_one_type(P: LatticePolytope) -> Optional[str]:
    """Which degree-one family P belongs to, if any."""
    if is_lattice_pyramid(P) is not None:
        return "lattice_pyramid"
    if is_lawrence_prism(P) is not None:
        return "lawrence_prism"
    if P.dim == 2 and is_unimodularly_equivalent(P, dilate(standard_simplex(2), 2)):
        return "two_delta_2"
    return None


def degree_one_check(P: LatticePolytope) -> Verdict:
    """Every polytope of degree 1 is a lattice pyramid, a Lawrence prism or 2Δ_2."""
    degree = polytope_hstar(P).degree
    if degree != 1:
        return Verdict("degree_one", True, {"degree": degree}, applicable=False)
    kind = degree_one_type(P)
    return Verdict("degree_one", kind is not None, {"degree": 1, "type": kind})


def two_delta_family(d: int, max_k: int = 3) -> Verdict:
    """
    Thinness of conv(0, k_1 e_1, ..., k_d e_d) for 2 ≤ k_i ≤ max_k.

    Passes when the thin members are exactly 2Δ_d for even d, and none for
    odd d.
    """
    if d < 1 or max_k < 2:
        raise InputError("need d >= 1 and max_k >= 2")
    thin_members = []
    for ks in combinations_with_replacement(range(2, max_k + 1), d):
        S = build([[0] * d] + [[k * int(i == j) for j in range(d)] for i, k in enumerate(ks)])
        if box_polynomial(S, method="group").is_zero:
            thin_members.append(list(ks))
    expected = [[2] * d] if d % 2 == 0 else []
    return Verdict(
        "two_delta_family",
        thin_members == expected,
        {"dim": d, "max_k": max_k, "thin": thin_members},
    )


def gorenstein_3d_check(P: LatticePolytope) -> Verdict:
    """A thin Gorenstein 3-polytope is a lattice pyramid."""
    _require_dim(P, 3)
    if not is_gorenstein(P) or not lstar(P).is_zero:
        return Verdict("gorenstein_3d_pyramid", True, {}, applicable=False)
    pyramid = is_lattice_pyramid(P) is not None
    return Verdict("gorenstein_3d_pyramid", pyramid, {"pyramid": pyramid})


# =============================================================================
# Simplices
# =============================================================================


def canonical_hnf(S: LatticePolytope) -> tuple[tuple[int, ...], ...]:
    """HNF of the edge matrix with columns v_i - v_0, in vertex order."""
    if not S.is_simplex:
        raise NotASimplexError(f"{S!r} is not a simplex")
    v0 = S.vertices[0]
    M = IntMatrix.from_columns(
        [[a - b for a, b in zip(v, v0)] for v in S.vertices[1:]], nrows=S.dim
    )
    return hermite_normal_form(M).H.rows


def simplex_from_hnf(hnf: Sequence[Sequence[int]]) -> LatticePolytope:
    """conv(0, columns of H)."""
    d = len(hnf)
    columns = [[hnf[i][j] for i in range(d)] for j in range(d)]
    return build([[0] * d] + columns)


def _non_spanning_resolution(S: LatticePolytope) -> bool:
    data = spanning_sublattice(S)
    coarse = sublattice_view(S, data.basis, data.translation)
    return (
        is_trivially_thin(coarse)
        or is_lattice_pyramid(coarse) is not None
        or find_free_join(coarse) is not None
    )


def classify_simplex(
    S: LatticePolytope, hnf: Optional[Sequence[Sequence[int]]] = None
) -> EnumRecord:
    """
    Classify one simplex.

    Args:
        S: Full-dimensional simplex
        hnf: Its HNF matrix if already known

    Returns:
        EnumRecord with flags and, for thin simplices, the first applicable
        resolution among trivially thin, pyramid, free join, and a pyramid or
        free join over the lattice spanned by S ∩ Z^d

    Raises:
        NotASimplexError: S is not a simplex
        InternalConsistencyError: flags contradict each other
    """
    if not S.is_simplex:
        raise NotASimplexError(f"{S!r} is not a simplex")
    d = S.dim
    h = simplex_hstar(S)
    l = box_polynomial(S, method="group")
    quotient = quotient_group(S)
    thin = l.is_zero
    pyramid = is_lattice_pyramid(S) is not None
    trivially = d >= 2 * h.degree
    free = any(free_join_index(S, F, G) == 1 for F, G in iter_joins(S))

    v0 = S.vertices[0]
    diffs = [[a - b for a, b in zip(p, v0)] for p in simplex_lattice_points(S)]
    spanning = d == 0 or generated_lattice_index(diffs, d) == 1

    if pyramid and not thin:
        raise InternalConsistencyError(f"lattice pyramid {S!r} is not thin")
    if quotient.is_cyclic and thin != pyramid:
        raise InternalConsistencyError(
            f"cyclic-quotient simplex {S!r}: thin={thin} but pyramid={pyramid}"
        )

    resolution = None
    if thin:
        if trivially:
            resolution = "trivially_thin"
        elif pyramid:
            resolution = "pyramid"
        elif free:
            resolution = "free_join"
        elif not spanning and _non_spanning_resolution(S):
            resolution = "non_spanning"
        else:
            logger.warning(f"unresolved thin simplex: {[list(v) for v in S.vertices]}")

    return EnumRecord(
        dim=d,
        volume=h(1),
        hnf=tuple(tuple(row) for row in (hnf if hnf is not None else canonical_hnf(S))),
        hstar=h,
        lstar=l,
        quotient_invariants=quotient.nontrivial_factors,
        thin=thin,
        trivially_thin=trivially,
        pyramid=pyramid,
        free_join_found=free,
        cyclic_quotient=quotient.is_cyclic,
        spanning=spanning,
        resolution=resolution,
    )


# =============================================================================
# Enumeration
# =============================================================================


def _ordered_factorizations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for a in range(1, n + 1):
        if n % a == 0:
            for rest in _ordered_factorizations(n // a, k - 1):
                yield (a,) + rest


def iter_hnf_matrices(d: int, volume: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """
    Upper-triangular d×d HNF matrices of determinant ``volume``.

    The diagonal runs over ordered factorizations of the volume; entry
    H[i][j] for i < j runs over [0, H[j][j]). Order is deterministic.
    """
    cells = [(i, j) for j in range(d) for i in range(j)]
    for diagonal in _ordered_factorizations(volume, d):
        ranges = [range(diagonal[j]) for _, j in cells]
        for values in product(*ranges):
            H = [[0] * d for _ in range(d)]
            for k in range(d):
                H[k][k] = diagonal[k]
            for (i, j), x in zip(cells, values):
                H[i][j] = x
            yield tuple(tuple(row) for row in H)


def _classify_hnf(hnf: tuple[tuple[int, ...], ...]) -> EnumRecord:
    return classify_simplex(simplex_from_hnf(hnf), hnf=hnf)


def _dedup_bucket(records: list[EnumRecord]) -> list[EnumRecord]:
    kept: list[EnumRecord] = []
    representatives: dict[tuple, list[LatticePolytope]] = {}
    for record in records:
        key = (record.hstar, record.lstar, record.quotient_invariants)
        S = simplex_from_hnf(record.hnf)
        reps = representatives.setdefault(key, [])
        if any(is_unimodularly_equivalent(S, R) for R in reps):
            continue
        reps.append(S)
        kept.append(record)
    return kept


def _iter_buckets(
    d: int,
    max_volume: int,
    jobs: int,
    dedup_iso: bool,
    skip_volumes: Iterable[int] = (),
) -> Iterator[tuple[int, list[EnumRecord]]]:
    skip = set(skip_volumes)
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for volume in range(1, max_volume + 1):
            if volume in skip:
                logger.info(f"Skipping completed volume {volume} (dim {d})")
                continue
            matrices = list(iter_hnf_matrices(d, volume))
            if executor is not None:
                records = list(executor.map(_classify_hnf, matrices, chunksize=32))
            else:
                records = [_classify_hnf(m) for m in matrices]
            if dedup_iso:
                records = _dedup_bucket(records)
            logger.info(
                f"dim {d} volume {volume}: {len(matrices)} HNF matrices, "
                f"{len(records)} records, {sum(r.thin for r in records)} thin"
            )
            yield volume, records
    finally:
        if executor is not None:
            executor.shutdown()


def enumerate_simplices(
    d: int,
    max_volume: int,
    jobs: Optional[int] = None,
    dedup_iso: Optional[bool] = None,
    skip_volumes: Iterable[int] = (),
) -> Iterator[EnumRecord]:
    """
    Every d-simplex of lattice volume ≤ max_volume, up to HNF.

    Args:
        d: Dimension, at least 1
        max_volume: Largest lattice volume
        jobs: Worker processes (default from settings)
        dedup_iso: Keep one record per unimodular class (default from settings)
        skip_volumes: Volumes to leave out

    Yields:
        EnumRecord, ordered by volume, diagonal and off-diagonal entries
    """
    if d < 1 or max_volume < 1:
        raise InputError("dimension and maximal volume must be positive")
    jobs = settings.enum_jobs if jobs is None else jobs
    if jobs < 1:
        raise InputError(f"need at least one worker process, got {jobs}")
    dedup_iso = settings.dedup_iso if dedup_iso is None else dedup_iso
    for _, records in _iter_buckets(d, max_volume, jobs, dedup_iso, skip_volumes):
        yield from records


# =============================================================================
# JSONL log
# =============================================================================


def _parse_line(line: str, lineno: int):
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as e:
        raise InputError(f"line {lineno}: invalid JSON ({e})") from e
    kind = payload.get("kind") if isinstance(payload, dict) else None
    try:
        if kind == "record":
            return EnumRecordModel.model_validate(payload)
        if kind == "bucket_done":
            return BucketMarker.model_validate(payload)
    except ValidationError as e:
        raise InputError(f"line {lineno}: malformed {kind} ({e.error_count()} errors)") from e
    raise InputError(f"line {lineno}: unknown entry kind {kind!r}")


def read_log(path: Path) -> EnumerationLog:
    """Records and bucket markers of a JSONL enumeration log."""
    log = EnumerationLog()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            entry = _parse_line(line, lineno)
            if isinstance(entry, BucketMarker):
                log.markers.append(entry)
            else:
                log.records.append(EnumRecord.from_model(entry))
    return log


def prepare_resume(path: Path, d: int) -> set[int]:
    """
    Drop everything after the last bucket marker and return the completed volumes.

    Raises:
        InputError: the log belongs to another dimension
    """
    if not path.exists():
        return set()
    lines = path.read_text(encoding="utf-8").splitlines()
    keep = 0
    completed: set[int] = set()
    for index, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        entry = _parse_line(line, index)
        if entry.dim != d:
            raise InputError(f"log {path} was written for dimension {entry.dim}, not {d}")
        if isinstance(entry, BucketMarker):
            keep = index
            completed.add(entry.volume)
    if keep < len(lines):
        logger.info(f"Discarding {len(lines) - keep} lines of an incomplete bucket in {path}")
    path.write_text("".join(line + "\n" for line in lines[:keep]), encoding="utf-8")
    return completed


def write_enumeration_log(
    path: Path,
    d: int,
    max_volume: int,
    jobs: Optional[int] = None,
    dedup_iso: Optional[bool] = None,
    resume: bool = False,
) -> EnumerationSummary:
    """
    Enumerate and append records to ``path``, one marker line per finished volume.
    """
    if d < 1 or max_volume < 1:
        raise InputError("dimension and maximal volume must be positive")
    jobs = settings.enum_jobs if jobs is None else jobs
    if jobs < 1:
        raise InputError(f"need at least one worker process, got {jobs}")
    dedup_iso = settings.dedup_iso if dedup_iso is None else dedup_iso
    path.parent.mkdir(parents=True, exist_ok=True)
    completed = prepare_resume(path, d) if resume else set()
    skipped = tuple(sorted(v for v in completed if v <= max_volume))

    written = thin = unresolved = 0
    with open(path, "a" if resume else "w", encoding="utf-8") as fh:
        for volume, records in _iter_buckets(d, max_volume, jobs, dedup_iso, completed):
            for record in records:
                fh.write(record.to_model().model_dump_json() + "\n")
                thin += record.thin
                unresolved += record.is_counterexample
            marker = BucketMarker(dim=d, volume=volume, count=len(records))
            fh.write(marker.model_dump_json() + "\n")
            fh.flush()
            written += len(records)

    return EnumerationSummary(
        dim=d,
        max_volume=max_volume,
        path=path,
        records_written=written,
        skipped_volumes=skipped,
        thin=thin,
        counterexamples=unresolved,
    )


# =============================================================================
# Question scan
# =============================================================================


def question1_scan(records: Iterable[EnumRecord]) -> Question1Result:
    """
    Tally flag combinations and collect thin records with no resolution.

    Returns:
        Question1Result; ``resolutions`` counts thin records only
    """
    result = Question1Result()
    for record in records:
        result.total += 1
        result.dims.add(record.dim)
        result.max_volume = max(result.max_volume, record.volume)
        on = [name for name, value in record.flags.items() if value]
        result.flag_combinations["+".join(on) or "none"] += 1
        if not record.thin:
            continue
        result.thin += 1
        result.resolutions[record.resolution or "unresolved"] += 1
        if record.is_counterexample:
            result.counterexamples.append(record)
    logger.info(
        f"Scanned {result.total} records: {result.thin} thin, "
        f"{len(result.counterexamples)} unresolved"
    )
    return result


if __name__ == "__main__":
    import argparse

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Enumerate and classify lattice simplices")
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--max-vol", type=int, default=6)
    args = parser.parse_args()

    scan = question1_scan(enumerate_simplices(args.dim, args.max_vol, jobs=1))
    print(json.dumps(scan.to_dict(), indent=2))
