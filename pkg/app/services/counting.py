"""
Ehrhart counting layer

Handles:
- Lattice points of dilates nP (closed and interior)
- h*-polynomials from dilate counts, degree, codegree, lattice volume
- Ehrhart polynomials with rational coefficients
- Fundamental parallelepiped of a simplex: h* and box polynomial
- Newton numbers (alternating face-volume sums)
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Optional

from app.exceptions import InputError, InternalConsistencyError
from app.services.intlinalg import (
    IntMatrix,
    determinant,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
)
from app.services.polynomial import IntPolynomial
from app.services.polytope import LatticePolytope, NotASimplexError, Vector

logger = logging.getLogger(__name__)

COUNT_METHODS = ("reciprocity", "direct")
BOX_METHODS = ("scan", "group")


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class EhrhartData:
    """Ehrhart invariants of one polytope."""

    dim: int
    dilate_counts: tuple[int, ...]
    hstar: IntPolynomial
    interior_counts: dict[int, int] = field(default_factory=dict, compare=False)

    @property
    def volume(self) -> int:
        return self.hstar(1)

    @property
    def degree(self) -> int:
        return self.hstar.degree

    @property
    def codegree(self) -> int:
        return self.dim + 1 - self.degree


@dataclass(frozen=True)
class ParallelepipedPoint:
    """Lattice point of the half-open parallelepiped over S × {1}."""

    point: Vector
    height: int
    interior: bool


# =============================================================================
# Dilates
# =============================================================================


def lattice_points(P: LatticePolytope, n: int = 1, interior_only: bool = False) -> list[Vector]:
    """Lattice points of nP, optionally only those in the relative interior."""
    return P.lattice_points(dilation=n, interior=interior_only)


def count(P: LatticePolytope, n: int = 1) -> int:
    return len(P.lattice_points(dilation=n))


def interior_count(P: LatticePolytope, n: int = 1) -> int:
    return len(P.lattice_points(dilation=n, interior=True))


def is_hollow(P: LatticePolytope) -> bool:
    """No lattice point in the relative interior."""
    return interior_count(P, 1) == 0


def codegree(P: LatticePolytope) -> int:
    """Least k >= 1 such that kP has an interior lattice point."""
    for k in range(1, P.dim + 2):
        if interior_count(P, k) > 0:
            return k
    raise InternalConsistencyError(f"no interior point in (d+1)P for {P!r}")


def _lagrange_value(xs: list[int], ys: list[int], x: int) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def _hstar_from_counts(counts: list[int], d: int) -> IntPolynomial:
    return IntPolynomial.of(
        sum((-1) ** j * comb(d + 1, j) * counts[k - j] for j in range(k + 1))
        for k in range(d + 1)
    )


def ehr_from_hstar(hstar: IntPolynomial, d: int, n: int) -> int:
    """|nP ∩ Z^d| = Σ_k h*_k C(n - k + d, d)."""
    return sum(c * comb(n - k + d, d) for k, c in enumerate(hstar.coefficients))


def hstar(P: LatticePolytope, method: str = "reciprocity") -> EhrhartData:
    """
    h*-polynomial from dilate counts.

    With ``method="reciprocity"`` the closed counts for n = 0..⌈d/2⌉ and the
    interior counts for n = 1..⌊d/2⌋ (which give Ehr(-n) up to sign) fix the
    Ehrhart polynomial; ``"direct"`` counts every dilate n = 0..d.

    Args:
        P: Polytope
        method: "reciprocity" or "direct"

    Returns:
        EhrhartData with counts for n = 0..d
    """
    if method not in COUNT_METHODS:
        raise InputError(f"unknown counting method: {method}")
    d = P.dim

    interior: dict[int, int] = {}
    if method == "direct" or d <= 1:
        counts = [count(P, n) for n in range(d + 1)]
    else:
        closed_top = (d + 1) // 2
        open_top = d // 2
        xs, ys = [], []
        for n in range(1, open_top + 1):
            interior[n] = interior_count(P, n)
            xs.append(-n)
            ys.append((-1) ** d * interior[n])
        closed = [count(P, n) for n in range(closed_top + 1)]
        xs.extend(range(closed_top + 1))
        ys.extend(closed)
        counts = closed + [
            _lagrange_value(xs, ys, n) for n in range(closed_top + 1, d + 1)
        ]
        if any(Fraction(c).denominator != 1 for c in counts):
            raise InternalConsistencyError(f"non-integral interpolated count for {P!r}")
        counts = [int(c) for c in counts]

    h = _hstar_from_counts(counts, d)
    data = EhrhartData(dim=d, dilate_counts=tuple(counts), hstar=h, interior_counts=interior)
    if h[0] != 1 or not h.is_nonnegative() or data.volume != P.volume:
        logger.error(f"h* audit failed for {P!r}: h*={h.to_list()} volume={P.volume}")
        raise InternalConsistencyError(f"h* audit failed for {P!r}")
    logger.debug(f"h* of {P!r} = {h}")
    return data


def ehrhart_polynomial(P: LatticePolytope) -> list[Fraction]:
    """Coefficients (ascending) of n ↦ |nP ∩ Z^d|, of degree dim P."""
    data = hstar(P)
    d = P.dim
    vandermonde = IntMatrix.from_rows([[n**j for j in range(d + 1)] for n in range(d + 1)])
    coeffs = solve_rational(vandermonde, list(data.dilate_counts))
    if coeffs is None:
        raise InternalConsistencyError("Vandermonde system is singular")
    return coeffs


def lattice_volume(P: LatticePolytope) -> int:
    return P.volume


# =============================================================================
# Simplices: fundamental parallelepiped
# =============================================================================


def _require_simplex(S: LatticePolytope):
    if not S.is_simplex:
        raise NotASimplexError(f"{S!r} is not a simplex")


def _cone_generators(S: LatticePolytope) -> IntMatrix:
    return IntMatrix.from_columns([list(v) + [1] for v in S.vertices], nrows=S.dim + 1)


def _adjugate(M: IntMatrix) -> tuple[IntMatrix, int]:
    """(adj M, det M) so that M⁻¹ = adj M / det M."""
    n = M.nrows
    det = M.det()
    rows = M.rows
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return IntMatrix.from_rows(adj, ncols=n), det


def _classify(adj: IntMatrix, det: int, x: Vector) -> Optional[bool]:
    """None if x is outside Π, else whether x lies in the open box."""
    sign = 1 if det > 0 else -1
    scaled = [sign * v for v in adj.apply(x)]
    if any(v < 0 or v >= abs(det) for v in scaled):
        return None
    return all(v > 0 for v in scaled)


def parallelepiped_points(S: LatticePolytope, method: str = "group") -> list[ParallelepipedPoint]:
    """
    Lattice points of Π = {Σ λ_i (v_i, 1) : 0 ≤ λ_i < 1}.

    ``"group"`` walks coset representatives of Z^{d+1} / M·Z^{d+1} read off
    the Smith form and reduces each into Π; ``"scan"`` tests every integer
    point of Π's bounding box.
    """
    _require_simplex(S)
    if method not in BOX_METHODS:
        raise InputError(f"unknown parallelepiped method: {method}")
    M = _cone_generators(S)
    adj, det = _adjugate(M)
    n = M.nrows
    out: list[ParallelepipedPoint] = []

    if method == "scan":
        columns = M.columns
        lows = [sum(min(0, c[j]) for c in columns) for j in range(n)]
        highs = [sum(max(0, c[j]) for c in columns) for j in range(n)]
        for x in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
            inside = _classify(adj, det, x)
            if inside is not None:
                out.append(ParallelepipedPoint(point=tuple(x), height=x[-1], interior=inside))
        return out

    snf = smith_normal_form(M)
    U_inv = unimodular_inverse(snf.U)
    vol = abs(det)
    for y in product(*(range(max(dd, 1)) for dd in snf.diagonal)):
        x = U_inv.apply(y)
        # reduce x into Π: subtract floor(λ) of every generator
        sign = 1 if det > 0 else -1
        lam = [sign * v for v in adj.apply(x)]
        shifts = [v // vol for v in lam]
        point = tuple(
            xi - sum(s * col[i] for s, col in zip(shifts, M.columns))
            for i, xi in enumerate(x)
        )
        out.append(
            ParallelepipedPoint(
                point=point,
                height=point[-1],
                interior=all(v % vol != 0 for v in lam),
            )
        )
    out.sort(key=lambda p: p.point)
    return out


def simplex_hstar(S: LatticePolytope, method: str = "group") -> IntPolynomial:
    """h*_k = number of parallelepiped points at height k."""
    coeffs = [0] * (S.dim + 1)
    for p in parallelepiped_points(S, method=method):
        coeffs[p.height] += 1
    return IntPolynomial.of(coeffs)


def simplex_lattice_points(S: LatticePolytope) -> list[Vector]:
    """S ∩ Z^d: the vertices plus the parallelepiped points at height 1."""
    pts = set(S.vertices)
    pts.update(p.point[:-1] for p in parallelepiped_points(S) if p.height == 1)
    return sorted(pts)


def box_polynomial(S: LatticePolytope, method: str = "scan") -> IntPolynomial:
    """
    Box polynomial: interior parallelepiped points counted by height.

    Args:
        S: A simplex
        method: "scan" (bounding-box test) or "group" (Smith-form cosets)

    Returns:
        IntPolynomial, equal to l*_S
    """
    coeffs = [0] * (S.dim + 2)
    for p in parallelepiped_points(S, method=method):
        if p.interior:
            coeffs[p.height] += 1
    return IntPolynomial.of(coeffs)


# =============================================================================
# Newton number
# =============================================================================


def newton_number(P: LatticePolytope, allow_non_simplex: bool = False) -> int:
    """
    ν(P) = Σ_{∅ ≤ F ≤ P} (-1)^{dim P - dim F} vol_Z(F), with vol_Z(∅) = 1.

    Args:
        P: A simplex, or any polytope when ``allow_non_simplex`` is set (the
            value may then be negative)

    Returns:
        Integer Newton number
    """
    if not P.is_simplex and not allow_non_simplex:
        raise NotASimplexError("Newton number requires a simplex")
    total = 0
    for F in P.face_lattice():
        vol = 1 if F.is_empty else P.face_polytope(F).volume
        total += (-1) ** (P.dim - F.dim) * vol
    return total


if __name__ == "__main__":
    import argparse
    import json

    from app.services.polytope import build

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Ehrhart data of a lattice polytope")
    parser.add_argument("vertices", help='JSON vertex list, e.g. "[[0,0],[2,0],[0,2]]"')
    parser.add_argument("--direct", action="store_true", help="Count every dilate")
    args = parser.parse_args()

    P = build(json.loads(args.vertices))
    data = hstar(P, method="direct" if args.direct else "reciprocity")
    print(f"counts: {list(data.dilate_counts)}")
    print(f"h*: {data.hstar}  (deg {data.degree}, codeg {data.codegree}, vol {data.volume})")
    if P.is_simplex:
        print(f"box: {box_polynomial(P, method='group')}")
