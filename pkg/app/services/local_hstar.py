"""
Local h*-polynomials

Handles:
- l*_P as the alternating face sum Σ_F (-1)^(dim P - dim F) h*_F g_(F,P]^*
- Thinness and trivial thinness
- Self-audited reports: palindromy, nonnegativity, boundary coefficients,
  subdegree/degree bounds, lower bound, decomposition identity
- Free-join multiplicativity and lattice-refinement monotonicity checks
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from app.exceptions import InputError, InternalConsistencyError
from app.services.counting import box_polynomial, hstar, interior_count, simplex_hstar
from app.services.intlinalg import IntMatrix
from app.services.polynomial import IntPolynomial
from app.services.polytope import Face, LatticePolytope, free_join, sublattice_view
from app.services.poset_poly import g_interval_up, g_of_dual_interval, g_of_polytope

logger = logging.getLogger(__name__)


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class Verdict:
    """Outcome of one checkable identity or inequality."""

    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict, compare=False)
    applicable: bool = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "applicable": self.applicable,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class LocalHStarReport:
    """l*_P together with the verdicts it was audited against."""

    dim: int
    lstar: IntPolynomial
    hstar: IntPolynomial
    interior_point_count: int
    checks: tuple[Verdict, ...] = ()

    @property
    def is_thin(self) -> bool:
        return self.lstar.is_zero

    @property
    def degree(self) -> int:
        return self.lstar.degree

    @property
    def subdegree(self) -> Optional[int]:
        return self.lstar.subdegree

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


# =============================================================================
# Face sums
# =============================================================================


def polytope_hstar(P: LatticePolytope) -> IntPolynomial:
    """h*_P, memoized on P; simplices go through the parallelepiped."""
    lattice = P.face_lattice()
    return lattice.memo_get_or_compute(
        ("hstar",), lambda: simplex_hstar(P) if P.is_simplex else hstar(P).hstar
    )


def face_hstar(P: LatticePolytope, F: Face) -> IntPolynomial:
    """
    h* of a face in the lattice of its own affine hull; h*_∅ = 1.

    The face is rewritten in a basis of aff(F) ∩ Z^d, so its dilate counts
    are exactly the ambient lattice points of nF.
    """
    if F.is_empty:
        return IntPolynomial.one()
    return polytope_hstar(P.face_polytope(F))


def lstar(P: LatticePolytope) -> IntPolynomial:
    """l*_P by the alternating face sum, memoized on P."""
    lattice = P.face_lattice()

    def compute() -> IntPolynomial:
        total = IntPolynomial.zero()
        for F in lattice:
            sign = (-1) ** (P.dim - F.dim)
            total = total + sign * face_hstar(P, F) * g_of_dual_interval(P, F)
        return total

    return lattice.memo_get_or_compute(("lstar",), compute)


def face_lstar(P: LatticePolytope, F: Face) -> IntPolynomial:
    """l* of a face; l*_∅ = 1."""
    if F.is_empty:
        return IntPolynomial.one()
    return lstar(P.face_polytope(F))


# =============================================================================
# Checks
# =============================================================================


def decomposition_check(P: LatticePolytope) -> Verdict:
    """
    h*_P = Σ_F l*_F g_[F,P), and l*_P + g_P ≤ h*_P coefficientwise.
    """
    lattice = P.face_lattice()
    rhs = IntPolynomial.zero()
    for F in lattice:
        rhs = rhs + face_lstar(P, F) * g_interval_up(P, F)
    lhs = polytope_hstar(P)
    residual = lhs - rhs
    corollary = (lstar(P) + g_of_polytope(P)).le(lhs)
    return Verdict(
        name="decomposition",
        passed=residual.is_zero and corollary,
        detail={
            "hstar": lhs.to_list(),
            "face_sum": rhs.to_list(),
            "residual": residual.to_list(),
            "lstar_plus_g_le_hstar": corollary,
        },
    )


def lower_bound_check(P: LatticePolytope) -> Verdict:
    """l*_1 ≤ l*_i for i = 2..d."""
    l = lstar(P)
    failures = [i for i in range(2, P.dim + 1) if l[1] > l[i]]
    return Verdict(
        name="lower_bound",
        passed=not failures,
        detail={"lstar": l.to_list(), "failing_indices": failures},
    )


def _property_checks(P: LatticePolytope, l: IntPolynomial, h: IntPolynomial, interior: int) -> list[Verdict]:
    d = P.dim
    checks = [
        Verdict("palindromic", l.is_palindromic(d + 1), {"reflection_degree": d + 1}),
        Verdict("nonnegative", l.is_nonnegative()),
    ]
    if d >= 1:
        checks.append(
            Verdict(
                "boundary_coefficients",
                l[0] == 0 and l[d + 1] == 0 and l[1] == interior,
                {"l1": l[1], "interior_points": interior},
            )
        )
    if not l.is_zero:
        codeg = d + 1 - h.degree
        checks.append(
            Verdict(
                "degree_bounds",
                l.subdegree >= codeg and l.degree <= h.degree,
                {"subdegree": l.subdegree, "codegree": codeg, "degree": l.degree, "hstar_degree": h.degree},
            )
        )
    if P.is_simplex:
        box = box_polynomial(P, method="group")
        checks.append(Verdict("box_agreement", box == l, {"box": box.to_list()}))
    return checks


def local_hstar(P: LatticePolytope, audit: bool = True) -> LocalHStarReport:
    """
    l*_P with its self-audit.

    Args:
        P: Polytope of dimension >= 0
        audit: Run every property check and the decomposition identity

    Returns:
        LocalHStarReport

    Raises:
        InternalConsistencyError: if any audited identity fails
    """
    l = lstar(P)
    h = polytope_hstar(P)
    interior = interior_count(P, 1) if P.dim > 0 else 1
    checks: list[Verdict] = []
    if audit:
        checks = _property_checks(P, l, h, interior)
        checks.append(lower_bound_check(P))
        checks.append(decomposition_check(P))
        failed = [c for c in checks if not c.passed]
        if failed:
            logger.error(f"l* audit failed for {P!r}: {[c.to_dict() for c in failed]}")
            raise InternalConsistencyError(
                f"l* audit failed: {', '.join(c.name for c in failed)}"
            )
    logger.debug(f"l* of {P!r} = {l}")
    return LocalHStarReport(
        dim=P.dim, lstar=l, hstar=h, interior_point_count=interior, checks=tuple(checks)
    )


def is_thin(P: LatticePolytope) -> bool:
    if P.is_simplex:
        return box_polynomial(P, method="group").is_zero
    return lstar(P).is_zero


def is_trivially_thin(P: LatticePolytope) -> bool:
    """dim P ≥ 2 deg P."""
    return P.dim >= 2 * polytope_hstar(P).degree


def multiplicativity_check(P: LatticePolytope, Q: LatticePolytope) -> Verdict:
    """h* and l* of the free join are the products of the factors'."""
    J = free_join(P, Q)
    h_ok = polytope_hstar(J) == polytope_hstar(P) * polytope_hstar(Q)
    l_join = lstar(J)
    l_ok = l_join == lstar(P) * lstar(Q)
    return Verdict(
        name="free_join_multiplicativity",
        passed=h_ok and l_ok,
        detail={"hstar_product": h_ok, "lstar_product": l_ok, "lstar_join": l_join.to_list()},
    )


def refinement_monotonicity_check(
    P: LatticePolytope, B: IntMatrix, translation: Optional[list[int]] = None
) -> Verdict:
    """l* and h* of the coarse-lattice view are bounded by those of P."""
    coarse = sublattice_view(P, B, translation)
    l_coarse, l_fine = lstar(coarse), lstar(P)
    h_coarse, h_fine = polytope_hstar(coarse), polytope_hstar(P)
    return Verdict(
        name="refinement_monotonicity",
        passed=l_coarse.le(l_fine) and h_coarse.le(h_fine),
        detail={
            "lstar_coarse": l_coarse.to_list(),
            "lstar_fine": l_fine.to_list(),
            "hstar_coarse": h_coarse.to_list(),
            "hstar_fine": h_fine.to_list(),
        },
    )


def dim_le_2_formula(P: LatticePolytope) -> IntPolynomial:
    """Closed forms: 0 for a point, #int·t in dim 1, #int·(t + t²) in dim 2."""
    if P.dim > 2:
        raise InputError("closed form only covers dimension <= 2")
    if P.dim == 0:
        return IntPolynomial.zero()
    k = interior_count(P, 1)
    if P.dim == 1:
        return IntPolynomial.monomial(1, k)
    return IntPolynomial.of([0, k, k])


def hollow_thin_check(P: LatticePolytope) -> Verdict:
    """Thin implies hollow in positive dimension; in dim ≤ 2 the converse holds."""
    thin = is_thin(P)
    hollow = P.dim > 0 and interior_count(P, 1) == 0
    passed = True
    if P.dim > 0 and thin and not hollow:
        passed = False
    if 0 < P.dim <= 2 and hollow and not thin:
        passed = False
    return Verdict("hollow_thin", passed, {"thin": thin, "hollow": hollow})


def deg_lstar_law(P: LatticePolytope) -> Verdict:
    """In dimension ≤ 4 a polytope is thin or has deg l* = deg P."""
    l = lstar(P)
    deg_p = polytope_hstar(P).degree
    return Verdict(
        "deg_lstar_law",
        l.is_zero or l.degree == deg_p or P.dim > 4,
        {"lstar_degree": l.degree, "degree": deg_p},
        applicable=P.dim <= 4,
    )


if __name__ == "__main__":
    import argparse
    import json

    from app.services.polytope import build

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Local h*-polynomial of a lattice polytope")
    parser.add_argument("vertices", help="JSON vertex list")
    args = parser.parse_args()

    report = local_hstar(build(json.loads(args.vertices)))
    print(f"l*: {report.lstar}  thin={report.is_thin}")
    for check in report.checks:
        print(f"  {check.name}: {'ok' if check.passed else 'FAILED'}")
