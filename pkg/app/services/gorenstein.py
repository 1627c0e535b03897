"""
Gorenstein polytopes and their joins

Handles:
- Gorenstein detection (palindromic h*) with a cone-normal certificate
- The dual Gorenstein polytope P^× and dual faces F^*
- g-thinness, Cayley joins, Gorenstein joins (codegree additivity)
- Verdicts for the characterization of thin Gorenstein polytopes, the
  subdegree law, simplex and width corollaries, join inequalities
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from app.config import settings
from app.exceptions import FalsificationError, InputError, InternalConsistencyError
from app.services.local_hstar import (
    Verdict,
    face_hstar,
    is_trivially_thin,
    lstar,
    polytope_hstar,
)
from app.services.polynomial import IntPolynomial
from app.services.polytope import (
    Face,
    LatticePolytope,
    NotAJoinError,
    Vector,
    build,
    free_join_index,
    is_cayley,
    is_cayley_pair,
    is_join,
    is_lattice_pyramid,
    is_spanning,
    iter_joins,
)
from app.services.poset_poly import g_of_polytope

logger = logging.getLogger(__name__)


class NotGorensteinError(InputError):
    """Operation requires a Gorenstein polytope."""

    pass


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class GorensteinData:
    """
    Gorenstein structure of P.

    ``cone_normals[i]`` is the primitive inner normal (a_i, -b_i) of the cone
    over P × {1} for facet i; when P is Gorenstein every one of them pairs
    to 1 with m = (p, r), and vertex i of ``dual`` is the image of normal i.
    """

    is_gorenstein: bool
    hstar: IntPolynomial
    codegree: int
    interior_point: Optional[Vector] = None
    cone_normals: tuple[Vector, ...] = ()
    dual: Optional[LatticePolytope] = None
    certificate: bool = False

    @property
    def m(self) -> Optional[Vector]:
        if self.interior_point is None:
            return None
        return tuple(self.interior_point) + (self.codegree,)


@dataclass(frozen=True)
class MainTheoremVerdict:
    """Evaluation of the three equivalent conditions for a Gorenstein P."""

    thin: bool
    trivially_thin_or_join: bool
    g_thin_or_join: bool
    degree_clause: bool
    gorenstein_joins: tuple[tuple[Face, Face], ...]
    free_join_witness: Optional[bool]
    pairs_scanned: int
    cap_reached: bool

    @property
    def consistent(self) -> bool:
        return (
            self.thin == self.trivially_thin_or_join == self.g_thin_or_join
            and self.degree_clause
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "thin": self.thin,
            "trivially_thin_or_gorenstein_join": self.trivially_thin_or_join,
            "g_thin_or_gorenstein_join": self.g_thin_or_join,
            "degree_clause": self.degree_clause,
            "gorenstein_joins": [
                [sorted(F.vertices), sorted(G.vertices)] for F, G in self.gorenstein_joins
            ],
            "free_join_witness": self.free_join_witness,
            "pairs_scanned": self.pairs_scanned,
            "cap_reached": self.cap_reached,
            "consistent": self.consistent,
        }


# =============================================================================
# Gorenstein data and duals
# =============================================================================


def codegree_of(P: LatticePolytope) -> int:
    return P.dim + 1 - polytope_hstar(P).degree


def _compute_gorenstein_data(P: LatticePolytope) -> GorensteinData:
    h = polytope_hstar(P)
    r = P.dim + 1 - h.degree
    if not h.is_palindromic():
        return GorensteinData(is_gorenstein=False, hstar=h, codegree=r)

    interior = P.lattice_points(dilation=r, interior=True)
    if len(interior) != 1:
        logger.error(f"{P!r}: palindromic h* but {len(interior)} interior points in {r}P")
        raise InternalConsistencyError("Gorenstein polytope without a unique interior point")
    p = interior[0]

    if P.dim == 0:
        normals: tuple[Vector, ...] = ((1,),)
    else:
        normals = tuple(tuple(f.normal) + (-f.offset,) for f in P.facets)
    m = tuple(p) + (r,)
    pairings = [sum(a * b for a, b in zip(y, m)) for y in normals]
    if any(v != 1 for v in pairings):
        logger.error(f"{P!r}: cone normals pair to {pairings} with m={m}")
        raise InternalConsistencyError("Gorenstein certificate failed")

    dual = build(normals)
    if dual.n_vertices != len(normals):
        raise InternalConsistencyError("dual Gorenstein polytope lost a vertex")
    return GorensteinData(
        is_gorenstein=True,
        hstar=h,
        codegree=r,
        interior_point=tuple(p),
        cone_normals=normals,
        dual=dual,
        certificate=True,
    )


def gorenstein_data(P: LatticePolytope) -> GorensteinData:
    """
    Gorenstein test by palindromy of h*, plus the dual polytope.

    The dual is the polytope spanned by the primitive facet normals of the
    cone over P × {1}, which lie on the hyperplane ⟨·, m⟩ = 1 exactly when
    P is Gorenstein; ``build`` rewrites it in that hyperplane's lattice.

    Raises:
        InternalConsistencyError: palindromic h* without a valid certificate
    """
    lattice = P.face_lattice()
    return lattice.memo_get_or_compute(("gorenstein",), lambda: _compute_gorenstein_data(P))


def require_gorenstein(P: LatticePolytope) -> GorensteinData:
    data = gorenstein_data(P)
    if not data.is_gorenstein:
        raise NotGorensteinError(f"{P!r} is not Gorenstein (h* = {data.hstar})")
    return data


def is_gorenstein(P: LatticePolytope) -> bool:
    return gorenstein_data(P).is_gorenstein


def gorenstein_dual(P: LatticePolytope) -> LatticePolytope:
    return require_gorenstein(P).dual


def dual_face(P: LatticePolytope, F: Face) -> Face:
    """F^*: the face of P^× spanned by the normals of facets containing F."""
    data = require_gorenstein(P)
    if P.dim == 0:
        indices = frozenset() if F.vertices else frozenset({0})
    else:
        indices = frozenset(i for i, f in enumerate(P.facets) if F.vertices <= f.vertices)
    face = data.dual.face_lattice().face_of(indices)
    if face is None:
        raise InternalConsistencyError(f"dual of face {sorted(F.vertices)} is not a face")
    return face


# =============================================================================
# Predicates
# =============================================================================


def is_g_thin(P: LatticePolytope) -> bool:
    """deg g_P = deg P."""
    return g_of_polytope(P).degree == polytope_hstar(P).degree


def is_cayley_join(P: LatticePolytope, F: Face, G: Face) -> bool:
    """A join whose two factors sit at consecutive levels of a lattice functional."""
    return is_join(P, F, G) and is_cayley_pair(P, F, G)


def _face_codegree(P: LatticePolytope, F: Face) -> int:
    return F.dim + 1 - face_hstar(P, F).degree


def is_gorenstein_join(P: LatticePolytope, F: Face, G: Face) -> bool:
    """
    Codegree additivity on a Cayley join of a Gorenstein polytope.

    Raises:
        NotGorensteinError: P is not Gorenstein
        NotAJoinError: (F, G) is not a Cayley join
    """
    data = require_gorenstein(P)
    if not is_cayley_join(P, F, G):
        raise NotAJoinError("faces do not form a Cayley join")
    return _codegrees_add(P, data.codegree, F, G)


def _codegrees_add(P: LatticePolytope, codegree: int, F: Face, G: Face) -> bool:
    return codegree == _face_codegree(P, F) + _face_codegree(P, G)


def iter_gorenstein_joins(
    P: LatticePolytope, pair_cap: Optional[int] = None
) -> tuple[list[tuple[Face, Face]], int, bool]:
    """
    Gorenstein joins among the join decompositions of P.

    Returns:
        (joins, pairs scanned, whether the cap stopped the scan)
    """
    cap = settings.join_pair_cap if pair_cap is None else pair_cap
    if cap < 0:
        raise InputError(f"join pair cap must be non-negative, got {cap}")
    codegree = require_gorenstein(P).codegree
    found = []
    scanned = 0
    for F, G in iter_joins(P):
        if scanned >= cap:
            logger.warning(f"join scan of {P!r} stopped at the cap of {cap} pairs")
            return found, scanned, True
        scanned += 1
        # iter_joins yields joins only, so one Cayley test settles the pair
        if is_cayley_pair(P, F, G) and _codegrees_add(P, codegree, F, G):
            found.append((F, G))
    return found, scanned, False


# =============================================================================
# Verdicts
# =============================================================================


def dual_lstar_check(P: LatticePolytope) -> Verdict:
    """P thin ⇔ P^× thin, and deg l*_P = deg l*_{P^×}."""
    dual = gorenstein_dual(P)
    l_p, l_d = lstar(P), lstar(dual)
    thin_ok = l_p.is_zero == l_d.is_zero
    degree_ok = l_p.degree == l_d.degree
    return Verdict(
        name="dual_lstar",
        passed=thin_ok and degree_ok,
        detail={
            "lstar": l_p.to_list(),
            "dual_lstar": l_d.to_list(),
            "thin_duality": thin_ok,
            "degree_duality": degree_ok,
            "polynomials_equal": l_p == l_d,
        },
    )


def subdegree_law_check(P: LatticePolytope) -> Verdict:
    """l* = 0, or l* starts with t^r and ends with t^deg P, both with coefficient 1."""
    data = require_gorenstein(P)
    l = lstar(P)
    if l.is_zero:
        return Verdict("subdegree_law", True, {"thin": True})
    r = data.codegree
    passed = (
        l.subdegree == r
        and l[r] == 1
        and l.degree == data.hstar.degree
        and l.leading_coefficient == 1
    )
    return Verdict(
        "subdegree_law",
        passed,
        {"lstar": l.to_list(), "codegree": r, "degree": data.hstar.degree},
    )


def gorenstein_simplex_check(S: LatticePolytope) -> Verdict:
    """A Gorenstein simplex is thin exactly when it is a lattice pyramid."""
    require_gorenstein(S)
    if not S.is_simplex:
        raise InputError("gorenstein_simplex_check requires a simplex")
    thin = lstar(S).is_zero
    pyramid = is_lattice_pyramid(S) is not None
    return Verdict("gorenstein_simplex", thin == pyramid, {"thin": thin, "pyramid": pyramid})


def thin_width_check(P: LatticePolytope) -> Verdict:
    """A thin Gorenstein polytope of positive dimension has lattice width 1."""
    require_gorenstein(P)
    thin = lstar(P).is_zero
    if not thin or P.dim == 0:
        return Verdict("thin_gorenstein_width", True, {"thin": thin}, applicable=False)
    witness = is_cayley(P)
    return Verdict(
        "thin_gorenstein_width",
        witness is not None,
        {"direction": list(witness.direction) if witness else None},
    )


def theorem_main_check(P: LatticePolytope, pair_cap: Optional[int] = None) -> MainTheoremVerdict:
    """
    Evaluate, independently, for a Gorenstein P:
    (i) P is thin;
    (ii) P is trivially thin or a Gorenstein join with a trivially thin factor;
    (iii) P is g-thin or a Gorenstein join F, G with deg l*_F = deg F and G g-thin;
    and, when P is not thin, deg l*_P = deg P.

    Also records whether a free-join decomposition exists when P is thin but
    not trivially thin.

    Raises:
        FalsificationError: the conditions disagree on a fully scanned P
    """
    data = require_gorenstein(P)
    l = lstar(P)
    thin = l.is_zero
    joins, scanned, capped = iter_gorenstein_joins(P, pair_cap)

    def factor_trivially_thin(X: Face) -> bool:
        return is_trivially_thin(P.face_polytope(X))

    def factor_g_thin(X: Face) -> bool:
        return is_g_thin(P.face_polytope(X))

    def lstar_full_degree(X: Face) -> bool:
        XP = P.face_polytope(X)
        return lstar(XP).degree == polytope_hstar(XP).degree

    item_ii = is_trivially_thin(P) or any(
        factor_trivially_thin(F) or factor_trivially_thin(G) for F, G in joins
    )
    item_iii = is_g_thin(P) or any(
        (lstar_full_degree(F) and factor_g_thin(G)) or (lstar_full_degree(G) and factor_g_thin(F))
        for F, G in joins
    )
    degree_clause = thin or l.degree == data.hstar.degree

    free_witness = None
    if thin and not is_trivially_thin(P):
        free_witness = any(free_join_index(P, F, G) == 1 for F, G in iter_joins(P))

    verdict = MainTheoremVerdict(
        thin=thin,
        trivially_thin_or_join=item_ii,
        g_thin_or_join=item_iii,
        degree_clause=degree_clause,
        gorenstein_joins=tuple(joins),
        free_join_witness=free_witness,
        pairs_scanned=scanned,
        cap_reached=capped,
    )
    if not verdict.consistent:
        witness = {"vertices": [list(v) for v in P.vertices], **verdict.to_dict()}
        if capped:
            logger.warning(f"inconclusive main-theorem check (cap reached): {witness}")
        else:
            logger.error(f"main-theorem equivalence failed: {witness}")
            raise FalsificationError("thin Gorenstein characterization failed", witness)
    return verdict


def face_codegree_check(P: LatticePolytope) -> Verdict:
    """
    codeg P ≤ codeg F + codeg F^* for every nonempty proper face F, with
    equality exactly when P is a Gorenstein join with factor F.
    """
    data = require_gorenstein(P)
    lattice = P.face_lattice()
    everything = lattice.top.vertices
    failures = []
    for F in lattice.faces[1:-1]:
        F_star = dual_face(P, F)
        total = _face_codegree(P, F) + _face_codegree(data.dual, F_star)
        G = lattice.face_of(everything - F.vertices)
        is_factor = (
            G is not None
            and not G.is_empty
            and is_cayley_join(P, F, G)
            and is_gorenstein_join(P, F, G)
        )
        if total < data.codegree or (total == data.codegree) != is_factor:
            failures.append(
                {"face": sorted(F.vertices), "codeg_sum": total, "gorenstein_factor": is_factor}
            )
    return Verdict("face_codegree", not failures, {"codegree": data.codegree, "failures": failures})


def join_inequality_check(P: LatticePolytope, F: Face, G: Face) -> Verdict:
    """
    l*_F l*_G ≤ l*_P and h*_F h*_G ≤ h*_P on a join; for a Gorenstein join
    also l*_{P^×} ≤ l*_{F^×} l*_{G^×} and the same for h*.
    """
    if not is_join(P, F, G):
        raise NotAJoinError("faces do not form a join")
    FP, GP = P.face_polytope(F), P.face_polytope(G)
    l_ok = (lstar(FP) * lstar(GP)).le(lstar(P))
    h_ok = (polytope_hstar(FP) * polytope_hstar(GP)).le(polytope_hstar(P))
    detail: dict[str, Any] = {"lstar_product": l_ok, "hstar_product": h_ok}
    passed = l_ok and h_ok

    if is_gorenstein(P) and is_cayley_join(P, F, G) and is_gorenstein_join(P, F, G):
        P_dual = gorenstein_dual(P)
        F_dual, G_dual = gorenstein_dual(FP), gorenstein_dual(GP)
        dl_ok = lstar(P_dual).le(lstar(F_dual) * lstar(G_dual))
        dh_ok = polytope_hstar(P_dual).le(polytope_hstar(F_dual) * polytope_hstar(G_dual))
        detail.update({"dual_lstar_product": dl_ok, "dual_hstar_product": dh_ok})
        passed = passed and dl_ok and dh_ok
    return Verdict("join_inequality", passed, detail)


def _shape(Q: LatticePolytope) -> tuple[int, int, int]:
    return (Q.dim, polytope_hstar(Q).degree, g_of_polytope(Q).degree)


def join_duality_check(P: LatticePolytope, F: Face, G: Face) -> Verdict:
    """F, G^*, F^× and (G^*)^× share dimension, degree and deg g on a Gorenstein join."""
    data = require_gorenstein(P)
    if not is_gorenstein_join(P, F, G):
        raise NotAJoinError("faces do not form a Gorenstein join")
    FP = P.face_polytope(F)
    G_star = data.dual.face_polytope(dual_face(P, G))
    shapes = {
        "F": _shape(FP),
        "G_star": _shape(G_star),
        "F_dual": _shape(gorenstein_dual(FP)),
        "G_star_dual": _shape(gorenstein_dual(G_star)),
    }
    return Verdict(
        "join_duality",
        len(set(shapes.values())) == 1,
        {k: list(v) for k, v in shapes.items()},
    )


def spanning_corollary_check(P: LatticePolytope) -> Verdict:
    """Spanning Gorenstein: thin ⇔ trivially thin or a free join with a trivially thin factor."""
    require_gorenstein(P)
    if not is_spanning(P):
        return Verdict("spanning_corollary", True, {"spanning": False}, applicable=False)
    thin = lstar(P).is_zero
    free_with_tt = any(
        free_join_index(P, F, G) == 1
        and (is_trivially_thin(P.face_polytope(F)) or is_trivially_thin(P.face_polytope(G)))
        for F, G in iter_joins(P)
    )
    rhs = is_trivially_thin(P) or free_with_tt
    return Verdict(
        "spanning_corollary",
        thin == rhs,
        {"thin": thin, "trivially_thin": is_trivially_thin(P), "free_join_trivially_thin_factor": free_with_tt},
    )


def gorenstein_checks(P: LatticePolytope, pair_cap: Optional[int] = None) -> list[Verdict]:
    """Every applicable Gorenstein verdict for P (P must be Gorenstein)."""
    main = theorem_main_check(P, pair_cap)
    checks = [
        Verdict("main_theorem", main.consistent, main.to_dict(), applicable=not main.cap_reached),
        subdegree_law_check(P),
        dual_lstar_check(P),
        thin_width_check(P),
        face_codegree_check(P),
        spanning_corollary_check(P),
    ]
    if P.is_simplex:
        checks.append(gorenstein_simplex_check(P))
    return checks


if __name__ == "__main__":
    import argparse
    import json

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Gorenstein data of a lattice polytope")
    parser.add_argument("vertices", help="JSON vertex list")
    args = parser.parse_args()

    P = build(json.loads(args.vertices))
    data = gorenstein_data(P)
    print(f"gorenstein={data.is_gorenstein} codegree={data.codegree} h*={data.hstar}")
    if data.is_gorenstein:
        print(f"dual vertices: {[list(v) for v in data.dual.vertices]}")
        for check in gorenstein_checks(P):
            print(f"  {check.name}: {'ok' if check.passed else 'FAILED'}")
