"""
Toric f/g/h-polynomials of lower Eulerian posets

Handles:
- RankedPoset: finite posets with a minimum and a rank function
- The f/g/h recursion over half-open lower intervals [0̂, x)
- Face-lattice intervals [F, P) and dual intervals (F, P]^*, memoized per polytope

Convention: for a poset of rank d,
    f(t) = Σ_x (t-1)^(d-ρ(x)) g_[0̂,x)(t),
    g(t) = Σ_{i ≤ ⌊d/2⌋} (f_i - f_{i-1}) t^i,
    h(t) = Σ_i f_{d-i} t^i,
with f = g = h = 1 on the empty poset.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence

from app.exceptions import InputError
from app.services.polynomial import T_MINUS_ONE, IntPolynomial
from app.services.polytope import Face, FaceLattice, LatticePolytope

logger = logging.getLogger(__name__)


class NonGradedPosetError(InputError):
    """Poset has no minimum or is not graded by its rank function."""

    pass


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class GHRecord:
    """f, g and h of one poset of rank d."""

    f: IntPolynomial
    g: IntPolynomial
    h: IntPolynomial
    rank: int


@dataclass(frozen=True)
class RankedPoset:
    """
    Finite ranked poset on elements 0..n-1.

    ``below[i]`` is the strict down-set of i; ``ranks[i]`` is ρ(i) with the
    minimum at rank 0. ``labels`` optionally names the elements.
    """

    ranks: tuple[int, ...]
    below: tuple[frozenset[int], ...]
    labels: Optional[tuple[Hashable, ...]] = None

    @classmethod
    def empty(cls) -> "RankedPoset":
        return cls(ranks=(), below=())

    @classmethod
    def from_order(
        cls, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]
    ) -> "RankedPoset":
        """
        Build from an element list and an order predicate.

        Ranks are the lengths of the chains down to the minimum.

        Raises:
            NonGradedPosetError: no unique minimum, or chains of unequal length
        """
        n = len(elements)
        below = tuple(
            frozenset(j for j in range(n) if j != i and leq(elements[j], elements[i]))
            for i in range(n)
        )
        return cls(ranks=_ranks_from_below(below), below=below, labels=tuple(elements))

    @property
    def size(self) -> int:
        return len(self.ranks)

    @property
    def rank(self) -> int:
        """Length of the longest chain."""
        return max(self.ranks) if self.ranks else 0

    @property
    def minimum(self) -> Optional[int]:
        for i, b in enumerate(self.below):
            if not b:
                return i
        return None

    def above(self, i: int) -> frozenset[int]:
        return frozenset(j for j in range(self.size) if i in self.below[j])

    def lower_interval(self, x: int) -> "RankedPoset":
        """[0̂, x) as a poset of its own."""
        members = sorted(self.below[x])
        position = {e: k for k, e in enumerate(members)}
        return RankedPoset(
            ranks=tuple(self.ranks[e] for e in members),
            below=tuple(
                frozenset(position[j] for j in self.below[e]) for e in members
            ),
            labels=tuple(self.labels[e] for e in members) if self.labels else None,
        )

    def dual(self) -> "RankedPoset":
        """Order reversed, re-ranked from the new minimum."""
        below = tuple(self.above(i) for i in range(self.size))
        return RankedPoset(ranks=_ranks_from_below(below), below=below, labels=self.labels)

    def is_lower_eulerian(self) -> bool:
        """Every interval [x, y], x < y, has as many even- as odd-rank elements."""
        for y in range(self.size):
            for x in self.below[y]:
                members = [z for z in self.below[y] if x == z or x in self.below[z]]
                members.append(y)
                balance = sum(1 if self.ranks[z] % 2 == 0 else -1 for z in members)
                if balance != 0:
                    return False
        return True


def _ranks_from_below(below: Sequence[frozenset[int]]) -> tuple[int, ...]:
    n = len(below)
    if n == 0:
        return ()
    minima = [i for i in range(n) if not below[i]]
    if len(minima) != 1:
        raise NonGradedPosetError(f"poset has {len(minima)} minimal elements, expected 1")

    ranks: dict[int, int] = {}
    for i in sorted(range(n), key=lambda i: len(below[i])):
        covers = [
            j for j in below[i] if not any(j in below[k] for k in below[i])
        ]
        if not covers:
            ranks[i] = 0
            continue
        candidate = {ranks[j] + 1 for j in covers}
        if len(candidate) != 1:
            raise NonGradedPosetError(f"element {i} covers elements of different ranks")
        ranks[i] = candidate.pop()
    return tuple(ranks[i] for i in range(n))


# =============================================================================
# Recursion
# =============================================================================


def _g_from_f(f: IntPolynomial, d: int) -> IntPolynomial:
    return IntPolynomial.of(f[i] - f[i - 1] if i else f[0] for i in range(d // 2 + 1))


def _h_from_f(f: IntPolynomial, d: int) -> IntPolynomial:
    return IntPolynomial.of(f[d - i] for i in range(d + 1))


def _record_from_f(f: IntPolynomial, d: int) -> GHRecord:
    return GHRecord(f=f, g=_g_from_f(f, d), h=_h_from_f(f, d), rank=d)


def fgh(poset: RankedPoset) -> GHRecord:
    """
    f, g and h of a lower Eulerian poset.

    The polynomials g_[0̂,x) are filled in rank order, so each lower interval
    is evaluated once.

    Args:
        poset: Ranked poset with minimum (or empty)

    Returns:
        GHRecord
    """
    if poset.size == 0:
        one = IntPolynomial.one()
        return GHRecord(f=one, g=one, h=one, rank=0)

    g_below: dict[int, IntPolynomial] = {}
    for x in sorted(range(poset.size), key=lambda i: poset.ranks[i]):
        d_x = poset.ranks[x] - 1
        if d_x < 0:
            g_below[x] = IntPolynomial.one()
            continue
        f_x = sum(
            (T_MINUS_ONE ** (d_x - poset.ranks[y]) * g_below[y] for y in poset.below[x]),
            IntPolynomial.zero(),
        )
        g_below[x] = _g_from_f(f_x, d_x)

    d = poset.rank
    f = sum(
        (T_MINUS_ONE ** (d - poset.ranks[x]) * g_below[x] for x in range(poset.size)),
        IntPolynomial.zero(),
    )
    return _record_from_f(f, d)


def fgh_naive(poset: RankedPoset) -> GHRecord:
    """Direct recursion without sharing, materializing every [0̂, x)."""
    if poset.size == 0:
        one = IntPolynomial.one()
        return GHRecord(f=one, g=one, h=one, rank=0)
    d = poset.rank
    f = IntPolynomial.zero()
    for x in range(poset.size):
        f = f + T_MINUS_ONE ** (d - poset.ranks[x]) * fgh_naive(poset.lower_interval(x)).g
    return _record_from_f(f, d)


# =============================================================================
# Face-lattice intervals
# =============================================================================


def _face_poset(faces: list[Face], rank_of: Callable[[Face], int], reverse: bool) -> RankedPoset:
    position = {f.vertices: k for k, f in enumerate(faces)}
    if reverse:
        below = tuple(
            frozenset(position[g.vertices] for g in faces if f < g) for f in faces
        )
    else:
        below = tuple(
            frozenset(position[g.vertices] for g in faces if g < f) for f in faces
        )
    return RankedPoset(
        ranks=tuple(rank_of(f) for f in faces),
        below=below,
        labels=tuple(tuple(sorted(f.vertices)) for f in faces),
    )


def upper_interval_poset(lattice: FaceLattice, F: Face) -> RankedPoset:
    """[F, P) ranked by dim G - dim F."""
    faces = lattice.interval(F, lattice.top, include_upper=False)
    return _face_poset(faces, lambda g: g.dim - F.dim, reverse=False)


def dual_interval_poset(lattice: FaceLattice, F: Face) -> RankedPoset:
    """(F, P]^*: order reversed, ranked by dim P - dim G."""
    faces = lattice.interval(F, lattice.top, include_lower=False)
    top_dim = lattice.dim
    return _face_poset(faces, lambda g: top_dim - g.dim, reverse=True)


def _simplex_shortcut(P: LatticePolytope) -> bool:
    # every interval of a simplex's face lattice is boolean
    return P.is_simplex


def g_interval_up(P: LatticePolytope, F: Face) -> IntPolynomial:
    """g of [F, P), re-ranked from F."""
    if _simplex_shortcut(P):
        return IntPolynomial.one()
    lattice = P.face_lattice()
    key = ("up", lattice.index[F.vertices])
    return lattice.memo_get_or_compute(key, lambda: fgh(upper_interval_poset(lattice, F)).g)


def g_of_dual_interval(P: LatticePolytope, F: Face) -> IntPolynomial:
    """g of the dual of (F, P], of rank dim P - dim F - 1."""
    if _simplex_shortcut(P):
        return IntPolynomial.one()
    lattice = P.face_lattice()
    key = ("dual", lattice.index[F.vertices])
    return lattice.memo_get_or_compute(key, lambda: fgh(dual_interval_poset(lattice, F)).g)


def proper_face_record(P: LatticePolytope) -> GHRecord:
    """f, g, h of the proper-face poset [∅, P)."""
    lattice = P.face_lattice()
    return fgh(upper_interval_poset(lattice, lattice.bottom))


def g_of_polytope(P: LatticePolytope) -> IntPolynomial:
    """g_P, the g-polynomial of [∅, P)."""
    lattice = P.face_lattice()
    return g_interval_up(P, lattice.bottom)


def h_of_polytope(P: LatticePolytope) -> IntPolynomial:
    """Toric h-polynomial of [∅, P)."""
    return proper_face_record(P).h


if __name__ == "__main__":
    import argparse
    import json

    from app.services.polytope import build

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Toric g/h polynomials of a polytope")
    parser.add_argument("vertices", help="JSON vertex list")
    args = parser.parse_args()

    P = build(json.loads(args.vertices))
    record = proper_face_record(P)
    print(f"f: {record.f}")
    print(f"g: {record.g}")
    print(f"h: {record.h}")
