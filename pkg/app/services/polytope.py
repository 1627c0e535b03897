"""
Lattice polytope geometry

Handles:
- Building vertex-defined lattice polytopes (dedup, redundancy removal,
  normalization of lower-dimensional input to its affine-hull lattice)
- Facet inequalities and the face lattice [∅, P]
- Lattice point enumeration of dilates
- Structural predicates: lattice pyramid, join, free join, Cayley, spanning
- Lattice width, unimodular equivalence, sublattice views, quotient groups
- Standard constructions (simplices, cubes, free joins, Cayley sums,
  Lawrence prisms)
"""
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Optional, Sequence

from app.exceptions import InputError
from app.services.intlinalg import (
    IntMatrix,
    LatticeBasis,
    Vector,
    determinant,
    gcd_of,
    generated_lattice_basis,
    integer_scaled,
    rank,
    rational_inverse,
    rational_kernel,
    saturated_basis,
    smith_normal_form,
    solve_rational,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Exceptions
# =============================================================================


class PolytopeError(InputError):
    """Base exception for invalid polytope input."""

    pass


class DimensionMismatchError(PolytopeError):
    """Operands live in incompatible dimensions."""

    pass


class NotASimplexError(PolytopeError):
    """Operation requires a simplex."""

    pass


class NotAJoinError(PolytopeError):
    """The given faces do not form a join decomposition."""

    pass


class SublatticeError(PolytopeError):
    """A vertex is not in the column lattice of the given basis."""

    pass


# =============================================================================
# Data Classes
# =============================================================================


@dataclass(frozen=True)
class Facet:
    """Facet inequality normal·x >= offset with primitive integer normal."""

    normal: Vector
    offset: int
    vertices: frozenset[int]

    def value(self, x: Sequence[int]) -> int:
        """Lattice distance of x from the facet hyperplane (signed)."""
        return sum(a * b for a, b in zip(self.normal, x)) - self.offset


@dataclass(frozen=True)
class Face:
    """A face given by the indices of its vertices; dim(∅) = -1."""

    vertices: frozenset[int]
    dim: int

    @property
    def rank(self) -> int:
        return self.dim + 1

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.dim, tuple(sorted(self.vertices)))

    def __le__(self, other: "Face") -> bool:
        return self.vertices <= other.vertices

    def __lt__(self, other: "Face") -> bool:
        return self.vertices < other.vertices


@dataclass(frozen=True)
class AffineEmbedding:
    """x_ambient = origin + Σ c_i basis_i for normalized coordinates c."""

    origin: Vector
    basis: tuple[Vector, ...]

    def to_ambient(self, coords: Sequence[int]) -> Vector:
        out = list(self.origin)
        for c, b in zip(coords, self.basis):
            for i, x in enumerate(b):
                out[i] += c * x
        return tuple(out)


@dataclass(frozen=True)
class AffineMap:
    """x ↦ A·x + b."""

    A: IntMatrix
    b: Vector

    def __call__(self, x: Sequence[int]) -> Vector:
        return tuple(y + t for y, t in zip(self.A.apply(x), self.b))


@dataclass(frozen=True)
class WidthResult:
    """Lattice width found by exhaustive direction search."""

    width: int
    direction: Vector
    bound: int
    exact_within_bound: bool = True


@dataclass(frozen=True)
class CayleyWitness:
    """Functional u with u = level on F and u = level + 1 on G."""

    direction: Vector
    level: int
    lower: Face
    upper: Face


@dataclass(frozen=True)
class PyramidWitness:
    apex: Optional[int]
    base: Face


@dataclass(frozen=True)
class SpanningData:
    """Affine lattice generated by P ∩ Z^d: translation + column basis B."""

    translation: Vector
    basis: IntMatrix
    index: int

    @property
    def is_spanning(self) -> bool:
        return self.index == 1


@dataclass(frozen=True)
class QuotientGroup:
    """Z^{d+1} modulo the vertices of S × {1}."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def nontrivial_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def is_cyclic(self) -> bool:
        return len(self.nontrivial_factors) <= 1


# =============================================================================
# Face lattice
# =============================================================================


@dataclass
class FaceLattice:
    """
    All faces ∅ ≤ F ≤ P ordered by inclusion, ranked by ρ(F) = dim F + 1.

    Faces are sorted by (dim, vertex indices); position 0 is ∅ and the last
    position is P. ``memo`` stores interval polynomials computed by the
    poset layer, keyed by (face index, dual flag).
    """

    faces: tuple[Face, ...]
    memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.index = {face.vertices: i for i, face in enumerate(self.faces)}
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.faces[-1].dim

    @property
    def bottom(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def face_of(self, vertices: Iterable[int]) -> Optional[Face]:
        i = self.index.get(frozenset(vertices))
        return None if i is None else self.faces[i]

    def of_dim(self, dim: int) -> list[Face]:
        return [f for f in self.faces if f.dim == dim]

    def f_vector(self) -> tuple[int, ...]:
        """Face counts for dims -1..d."""
        return tuple(len(self.of_dim(k)) for k in range(-1, self.dim + 1))

    def interval(
        self,
        lower: Face,
        upper: Face,
        include_lower: bool = True,
        include_upper: bool = True,
    ) -> list[Face]:
        """Faces G with lower ≤ G ≤ upper, endpoints optionally excluded."""
        out = []
        for g in self.faces:
            if not (lower <= g and g <= upper):
                continue
            if not include_lower and g == lower:
                continue
            if not include_upper and g == upper:
                continue
            out.append(g)
        return out

    def memo_get_or_compute(self, key, compute):
        with self._lock:
            if key in self.memo:
                return self.memo[key]
        value = compute()
        with self._lock:
            return self.memo.setdefault(key, value)

    def is_eulerian(self) -> bool:
        """Every nontrivial interval has as many even- as odd-rank faces."""
        for x in self.faces:
            for y in self.faces:
                if x == y or not x <= y:
                    continue
                balance = sum(
                    1 if g.rank % 2 == 0 else -1 for g in self.interval(x, y)
                )
                if balance != 0:
                    return False
        return True


# =============================================================================
# Polytope
# =============================================================================


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _facets_of(points: Sequence[Vector], d: int) -> list[tuple[Vector, int]]:
    """Facet inequalities of a full-dimensional point set by hyperplane fitting."""
    if d == 0:
        return []
    found: dict[tuple[Vector, int], None] = {}
    for subset in combinations(range(len(points)), d):
        base = points[subset[0]]
        diffs = [
            [a - b for a, b in zip(points[i], base)] for i in subset[1:]
        ]
        kernel = rational_kernel(IntMatrix.from_rows(diffs, ncols=d))
        if len(kernel) != 1:
            continue
        normal = integer_scaled(kernel[0])
        offset = sum(a * b for a, b in zip(normal, base))
        values = [sum(a * b for a, b in zip(normal, p)) - offset for p in points]
        if all(v >= 0 for v in values):
            found.setdefault((normal, offset), None)
        elif all(v <= 0 for v in values):
            found.setdefault((tuple(-a for a in normal), -offset), None)
    return list(found)


class LatticePolytope:
    """
    Full-dimensional lattice polytope given by its vertices.

    Instances come from ``build`` and are immutable. Facets are computed at
    build time; the face lattice and face polytopes are computed once on
    first use under a lock.
    """

    def __init__(
        self,
        vertices: tuple[Vector, ...],
        facets: tuple[Facet, ...],
        embedding: Optional[AffineEmbedding] = None,
    ):
        self._vertices = vertices
        self._facets = facets
        self.embedding = embedding
        self._lock = threading.RLock()
        self._face_lattice: Optional[FaceLattice] = None
        self._face_polytopes: dict[frozenset[int], "LatticePolytope"] = {}
        self._volume: Optional[int] = None

    # -------------------------------------------------------------------------
    # Basic attributes
    # -------------------------------------------------------------------------

    @property
    def vertices(self) -> tuple[Vector, ...]:
        return self._vertices

    @property
    def facets(self) -> tuple[Facet, ...]:
        return self._facets

    @property
    def ambient_dim(self) -> int:
        return len(self._vertices[0])

    @property
    def dim(self) -> int:
        return self.ambient_dim

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def is_simplex(self) -> bool:
        return self.n_vertices == self.dim + 1

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self._vertices)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return frozenset(self._vertices) == frozenset(other._vertices)

    def __hash__(self) -> int:
        return hash(frozenset(self._vertices))

    def to_dict(self) -> dict:
        return {"vertices": [list(v) for v in self._vertices]}

    # -------------------------------------------------------------------------
    # Membership and lattice points
    # -------------------------------------------------------------------------

    def contains(self, x: Sequence[int], dilation: int = 1, strict: bool = False) -> bool:
        for f in self._facets:
            v = sum(a * b for a, b in zip(f.normal, x)) - dilation * f.offset
            if v < 0 or (strict and v == 0):
                return False
        return True

    def lattice_points(self, dilation: int = 1, interior: bool = False) -> list[Vector]:
        """
        Lattice points of nP (relative interior if ``interior``).

        Scans the integer bounding box of nP row by row; the last coordinate
        range of every row is cut out exactly by the facet inequalities.

        Args:
            dilation: n >= 0
            interior: Count only points strictly inside every facet

        Returns:
            Points in lexicographic order
        """
        if dilation < 0:
            raise InputError("dilation must be nonnegative")
        d = self.dim
        if d == 0:
            return [] if (interior and dilation == 0) else [()]

        lows = [dilation * min(v[i] for v in self._vertices) for i in range(d)]
        highs = [dilation * max(v[i] for v in self._vertices) for i in range(d)]
        rows = [(f.normal, dilation * f.offset) for f in self._facets]
        points: list[Vector] = []

        def sweep(prefix: tuple[int, ...], partial: list[int]):
            k = len(prefix)
            if k == d - 1:
                lo, hi = lows[k], highs[k]
                for (a, b), s in zip(rows, partial):
                    c, rhs = a[k], b - s
                    if c > 0:
                        lo = max(lo, rhs // c + 1 if interior else -((-rhs) // c))
                    elif c < 0:
                        hi = min(hi, -((-rhs) // c) - 1 if interior else rhs // c)
                    elif s < b or (interior and s == b):
                        return
                    if lo > hi:
                        return
                points.extend(prefix + (x,) for x in range(lo, hi + 1))
                return
            for x in range(lows[k], highs[k] + 1):
                sweep(prefix + (x,), [s + a[k] * x for (a, _), s in zip(rows, partial)])

        sweep((), [0] * len(rows))
        return points

    # -------------------------------------------------------------------------
    # Faces
    # -------------------------------------------------------------------------

    def face_lattice(self) -> FaceLattice:
        """Face lattice as the closure of facet vertex sets under intersection."""
        with self._lock:
            if self._face_lattice is None:
                self._face_lattice = self._build_face_lattice()
            return self._face_lattice

    def _build_face_lattice(self) -> FaceLattice:
        everything = frozenset(range(self.n_vertices))
        facet_sets = [f.vertices for f in self._facets]
        seen = set(facet_sets)
        frontier = list(facet_sets)
        while frontier:
            fresh = []
            for a in frontier:
                for b in facet_sets:
                    c = a & b
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
            frontier = fresh
        seen.add(frozenset())
        seen.add(everything)
        faces = [
            Face(vertices=s, dim=_affine_rank([self._vertices[i] for i in sorted(s)]) if s else -1)
            for s in seen
        ]
        faces.sort(key=lambda f: f.sort_key)
        logger.debug(f"Face lattice of {self!r}: {len(faces)} faces")
        return FaceLattice(faces=tuple(faces))

    def face_points(self, face: Face) -> list[Vector]:
        return [self._vertices[i] for i in sorted(face.vertices)]

    def face_polytope(self, face: Face) -> "LatticePolytope":
        """The face as a polytope in the coordinates of its affine-hull lattice."""
        if face.is_empty:
            raise PolytopeError("the empty face has no polytope")
        with self._lock:
            cached = self._face_polytopes.get(face.vertices)
            if cached is None:
                if len(face.vertices) == self.n_vertices:
                    cached = self
                else:
                    cached = build(self.face_points(face))
                self._face_polytopes[face.vertices] = cached
            return cached

    def facet_of(self, face: Face) -> Optional[Facet]:
        for f in self._facets:
            if f.vertices == face.vertices:
                return f
        return None

    # -------------------------------------------------------------------------
    # Volume
    # -------------------------------------------------------------------------

    @property
    def volume(self) -> int:
        """
        Normalized lattice volume.

        Cones from the first vertex over the facets missing it: each contributes
        lattice height times the facet's own normalized volume.
        """
        with self._lock:
            if self._volume is None:
                self._volume = self._compute_volume()
            return self._volume

    def _compute_volume(self) -> int:
        d = self.dim
        if d == 0:
            return 1
        if self.is_simplex:
            v0 = self._vertices[0]
            return abs(determinant([[a - b for a, b in zip(v, v0)] for v in self._vertices[1:]]))
        v0 = self._vertices[0]
        total = 0
        for f in self._facets:
            if 0 in f.vertices:
                continue
            facet_face = Face(vertices=f.vertices, dim=d - 1)
            total += f.value(v0) * self.face_polytope(facet_face).volume
        return total


# =============================================================================
# Construction
# =============================================================================


def build(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """
    Build a lattice polytope from a point list.

    Duplicates and non-vertices are dropped (first occurrence order kept).
    Lower-dimensional input is rewritten in a basis of the lattice of its
    affine hull, so the result is always full-dimensional.

    Args:
        points: Nonempty iterable of equal-length integer vectors

    Returns:
        LatticePolytope

    Raises:
        PolytopeError: empty or ragged input
    """
    raw = [tuple(int(x) for x in p) for p in points]
    if not raw:
        raise PolytopeError("empty vertex list")
    n = len(raw[0])
    if any(len(p) != n for p in raw):
        raise PolytopeError("vertices have different lengths")

    unique = list(dict.fromkeys(raw))
    origin = unique[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in unique]
    r = rank(diffs[1:]) if len(diffs) > 1 else 0

    embedding = None
    if r < n:
        lattice: LatticeBasis = saturated_basis(diffs[1:], n)
        pts = [lattice.coordinates(v) for v in diffs]
        embedding = AffineEmbedding(origin=origin, basis=lattice.basis)
        logger.debug(f"Normalized {n}-dim input to its {r}-dim affine lattice")
    else:
        pts = unique

    d = r
    inequalities = _facets_of(pts, d)

    if d == 0:
        return LatticePolytope(vertices=(tuple(pts[0]),), facets=(), embedding=embedding)

    vertex_points = []
    for p in pts:
        tight = [a for a, b in inequalities if sum(x * y for x, y in zip(a, p)) == b]
        if rank(tight) == d:
            vertex_points.append(tuple(p))

    facets = tuple(
        Facet(
            normal=a,
            offset=b,
            vertices=frozenset(
                i
                for i, v in enumerate(vertex_points)
                if sum(x * y for x, y in zip(a, v)) == b
            ),
        )
        for a, b in inequalities
    )
    return LatticePolytope(vertices=tuple(vertex_points), facets=facets, embedding=embedding)


def standard_simplex(d: int) -> LatticePolytope:
    """Δ_d = conv(0, e_1, ..., e_d)."""
    return build([[0] * d] + [[int(i == j) for j in range(d)] for i in range(d)])


def cube(d: int, lo: int = 0, hi: int = 1) -> LatticePolytope:
    """[lo, hi]^d."""
    return build(product((lo, hi), repeat=d))


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise PolytopeError("dilation factor must be positive")
    return build([[k * x for x in v] for v in P.vertices])


def translate(P: LatticePolytope, t: Sequence[int]) -> LatticePolytope:
    if len(t) != P.ambient_dim:
        raise DimensionMismatchError("translation has the wrong length")
    return build([[x + y for x, y in zip(v, t)] for v in P.vertices])


def free_join(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """conv(P × 0 × 0, 0 × Q × 1) in dimension dim P + dim Q + 1."""
    n, m = P.ambient_dim, Q.ambient_dim
    pts = [list(v) + [0] * m + [0] for v in P.vertices]
    pts += [[0] * n + list(w) + [1] for w in Q.vertices]
    return build(pts)


def lattice_pyramid(P: LatticePolytope) -> LatticePolytope:
    """conv(P × {0}, (0, ..., 0, 1))."""
    return build([list(v) + [0] for v in P.vertices] + [[0] * P.ambient_dim + [1]])


def cayley_sum(F: LatticePolytope, G: LatticePolytope) -> LatticePolytope:
    """conv(F × {0}, G × {1}) for F, G in the same ambient dimension."""
    if F.ambient_dim != G.ambient_dim:
        raise DimensionMismatchError("Cayley sum needs a common ambient dimension")
    return build([list(v) + [0] for v in F.vertices] + [list(w) + [1] for w in G.vertices])


def lawrence_prism(heights: Sequence[int]) -> LatticePolytope:
    """
    conv(0, e_1, ..., e_{d-1}, k_0 e_d, e_1 + k_1 e_d, ..., e_{d-1} + k_{d-1} e_d).

    Args:
        heights: k_0..k_{d-1}, each at least 1

    Returns:
        d-dimensional Lawrence prism
    """
    d = len(heights)
    if d < 1 or any(k < 1 for k in heights):
        raise PolytopeError("Lawrence prism heights must be positive")
    bases = [[0] * (d - 1)] + [[int(i == j) for j in range(d - 1)] for i in range(d - 1)]
    pts = [b + [0] for b in bases] + [b + [k] for b, k in zip(bases, heights)]
    return build(pts)


# =============================================================================
# Lattice width and Cayley structure
# =============================================================================


def lattice_width(P: LatticePolytope, bound: int = 3) -> WidthResult:
    """
    Minimal width over primitive directions with coordinates in [-B, B].

    Directions are tried by increasing L1 norm; the first minimizer wins, so
    e_1 is reported whenever it attains the minimum.

    Args:
        P: Polytope
        bound: Coordinate bound B >= 1

    Returns:
        WidthResult; ``exact_within_bound`` records that no certificate
        beyond the bound is given
    """
    if bound < 1:
        raise InputError("width search bound must be at least 1")
    d = P.dim
    if d == 0:
        return WidthResult(width=0, direction=(), bound=bound)

    candidates = []
    for u in product(range(-bound, bound + 1), repeat=d):
        first = next((x for x in u if x != 0), 0)
        if first <= 0 or gcd_of(u) != 1:
            continue
        candidates.append(u)
    candidates.sort(key=lambda u: (sum(abs(x) for x in u), tuple(-x for x in u)))

    best: Optional[tuple[int, Vector]] = None
    for u in candidates:
        values = [sum(a * b for a, b in zip(u, v)) for v in P.vertices]
        w = max(values) - min(values)
        if best is None or w < best[0]:
            best = (w, u)
            if w == 1:
                break
    return WidthResult(width=best[0], direction=best[1], bound=bound)


def _cayley_functional(P: LatticePolytope, lower: Face, upper: Face) -> Optional[tuple[Vector, int]]:
    """Integer (u, c) with u = c on ``lower`` and u = c + 1 on ``upper``."""
    rows, rhs = [], []
    for i in sorted(lower.vertices):
        rows.append(list(P.vertices[i]) + [-1])
        rhs.append(0)
    for i in sorted(upper.vertices):
        rows.append(list(P.vertices[i]) + [-1])
        rhs.append(1)
    sol = solve_rational(IntMatrix.from_rows(rows, ncols=P.dim + 1), rhs)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    u = tuple(int(x) for x in sol[:-1])
    return u, int(sol[-1])


def is_cayley(P: LatticePolytope) -> Optional[CayleyWitness]:
    """
    Lattice projection onto Δ_1, if one exists.

    Scans faces F with complementary face G and solves for an integer
    functional equal to c on F and c + 1 on G; this decides width 1 exactly.

    Returns:
        CayleyWitness, or None if P has lattice width != 1
    """
    if P.dim == 0:
        return None
    lattice = P.face_lattice()
    everything = lattice.top.vertices
    for F in lattice.faces[1:-1]:
        G = lattice.face_of(everything - F.vertices)
        if G is None or G.is_empty:
            continue
        found = _cayley_functional(P, F, G)
        if found is not None:
            u, c = found
            return CayleyWitness(direction=u, level=c, lower=F, upper=G)
    return None


def is_cayley_pair(P: LatticePolytope, F: Face, G: Face) -> bool:
    """Whether some lattice functional puts F at level c and G at c + 1."""
    if F.vertices | G.vertices != frozenset(range(P.n_vertices)):
        return False
    return _cayley_functional(P, F, G) is not None or _cayley_functional(P, G, F) is not None


# =============================================================================
# Pyramids and joins
# =============================================================================


def is_lattice_pyramid(P: LatticePolytope) -> Optional[PyramidWitness]:
    """
    Single-apex lattice pyramid test.

    Returns:
        PyramidWitness(apex, base facet) or None; a point is a pyramid with
        no apex and empty base
    """
    lattice = P.face_lattice()
    if P.dim == 0:
        return PyramidWitness(apex=None, base=lattice.bottom)
    everything = frozenset(range(P.n_vertices))
    for apex in range(P.n_vertices):
        rest = everything - {apex}
        for f in P.facets:
            if f.vertices == rest and f.value(P.vertices[apex]) == 1:
                return PyramidWitness(apex=apex, base=lattice.face_of(rest))
    return None


def pyramid_depth(P: LatticePolytope) -> int:
    """How many times P peels as a lattice pyramid (a point counts fully)."""
    depth = 0
    current = P
    while current.dim > 0:
        witness = is_lattice_pyramid(current)
        if witness is None:
            break
        depth += 1
        current = current.face_polytope(witness.base)
    return depth


def is_join(P: LatticePolytope, F: Face, G: Face) -> bool:
    """P = conv(F, G) with dim P = dim F + dim G + 1."""
    if F.is_empty or G.is_empty:
        return False
    if F.vertices & G.vertices:
        return False
    if F.vertices | G.vertices != frozenset(range(P.n_vertices)):
        return False
    return F.dim + G.dim + 1 == P.dim


def iter_joins(P: LatticePolytope) -> Iterator[tuple[Face, Face]]:
    """Every unordered join decomposition (F, G), F before G in face order."""
    lattice = P.face_lattice()
    everything = lattice.top.vertices
    for i, F in enumerate(lattice.faces[1:-1], start=1):
        G = lattice.face_of(everything - F.vertices)
        if G is None or lattice.index[G.vertices] <= i:
            continue
        if is_join(P, F, G):
            yield F, G


def find_join(P: LatticePolytope) -> Optional[tuple[Face, Face]]:
    return next(iter_joins(P), None)


def free_join_index(P: LatticePolytope, F: Face, G: Face) -> int:
    """
    Index of M(F) + M(G) in Z^{d+1}.

    M(X) is the saturated lattice spanned by X × {1}. For a join the ranks add
    up to d + 1, and P is a free join of F and G exactly when the index is 1.
    """
    if not is_join(P, F, G):
        raise NotAJoinError("faces do not form a join of P")
    n = P.dim + 1
    def lifted(face: Face) -> list[list[int]]:
        return [list(v) + [1] for v in P.face_points(face)]

    basis = saturated_basis(lifted(F), n).basis + saturated_basis(lifted(G), n).basis
    return abs(determinant(basis))


def is_free_join(P: LatticePolytope, F: Face, G: Face, method: str = "equivalence") -> bool:
    """
    Whether P is the free join of its faces F and G.

    Args:
        P: Polytope
        F, G: Faces with P = F ∘ G
        method: "equivalence" (compare with the constructed free join) or
            "index" (lattice index test)

    Raises:
        NotAJoinError: if (F, G) is not a join
    """
    if not is_join(P, F, G):
        raise NotAJoinError("faces do not form a join of P")
    if method == "index":
        return free_join_index(P, F, G) == 1
    if method != "equivalence":
        raise InputError(f"unknown free-join method: {method}")
    model = free_join(P.face_polytope(F), P.face_polytope(G))
    return is_unimodularly_equivalent(P, model)


def find_free_join(P: LatticePolytope) -> Optional[tuple[Face, Face]]:
    for F, G in iter_joins(P):
        if free_join_index(P, F, G) == 1:
            return F, G
    return None


# =============================================================================
# Unimodular equivalence
# =============================================================================


def _vertex_signatures(P: LatticePolytope) -> list[tuple[int, int]]:
    """(facets through v, edges through v) per vertex."""
    edges = P.face_lattice().of_dim(1)
    return [
        (
            sum(1 for f in P.facets if i in f.vertices),
            sum(1 for e in edges if i in e.vertices),
        )
        for i in range(P.n_vertices)
    ]


def _anchor_tuple(P: LatticePolytope) -> list[int]:
    chosen = [0]
    for i in range(1, P.n_vertices):
        if _affine_rank([P.vertices[j] for j in chosen + [i]]) == len(chosen):
            chosen.append(i)
        if len(chosen) == P.dim + 1:
            break
    return chosen


def find_unimodular_map(P: LatticePolytope, Q: LatticePolytope) -> Optional[AffineMap]:
    """
    Search an affine unimodular map sending vertices of P onto those of Q.

    An affinely independent anchor tuple of P is sent to every compatible
    ordered tuple of Q; each candidate map is solved over Q and accepted when
    integral, unimodular and vertex-set preserving.
    """
    if P.dim != Q.dim or P.n_vertices != Q.n_vertices:
        return None
    d = P.dim
    if d == 0:
        return AffineMap(
            A=IntMatrix.from_rows([], ncols=0), b=()
        )
    if P.volume != Q.volume or P.face_lattice().f_vector() != Q.face_lattice().f_vector():
        return None

    anchor = _anchor_tuple(P)
    p0 = P.vertices[anchor[0]]
    Dp = IntMatrix.from_columns(
        [[a - b for a, b in zip(P.vertices[i], p0)] for i in anchor[1:]], nrows=d
    )
    det_p = abs(Dp.det())
    Dp_inv = rational_inverse(Dp)
    sig_p = _vertex_signatures(P)
    sig_q = _vertex_signatures(Q)
    q_set = frozenset(Q.vertices)

    for image in permutations(range(Q.n_vertices), d + 1):
        if any(sig_p[a] != sig_q[b] for a, b in zip(anchor, image)):
            continue
        q0 = Q.vertices[image[0]]
        Dq = [[a - b for a, b in zip(Q.vertices[j], q0)] for j in image[1:]]
        if abs(determinant(Dq)) != det_p:
            continue
        # A = Dq · Dp⁻¹ with Dq as columns
        A_rows = []
        integral = True
        for r in range(d):
            row = []
            for c in range(d):
                x = sum(Fraction(Dq[k][r]) * Dp_inv[k][c] for k in range(d))
                if x.denominator != 1:
                    integral = False
                    break
                row.append(int(x))
            if not integral:
                break
            A_rows.append(row)
        if not integral:
            continue
        A = IntMatrix.from_rows(A_rows, ncols=d)
        if not A.is_unimodular():
            continue
        Ap0 = A.apply(p0)
        mapping = AffineMap(A=A, b=tuple(q - a for q, a in zip(q0, Ap0)))
        if frozenset(mapping(v) for v in P.vertices) == q_set:
            return mapping
    return None


def is_unimodularly_equivalent(P: LatticePolytope, Q: LatticePolytope) -> bool:
    return find_unimodular_map(P, Q) is not None


# =============================================================================
# Sublattices
# =============================================================================


def spanning_sublattice(P: LatticePolytope) -> SpanningData:
    """
    Affine lattice generated by P ∩ Z^d.

    Returns:
        SpanningData with the first vertex as translation, an HNF-derived
        column basis of the lattice of point differences, and its index
    """
    t = P.vertices[0]
    diffs = [tuple(a - b for a, b in zip(p, t)) for p in P.lattice_points()]
    basis_rows = generated_lattice_basis(diffs, P.dim)
    if len(basis_rows) < P.dim:
        raise PolytopeError("lattice points do not span the affine hull")
    B = IntMatrix.from_columns(basis_rows, nrows=P.dim)
    return SpanningData(translation=t, basis=B, index=abs(B.det()) if P.dim else 1)


def is_spanning(P: LatticePolytope) -> bool:
    if P.dim == 0:
        return True
    return spanning_sublattice(P).is_spanning


def sublattice_view(
    P: LatticePolytope, B: IntMatrix, translation: Optional[Sequence[int]] = None
) -> LatticePolytope:
    """
    The polytope B⁻¹(P - t): P with respect to the coarser lattice t + B·Z^d.

    Raises:
        SublatticeError: B singular or some vertex outside the lattice
    """
    d = P.dim
    if B.nrows != d or B.ncols != d:
        raise DimensionMismatchError("basis must be a square matrix of the polytope dimension")
    if d and B.det() == 0:
        raise SublatticeError("basis matrix is singular")
    t = tuple(translation) if translation is not None else (0,) * d
    images = []
    for v in P.vertices:
        y = solve_rational(B, [a - b for a, b in zip(v, t)])
        if y is None or any(x.denominator != 1 for x in y):
            raise SublatticeError(f"vertex {v} is not in the column lattice")
        images.append([int(x) for x in y])
    return build(images)


def quotient_group(S: LatticePolytope) -> QuotientGroup:
    """Smith invariants of the (d+1)x(d+1) matrix with columns (v, 1)."""
    if not S.is_simplex:
        raise NotASimplexError("quotient group requires a simplex")
    M = IntMatrix.from_columns([list(v) + [1] for v in S.vertices], nrows=S.dim + 1)
    return QuotientGroup(invariant_factors=smith_normal_form(M).diagonal)


if __name__ == "__main__":
    import argparse
    import json

    logging.basicConfig(level=logging.INFO)

    parser = argparse.ArgumentParser(description="Inspect a lattice polytope")
    parser.add_argument("vertices", help='JSON vertex list, e.g. "[[0,0],[1,0],[0,1]]"')
    args = parser.parse_args()

    P = build(json.loads(args.vertices))
    print(f"dim={P.dim} vertices={len(P.vertices)} facets={len(P.facets)}")
    print(f"f-vector: {P.face_lattice().f_vector()}")
    print(f"volume: {P.volume}")
    print(f"width: {lattice_width(P).width}")
