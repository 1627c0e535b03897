"""
Exact integer / rational linear algebra

Handles:
- Integer matrices with arbitrary-precision entries
- Hermite and Smith normal forms with unimodular transforms
- Exact rational solving and inversion via fractions
- Lattice bases: saturation of a rational subspace, generated-lattice index

No floating point is used anywhere in this module.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from app.exceptions import InputError

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


class LinearAlgebraError(InputError):
    """Base exception for malformed matrix input."""

    pass


class ZeroVectorError(LinearAlgebraError):
    """A nonzero vector was required."""

    pass


# =============================================================================
# Matrix type
# =============================================================================


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(
        cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None
    ) -> "IntMatrix":
        """
        Build a matrix from row sequences.

        Args:
            rows: Iterable of integer rows (all of equal length)
            ncols: Column count, required only when there are no rows

        Returns:
            IntMatrix
        """
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise LinearAlgebraError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise LinearAlgebraError("ncols does not match row length")
            ncols = width
        elif ncols is None:
            ncols = 0
        return cls(entries=data, ncols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        """Build a matrix whose columns are the given vectors."""
        if not columns:
            return cls.from_rows([[] for _ in range(nrows)], ncols=0)
        return cls.from_rows(
            [[col[i] for col in columns] for i in range(nrows)], ncols=len(columns)
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self.entries

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[j] for row in self.entries) for j in range(self.ncols)
        )

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns, ncols=self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise LinearAlgebraError(
                f"shape mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        cols = other.columns
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries],
            ncols=other.ncols,
        )

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise LinearAlgebraError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def det(self) -> int:
        """Exact determinant via Bareiss fraction-free elimination."""
        if not self.is_square:
            raise LinearAlgebraError("determinant of a non-square matrix")
        return determinant(self.entries)

    def is_unimodular(self) -> bool:
        return self.is_square and abs(self.det()) == 1


# =============================================================================
# Scalar helpers
# =============================================================================


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """
    Extended Euclid.

    Returns:
        (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def gcd_of(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """
    Divide an integer vector by the gcd of its entries.

    Args:
        v: Nonzero integer vector

    Returns:
        Primitive vector pointing in the same direction
    """
    g = gcd_of(v)
    if g == 0:
        raise ZeroVectorError("primitive() of the zero vector")
    return tuple(x // g for x in v)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of a square integer matrix given as rows."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# =============================================================================
# Hermite normal form
# =============================================================================


class HermiteForm(NamedTuple):
    """H = U·A with U unimodular."""

    H: IntMatrix
    U: IntMatrix


def _combine_rows(rows: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int):
    """Replace rows (i, j) by (a*ri + b*rj, c*ri + d*rj)."""
    ri, rj = rows[i], rows[j]
    rows[i] = [a * x + b * y for x, y in zip(ri, rj)]
    rows[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hermite_normal_form(A: IntMatrix) -> HermiteForm:
    """
    Row-operation Hermite normal form.

    H is in row echelon form, every pivot is positive and every entry above a
    pivot lies in [0, pivot). Transposed, this is the column-style
    lower-triangular form of Aᵀ.

    Args:
        A: Any integer matrix

    Returns:
        HermiteForm(H, U) with H = U·A and det U = ±1
    """
    m, n = A.nrows, A.ncols
    H = A.to_lists()
    U = IntMatrix.identity(m).to_lists()

    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        for r in range(pivot_row + 1, m):
            b = H[r][col]
            if b == 0:
                continue
            a = H[pivot_row][col]
            g, x, y = extended_gcd(a, b)
            p, q = -b // g, a // g
            _combine_rows(H, pivot_row, r, x, y, p, q)
            _combine_rows(U, pivot_row, r, x, y, p, q)
        pivot = H[pivot_row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            H[pivot_row] = [-x for x in H[pivot_row]]
            U[pivot_row] = [-x for x in U[pivot_row]]
            pivot = -pivot
        for r in range(pivot_row):
            q = H[r][col] // pivot
            if q:
                H[r] = [x - q * y for x, y in zip(H[r], H[pivot_row])]
                U[r] = [x - q * y for x, y in zip(U[r], U[pivot_row])]
        pivot_row += 1

    return HermiteForm(
        H=IntMatrix.from_rows(H, ncols=n), U=IntMatrix.from_rows(U, ncols=m)
    )


# =============================================================================
# Smith normal form
# =============================================================================


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form U·A·V = D with unimodular U, V."""

    diagonal: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries."""
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def index(self) -> int:
        """Product of the nonzero invariant factors."""
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def _swap_rows(M: list[list[int]], i: int, j: int):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: list[list[int]], i: int, j: int):
    for row in M:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """
    Smith normal form by iterated gcd elimination.

    The pivot is always an entry of minimal absolute value in the remaining
    block; the block is reduced until the pivot divides everything in it.

    Args:
        A: Any integer matrix

    Returns:
        SmithForm with diagonal d1 | d2 | ... and U·A·V = D
    """
    m, n = A.nrows, A.ncols
    D = A.to_lists()
    U = IntMatrix.identity(m).to_lists()
    V = IntMatrix.identity(n).to_lists()

    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    if D[i][j] != 0 and (best is None or abs(D[i][j]) < best[0]):
                        best = (abs(D[i][j]), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != s:
                _swap_rows(D, s, pi)
                _swap_rows(U, s, pi)
            if pj != s:
                _swap_cols(D, s, pj)
                _swap_cols(V, s, pj)
            if D[s][s] < 0:
                D[s] = [-x for x in D[s]]
                U[s] = [-x for x in U[s]]
            pivot = D[s][s]

            clean = True
            for i in range(s + 1, m):
                q = D[i][s] // pivot
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[s])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[s])]
                if D[i][s] != 0:
                    clean = False
            for j in range(s + 1, n):
                q = D[s][j] // pivot
                if q:
                    for row in D:
                        row[j] -= q * row[s]
                    for row in V:
                        row[j] -= q * row[s]
                if D[s][j] != 0:
                    clean = False
            if not clean:
                continue

            # Divisibility: fold a non-divisible row into the pivot row.
            offender = next(
                (
                    i
                    for i in range(s + 1, m)
                    for j in range(s + 1, n)
                    if D[i][j] % pivot != 0
                ),
                None,
            )
            if offender is None:
                break
            D[s] = [x + y for x, y in zip(D[s], D[offender])]
            U[s] = [x + y for x, y in zip(U[s], U[offender])]

    diagonal = tuple(D[i][i] for i in range(min(m, n)))
    return SmithForm(
        diagonal=diagonal,
        U=IntMatrix.from_rows(U, ncols=m),
        V=IntMatrix.from_rows(V, ncols=n),
        D=IntMatrix.from_rows(D, ncols=n),
    )


# =============================================================================
# Rational solving
# =============================================================================


def _row_reduce(
    rows: list[list[Fraction]], ncols: int
) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_rational(A: IntMatrix, b: Sequence[int]) -> Optional[list[Fraction]]:
    """
    Exact rational solution of A·x = b.

    Args:
        A: Coefficient matrix
        b: Right-hand side

    Returns:
        One solution (free variables set to zero) or None if inconsistent
    """
    if len(b) != A.nrows:
        raise LinearAlgebraError("right-hand side length does not match row count")
    n = A.ncols
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A.rows, b)]
    aug, pivots = _row_reduce(aug, n)
    for row in aug[len(pivots):]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    """Inverse of a nonsingular square matrix over Q."""
    if not A.is_square:
        raise LinearAlgebraError("inverse of a non-square matrix")
    n = A.nrows
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(A.rows)
    ]
    aug, pivots = _row_reduce(aug, n)
    if len(pivots) < n:
        raise LinearAlgebraError("matrix is singular")
    return [row[n:] for row in aug]


def unimodular_inverse(A: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix."""
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise LinearAlgebraError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in inv], ncols=A.nrows)


def rational_kernel(A: IntMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel of A over Q."""
    n = A.ncols
    rows = [[Fraction(x) for x in row] for row in A.rows]
    rows, pivots = _row_reduce(rows, n) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return basis


def integer_scaled(v: Sequence[Fraction]) -> Vector:
    """Clear denominators and divide out the content."""
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return primitive([int(x * lcm) for x in v])


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of a set of integer vectors over Q."""
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    _, pivots = _row_reduce(rows, len(vectors[0]))
    return len(pivots)


# =============================================================================
# Lattices
# =============================================================================


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of lin(S) ∩ Z^n for a set S of integer vectors."""

    basis: tuple[Vector, ...]
    V: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Sequence[int]) -> Vector:
        """
        Coordinates of x in the basis.

        Raises:
            LinearAlgebraError: if x is not in the lattice
        """
        xv = tuple(sum(x[i] * self.V[i, j] for i in range(len(x))) for j in range(self.V.ncols))
        coords = xv[: self.rank]
        if any(xv[self.rank:]):
            raise LinearAlgebraError(f"vector {tuple(x)} is not in the lattice span")
        return coords


def saturated_basis(vectors: Sequence[Sequence[int]], n: int) -> LatticeBasis:
    """
    Basis of the saturated lattice lin(vectors) ∩ Z^n.

    With U·A·V = D for A = vectors as rows, the first rank(A) rows of V⁻¹ span
    exactly the rational row space, and V⁻¹ is unimodular.

    Args:
        vectors: Integer vectors of length n (may be empty)
        n: Ambient dimension

    Returns:
        LatticeBasis whose coordinate map is x ↦ (x·V)[:rank]
    """
    A = IntMatrix.from_rows(vectors, ncols=n)
    snf = smith_normal_form(A)
    V_inv = unimodular_inverse(snf.V)
    basis = tuple(V_inv.rows[: snf.rank])
    return LatticeBasis(basis=basis, V=snf.V)


def generated_lattice_basis(vectors: Sequence[Sequence[int]], n: int) -> tuple[Vector, ...]:
    """Nonzero HNF rows: a basis of the lattice generated by the vectors."""
    H, _ = hermite_normal_form(IntMatrix.from_rows(vectors, ncols=n))
    return tuple(row for row in H.rows if any(row))


def generated_lattice_index(vectors: Sequence[Sequence[int]], n: int) -> int:
    """
    Index of the lattice generated by the vectors in its saturation.

    Returns:
        Product of the nonzero invariant factors (1 when saturated)
    """
    if not vectors:
        return 1
    return smith_normal_form(IntMatrix.from_rows(vectors, ncols=n)).index
