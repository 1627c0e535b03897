"""
Unit tests for the exact integer linear algebra layer.
"""
from fractions import Fraction
from itertools import combinations

import pytest
from sympy import Matrix

from app.services.intlinalg import (
    IntMatrix,
    LinearAlgebraError,
    ZeroVectorError,
    determinant,
    extended_gcd,
    gcd_of,
    generated_lattice_index,
    hermite_normal_form,
    integer_scaled,
    primitive,
    rank,
    rational_inverse,
    rational_kernel,
    saturated_basis,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
)


# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def random_matrices(rng):
    """Twenty small random integer matrices of mixed shapes."""
    out = []
    for _ in range(20):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        out.append(IntMatrix.from_rows([[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]))
    return out


def _minors_gcd(A: IntMatrix, k: int) -> int:
    """gcd of all k×k minors."""
    values = []
    for rows in combinations(range(A.nrows), k):
        for cols in combinations(range(A.ncols), k):
            values.append(determinant([[A[i, j] for j in cols] for i in rows]))
    return gcd_of(values)


# =============================================================================
# Scalars and vectors
# =============================================================================


class TestScalars:
    """Tests for gcd helpers and primitive vectors."""

    @pytest.mark.parametrize("a,b", [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (-9, -15)])
    def test_extended_gcd_bezout(self, a, b):
        """Test that the Bezout coefficients reproduce a nonnegative gcd."""
        g, x, y = extended_gcd(a, b)
        assert g >= 0
        assert x * a + y * b == g
        assert g == gcd_of([a, b])

    def test_primitive_divides_content(self):
        """Test that primitive() divides out the gcd and keeps the sign."""
        assert primitive([4, -6, 8]) == (2, -3, 4)
        assert primitive([0, -3]) == (0, -1)

    def test_primitive_zero_vector_raises(self):
        """Test that the zero vector has no primitive direction."""
        with pytest.raises(ZeroVectorError):
            primitive([0, 0, 0])

    def test_integer_scaled_clears_denominators(self):
        """Test that rational vectors are scaled to primitive integer vectors."""
        assert integer_scaled([Fraction(1, 2), Fraction(-1, 3), Fraction(0)]) == (3, -2, 0)


# =============================================================================
# Matrices and determinants
# =============================================================================


class TestIntMatrix:
    """Tests for the IntMatrix container."""

    def test_ragged_rows_rejected(self):
        """Test that rows of different lengths are rejected."""
        with pytest.raises(LinearAlgebraError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_columns_and_transpose(self):
        """Test column construction against row construction."""
        A = IntMatrix.from_columns([[1, 2], [3, 4], [5, 6]], nrows=2)
        assert A.rows == ((1, 3, 5), (2, 4, 6))
        assert A.transpose().rows == ((1, 2), (3, 4), (5, 6))

    def test_matmul_shape_mismatch(self):
        """Test that incompatible shapes raise."""
        with pytest.raises(LinearAlgebraError):
            IntMatrix.identity(2) @ IntMatrix.identity(3)

    def test_determinant_matches_sympy(self, rng):
        """Test the Bareiss determinant against sympy on random square matrices."""
        for n in range(1, 6):
            for _ in range(5):
                rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                assert determinant(rows) == int(Matrix(rows).det())

    def test_determinant_of_empty_matrix_is_one(self):
        """Test the 0×0 convention."""
        assert determinant([]) == 1

    def test_non_square_determinant_raises(self):
        """Test that det() requires a square matrix."""
        with pytest.raises(LinearAlgebraError):
            IntMatrix.from_rows([[1, 2, 3]]).det()


# =============================================================================
# Normal forms
# =============================================================================


class TestHermiteNormalForm:
    """Tests for the row-style Hermite normal form."""

    def test_known_example(self):
        """Test a hand-reduced 2×2 example."""
        H, U = hermite_normal_form(IntMatrix.from_rows([[2, 0], [1, 3]]))
        assert H.rows == ((1, 3), (0, 6))
        assert abs(U.det()) == 1

    def test_transform_and_shape(self, random_matrices):
        """Test H = U·A with U unimodular, echelon shape and reduced entries."""
        for A in random_matrices:
            H, U = hermite_normal_form(A)
            assert U.is_unimodular()
            assert (U @ A) == H
            last_pivot = -1
            for r, row in enumerate(H.rows):
                nonzero = [j for j, x in enumerate(row) if x != 0]
                if not nonzero:
                    assert all(not any(later) for later in H.rows[r:])
                    break
                pivot_col = nonzero[0]
                assert pivot_col > last_pivot
                pivot = row[pivot_col]
                assert pivot > 0
                assert all(0 <= H[i, pivot_col] < pivot for i in range(r))
                last_pivot = pivot_col

    def test_row_permutation_invariance(self, random_matrices, rng):
        """Test that the HNF depends only on the row lattice."""
        for A in random_matrices:
            rows = list(A.rows)
            rng.shuffle(rows)
            shuffled = IntMatrix.from_rows(rows, ncols=A.ncols)
            assert hermite_normal_form(shuffled).H == hermite_normal_form(A).H

    def test_idempotent(self, random_matrices):
        """Test that the HNF of an HNF is itself."""
        for A in random_matrices:
            H = hermite_normal_form(A).H
            assert hermite_normal_form(H).H == H


class TestSmithNormalForm:
    """Tests for the Smith normal form."""

    def test_known_diagonal(self):
        """Test a diagonal matrix whose factors need regrouping."""
        snf = smith_normal_form(IntMatrix.diagonal([4, 6]))
        assert snf.invariant_factors == (2, 12)
        assert snf.index == 24

    def test_transform_and_divisibility(self, random_matrices):
        """Test U·A·V = D, unimodular transforms and d_i | d_(i+1)."""
        for A in random_matrices:
            snf = smith_normal_form(A)
            assert snf.U.is_unimodular() and snf.V.is_unimodular()
            assert snf.U @ A @ snf.V == snf.D
            factors = snf.invariant_factors
            assert all(d > 0 for d in factors)
            assert all(b % a == 0 for a, b in zip(factors, factors[1:]))

    def test_factors_match_minor_gcds(self, random_matrices):
        """Test d_1···d_k = gcd of the k×k minors."""
        for A in random_matrices:
            factors = smith_normal_form(A).invariant_factors
            product = 1
            for k, d in enumerate(factors, start=1):
                product *= d
                assert product == _minors_gcd(A, k)
            assert len(factors) == Matrix(A.to_lists()).rank()

    def test_index_two_configuration(self):
        """Test the single invariant factor 2 of an index-2 point configuration."""
        snf = smith_normal_form(IntMatrix.from_rows([[1, 0], [0, 2], [1, 2], [0, 0]]))
        assert snf.invariant_factors == (1, 2)


# =============================================================================
# Rational solving and lattices
# =============================================================================


class TestRationalSolving:
    """Tests for exact solving over Q."""

    def test_solve_consistent_system(self):
        """Test a unique rational solution."""
        A = IntMatrix.from_rows([[2, 1], [1, 3]])
        assert solve_rational(A, [1, 2]) == [Fraction(1, 5), Fraction(3, 5)]

    def test_solve_inconsistent_system(self):
        """Test that an inconsistent system returns None."""
        A = IntMatrix.from_rows([[1, 1], [2, 2]])
        assert solve_rational(A, [1, 3]) is None

    def test_inverse_and_kernel(self):
        """Test the rational inverse and a one-dimensional kernel."""
        A = IntMatrix.from_rows([[2, 0], [0, 4]])
        assert rational_inverse(A) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
        kernel = rational_kernel(IntMatrix.from_rows([[1, 1, 1]]))
        assert len(kernel) == 2
        for v in kernel:
            assert sum(v) == 0

    def test_unimodular_inverse_rejects_non_unimodular(self):
        """Test that a determinant-2 matrix has no integer inverse."""
        with pytest.raises(LinearAlgebraError):
            unimodular_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))

    def test_rank(self):
        """Test rank over Q."""
        assert rank([[1, 2, 3], [2, 4, 6]]) == 1
        assert rank([[1, 0], [0, 1]]) == 2
        assert rank([]) == 0


class TestLattices:
    """Tests for saturated bases and generated-lattice indices."""

    def test_saturated_basis_coordinates(self):
        """Test that the saturation of 2·(1, 1, 1) contains (1, 1, 1)."""
        lattice = saturated_basis([[2, 2, 2]], 3)
        assert lattice.rank == 1
        assert abs(lattice.coordinates([1, 1, 1])[0]) == 1
        assert abs(lattice.coordinates([2, 2, 2])[0]) == 2

    def test_coordinates_outside_span_raise(self):
        """Test that a vector outside the span is rejected."""
        lattice = saturated_basis([[1, 0, 0]], 3)
        with pytest.raises(LinearAlgebraError):
            lattice.coordinates([0, 1, 0])

    def test_generated_lattice_index(self):
        """Test the index of a generated lattice in its saturation."""
        assert generated_lattice_index([[2, 0], [0, 1]], 2) == 2
        assert generated_lattice_index([[2, 0], [0, 1], [1, 0]], 2) == 1
        assert generated_lattice_index([[2, 2, 0]], 3) == 2
        assert generated_lattice_index([], 3) == 1
