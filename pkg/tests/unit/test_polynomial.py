"""
Unit tests for IntPolynomial.
"""
import pytest
from sympy import Poly, symbols

from app.services.polynomial import T_MINUS_ONE, IntPolynomial


class TestIntPolynomial:
    """Tests for the integer polynomial carrier type."""

    def test_trailing_zeros_trimmed(self):
        """Test normalization of trailing zero coefficients."""
        p = IntPolynomial.of([1, 2, 0, 0])
        assert p.coefficients == (1, 2)
        assert p == IntPolynomial.of([1, 2])

    def test_zero_polynomial(self):
        """Test the zero polynomial's degree, subdegree and serialization."""
        z = IntPolynomial.zero()
        assert z.is_zero
        assert z.degree == 0
        assert z.subdegree is None
        assert z.to_list() == [0]
        assert str(z) == "0"

    def test_degree_and_subdegree(self):
        """Test degree and subdegree of t^2 + 3t^4."""
        p = IntPolynomial.of([0, 0, 1, 0, 3])
        assert p.degree == 4
        assert p.subdegree == 2
        assert p.leading_coefficient == 3
        assert p[7] == 0

    def test_evaluation(self):
        """Test Horner evaluation."""
        p = IntPolynomial.of([1, 3, 11, 1])
        assert p(1) == 16
        assert p(0) == 1
        assert p(-1) == 1 - 3 + 11 - 1

    @pytest.mark.parametrize(
        "coefficients,reflection,expected",
        [
            ([1, 4, 1], None, True),
            ([1, 3], None, False),
            ([0, 1, 17, 1], 4, True),
            ([0, 1, 17, 1], None, False),
            ([], 4, True),
            ([0, 0, 1], 4, True),
            ([1, 0, 0, 0, 0, 1], 4, False),
        ],
    )
    def test_palindromic(self, coefficients, reflection, expected):
        """Test palindromy with and without an explicit reflection degree."""
        assert IntPolynomial.of(coefficients).is_palindromic(reflection) is expected

    def test_arithmetic(self):
        """Test ring operations."""
        a = IntPolynomial.of([1, 1, 1])
        b = IntPolynomial.of([1, 3])
        assert (a * b).to_list() == [1, 4, 4, 3]
        assert (a + b).to_list() == [2, 4, 1]
        assert (a - a).is_zero
        assert (2 * b).to_list() == [2, 6]
        assert (1 - b).to_list() == [0, -3]
        assert (T_MINUS_ONE**2).to_list() == [1, -2, 1]
        assert b.shift(2).to_list() == [0, 0, 1, 3]
        assert a.truncate(1).to_list() == [1, 1]

    def test_products_match_sympy(self, rng):
        """Test multiplication and powers against sympy on random polynomials."""
        t = symbols("t")
        for _ in range(20):
            a = [rng.randint(-5, 5) for _ in range(rng.randint(1, 5))]
            b = [rng.randint(-5, 5) for _ in range(rng.randint(1, 5))]
            expected = Poly(list(reversed(a)), t) * Poly(list(reversed(b)), t) ** 2
            product = IntPolynomial.of(a) * IntPolynomial.of(b) ** 2
            assert product.to_list() == [int(c) for c in reversed(expected.all_coeffs())] or (
                product.is_zero and expected.is_zero
            )

    def test_coefficientwise_order(self):
        """Test the partial order used by the inequality checks."""
        assert IntPolynomial.of([0, 0, 1]).le(IntPolynomial.of([1, 4, 1]))
        assert not IntPolynomial.of([1, 5]).le(IntPolynomial.of([1, 4, 1]))
        assert IntPolynomial.zero().le(IntPolynomial.zero())

    def test_unimodal_prefix(self):
        """Test weak increase up to an index."""
        assert IntPolynomial.of([1, 5, 5, 1]).is_unimodal_up_to(2)
        assert not IntPolynomial.of([1, 5, 5, 1]).is_unimodal_up_to(3)

    def test_str(self):
        """Test human-readable rendering."""
        assert str(IntPolynomial.of([1, 3, 11, 1])) == "1 + 3t + 11t^2 + t^3"
        assert str(IntPolynomial.of([0, -1, 2])) == "-t + 2t^2"
