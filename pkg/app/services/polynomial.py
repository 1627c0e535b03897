"""
Integer polynomials

Handles:
- IntPolynomial: ascending coefficient tuples, trailing zeros trimmed
- Degree, subdegree and palindromy queries
- Ring arithmetic and the coefficientwise partial order

Carrier type for h*, l*, f, g and h polynomials.
"""
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Optional, Union


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with integer coefficients, lowest degree first."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, coefficients: Iterable[int]) -> "IntPolynomial":
        return cls(tuple(coefficients))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * exponent + (coefficient,))

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree 0."""
        return max(len(self.coefficients) - 1, 0)

    @property
    def subdegree(self) -> Optional[int]:
        """Smallest exponent with a nonzero coefficient, None for zero."""
        for i, c in enumerate(self.coefficients):
            if c != 0:
                return i
        return None

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __getitem__(self, exponent: int) -> int:
        if 0 <= exponent < len(self.coefficients):
            return self.coefficients[exponent]
        return 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def is_palindromic(self, reflection_degree: Optional[int] = None) -> bool:
        """
        Check coeff_i = coeff_{D-i} for all i.

        Args:
            reflection_degree: D; defaults to the degree

        Returns:
            True if symmetric about D/2
        """
        D = self.degree if reflection_degree is None else reflection_degree
        if len(self.coefficients) > D + 1:
            return False
        return all(self[i] == self[D - i] for i in range(D + 1))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def is_unimodal_up_to(self, index: int) -> bool:
        """Weakly increasing coefficients on 0..index."""
        return all(self[i] <= self[i + 1] for i in range(index))

    def le(self, other: "IntPolynomial") -> bool:
        """Coefficientwise self <= other."""
        return all(
            a <= b
            for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=0)
        )

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def __add__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        other = _coerce(other)
        return IntPolynomial(
            tuple(
                a + b
                for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=0)
            )
        )

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial.zero()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        result = IntPolynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coefficients)

    def truncate(self, max_exponent: int) -> "IntPolynomial":
        """Drop every term above t^max_exponent."""
        return IntPolynomial(self.coefficients[: max_exponent + 1])

    # -------------------------------------------------------------------------
    # Serialization
    # -------------------------------------------------------------------------

    def to_list(self) -> list[int]:
        """Ascending coefficient list; [0] for the zero polynomial."""
        return list(self.coefficients) or [0]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                base = "t" if i == 1 else f"t^{i}"
                coeff = "" if c == 1 else "-" if c == -1 else str(c)
                terms.append(f"{coeff}{base}")
        return " + ".join(terms).replace("+ -", "- ")


T_MINUS_ONE = IntPolynomial((-1, 1))


def _coerce(value: Union[IntPolynomial, int]) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    return IntPolynomial((value,))
