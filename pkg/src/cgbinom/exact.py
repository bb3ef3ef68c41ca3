"""Exact arithmetic: binomials, rational square roots and signed sqrt-rationals.

Every Clebsch-Gordan amplitude is a number of the form ``s * sqrt(r)`` with
``s`` in {-1, 0, +1} and ``r`` a nonnegative rational.  Such numbers are
closed under multiplication but only partially under addition: two of them
can be merged into one exactly when the ratio of their radicands is the
square of a rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = [
    "Rational",
    "MergeError",
    "SignedSqrtRational",
    "binomial",
    "is_square",
    "rational_sqrt",
    "ssr",
    "ssr_mul",
    "ssr_add",
    "ssr_square",
    "ssr_sum",
    "ZERO",
    "ONE",
]

#: Arbitrary-precision rational, always in lowest terms with positive denominator.
Rational = Fraction

RationalLike = Union[int, Fraction]


class MergeError(ArithmeticError):
    """Two signed sqrt-rationals whose sum is not itself a signed sqrt-rational."""


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 returned for ``k < 0`` or ``k > n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def rational_sqrt(r: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of ``r``, or ``None`` if irrational.

    >>> rational_sqrt(Fraction(4, 9))
    Fraction(2, 3)
    >>> rational_sqrt(2) is None
    True
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError(f"rational_sqrt requires r >= 0, got {r}")
    # lowest terms: r is a rational square iff numerator and denominator both are
    num = math.isqrt(r.numerator)
    if num * num != r.numerator:
        return None
    den = math.isqrt(r.denominator)
    if den * den != r.denominator:
        return None
    return Fraction(num, den)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SignedSqrtRational:
    """The real number ``sign * sqrt(radicand)``.

    Canonical form: ``sign == 0`` exactly when ``radicand == 0``, so equality
    of values is equality of fields.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self):
        radicand = Fraction(self.radicand)
        if radicand < 0:
            raise ValueError(f"radicand must be nonnegative, got {radicand}")
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        sign = self.sign if radicand != 0 else 0
        if sign == 0:
            radicand = Fraction(0)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def from_rational(cls, x: RationalLike) -> "SignedSqrtRational":
        """The signed sqrt-rational equal to the rational ``x``."""
        x = Fraction(x)
        return cls(_sign(x), x * x)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "SignedSqrtRational") -> "SignedSqrtRational":
        if not isinstance(other, SignedSqrtRational):
            return NotImplemented
        return ssr_mul(self, other)

    def __add__(self, other: "SignedSqrtRational") -> "SignedSqrtRational":
        if not isinstance(other, SignedSqrtRational):
            return NotImplemented
        return ssr_add(self, other)

    def __neg__(self) -> "SignedSqrtRational":
        return SignedSqrtRational(-self.sign, self.radicand)

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        root = rational_sqrt(self.radicand)
        body = str(root) if root is not None else f"sqrt({self.radicand})"
        return ("-" if self.sign < 0 else "+") + body


def ssr(sign: int, radicand: RationalLike) -> SignedSqrtRational:
    """Shorthand constructor."""
    return SignedSqrtRational(sign, Fraction(radicand))


ZERO = SignedSqrtRational(0, Fraction(0))
ONE = SignedSqrtRational(1, Fraction(1))


def ssr_mul(a: SignedSqrtRational, b: SignedSqrtRational) -> SignedSqrtRational:
    return SignedSqrtRational(a.sign * b.sign, a.radicand * b.radicand)


def ssr_add(a: SignedSqrtRational, b: SignedSqrtRational) -> SignedSqrtRational:
    """Exact sum of two signed sqrt-rationals.

    Raises :class:`MergeError` unless one operand is zero or the radicand
    ratio is a rational square.
    """
    if b.sign == 0:
        return a
    if a.sign == 0:
        return b
    ratio = rational_sqrt(a.radicand / b.radicand)
    if ratio is None:
        raise MergeError(
            f"cannot merge {a} and {b}: radicand ratio "
            f"{a.radicand / b.radicand} is not a rational square"
        )
    # a + b = (s_a * ratio + s_b) * sqrt(b.radicand)
    factor = a.sign * ratio + b.sign
    return SignedSqrtRational(_sign(factor), factor * factor * b.radicand)


def ssr_square(a: SignedSqrtRational) -> Fraction:
    return a.radicand


def ssr_sum(terms: Iterable[SignedSqrtRational]) -> list[SignedSqrtRational]:
    """Exact sum of arbitrarily many signed sqrt-rationals.

    Terms are grouped into square classes (mutually mergeable sets) and each
    class is summed with :func:`ssr_add`.  Returns the nonzero class sums.
    Square roots of distinct squarefree integers are linearly independent
    over the rationals, so the total is zero iff the returned list is empty.
    """
    parts: list[SignedSqrtRational] = []
    for term in terms:
        if term.sign == 0:
            continue
        for i, part in enumerate(parts):
            if part.sign == 0:
                continue
            if rational_sqrt(term.radicand / part.radicand) is not None:
                parts[i] = ssr_add(part, term)
                break
        else:
            parts.append(term)
    return [p for p in parts if p.sign != 0]
