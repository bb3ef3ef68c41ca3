"""Closed form for the stretched multiplet ``J = j1 + j2``.

With ``l1 = 2 j1``, ``l2 = 2 j2``, ``l = l1 + l2`` and product kets indexed
by how far each projection sits below its maximum (``k_i = (l_i - m_i)/2``
in twice-units), the squared coefficient is a hypergeometric probability::

    <m1, m2 | J, M>^2 = C(l1, k1) C(l2, k2) / C(l, k1 + k2)

and every amplitude is positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .angular import RangeError, SpinLike, as_spin
from .exact import SignedSqrtRational, binomial
from .ladder import CoupledStateVector, build_multiplet

__all__ = [
    "stretched_cg_squared",
    "stretched_state",
    "Comparison",
    "Theorem1Report",
    "verify_theorem1",
]


def stretched_cg_squared(l1: int, k1: int, l2: int, k2: int) -> Fraction:
    """``C(l1, k1) C(l2, k2) / C(l1 + l2, k1 + k2)``; zero when out of range."""
    num = binomial(l1, k1) * binomial(l2, k2)
    if num == 0:
        return Fraction(0)
    return Fraction(num, binomial(l1 + l2, k1 + k2))


def stretched_state(l1: int, l2: int, k: int) -> CoupledStateVector:
    """``|J = l/2, M = l/2 - k>`` straight from the closed form (twice-values)."""
    l = l1 + l2
    if not 0 <= k <= l:
        raise RangeError(f"k={k} outside 0..{l}")
    amplitudes = {}
    for k1 in range(max(0, k - l2), min(l1, k) + 1):
        k2 = k - k1
        amplitudes[l1 - 2 * k1] = SignedSqrtRational(1, stretched_cg_squared(l1, k1, l2, k2))
    return CoupledStateVector(l, l - 2 * k, amplitudes)


@dataclass(frozen=True)
class Comparison:
    M_twice: int
    m1_twice: int
    expected: Fraction
    actual: Fraction
    sign: int

    @property
    def passed(self) -> bool:
        return self.expected == self.actual and self.sign == 1


@dataclass(frozen=True)
class Theorem1Report:
    j1_twice: int
    j2_twice: int
    comparisons: list[Comparison] = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    @property
    def failures(self) -> list[Comparison]:
        return [c for c in self.comparisons if not c.passed]


def verify_theorem1(j1: SpinLike, j2: SpinLike) -> Theorem1Report:
    """Compare the ladder-built ``J = j1 + j2`` multiplet with the closed form.

    Each amplitude must be positive and its square must equal the
    hypergeometric value exactly.
    """
    j1, j2 = as_spin(j1), as_spin(j2)
    l1, l2 = j1.twice, j2.twice
    comparisons = []
    for state in build_multiplet(j1, j2, l1 + l2):
        for m1, amp in state.amplitudes.items():
            m2 = state.M_twice - m1
            expected = stretched_cg_squared(l1, (l1 - m1) // 2, l2, (l2 - m2) // 2)
            comparisons.append(Comparison(state.M_twice, m1, expected, amp.radicand, amp.sign))
    return Theorem1Report(l1, l2, comparisons)
