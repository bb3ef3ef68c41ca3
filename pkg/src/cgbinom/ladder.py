"""Exact Clebsch-Gordan tables from raising/lowering operators.

Each multiplet ``|J, M>`` starts from its highest-weight state ``M = J``,
found by requiring that the total raising operator annihilates it, and is
then walked down one ``M`` at a time with the total lowering operator.
Signs follow the Condon-Shortley convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Literal, Mapping

from .angular import (
    CGTable,
    RangeError,
    Spin,
    SpinLike,
    allowed_J_range,
    as_spin,
    m_values,
)
from .exact import ONE, ZERO, SignedSqrtRational, ssr, ssr_add

__all__ = [
    "CoupledStateVector",
    "ladder_radicand",
    "highest_weight",
    "lower",
    "raise_state",
    "build_multiplet",
    "build_cg_table",
]

Direction = Literal["raise", "lower"]


@dataclass(frozen=True)
class CoupledStateVector:
    """``|J, M>`` expanded in product kets; ``amplitudes`` keyed by ``m1_twice``."""

    J_twice: int
    M_twice: int
    amplitudes: Mapping[int, SignedSqrtRational] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "amplitudes",
            MappingProxyType(dict(sorted(self.amplitudes.items(), reverse=True))),
        )

    def norm_squared(self) -> Fraction:
        return sum((a.radicand for a in self.amplitudes.values()), Fraction(0))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.amplitudes.values())


def ladder_radicand(l_twice: int, m_twice: int, direction: Direction) -> Fraction:
    """Squared matrix element of ``L-`` (or ``L+``) on ``|l, m>``.

    ``(j + m)(j - m + 1)`` for lowering and ``(j - m)(j + m + 1)`` for
    raising, with ``j = l_twice/2`` and ``m = m_twice/2``.
    """
    if abs(m_twice) > l_twice or (l_twice - m_twice) % 2:
        raise ValueError(f"invalid (l_twice={l_twice}, m_twice={m_twice})")
    if direction == "lower":
        return Fraction((l_twice + m_twice) * (l_twice - m_twice + 2), 4)
    if direction == "raise":
        return Fraction((l_twice - m_twice) * (l_twice + m_twice + 2), 4)
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


def _m1_span(j1: Spin, j2: Spin, M_twice: int) -> list[int]:
    return [m1 for m1 in m_values(j1) if abs(M_twice - m1) <= j2.twice]


def highest_weight(j1: SpinLike, j2: SpinLike, J_twice: int) -> CoupledStateVector:
    """The normalized ``|J, M=J>`` state annihilated by ``J+``."""
    j1, j2 = as_spin(j1), as_spin(j2)
    if J_twice not in allowed_J_range(j1, j2):
        raise RangeError(
            f"J_twice={J_twice} not allowed for j1_twice={j1.twice}, j2_twice={j2.twice}"
        )
    m1s = _m1_span(j1, j2, J_twice)
    # Unnormalized chain, top m1 fixed positive.  Raising the product ket
    # pair (m1-1, J-m1+1) and (m1, J-m1) onto (m1, J-m1+1) must cancel:
    #   c(m1-1) sqrt(r1(m1-1)) + c(m1) sqrt(r2(J-m1)) = 0
    unnorm: dict[int, SignedSqrtRational] = {m1s[0]: ONE}
    for m1 in m1s[:-1]:
        r1 = ladder_radicand(j1.twice, m1 - 2, "raise")
        r2 = ladder_radicand(j2.twice, J_twice - m1, "raise")
        prev = unnorm[m1]
        unnorm[m1 - 2] = SignedSqrtRational(-prev.sign, prev.radicand * r2 / r1)
    norm = sum((a.radicand for a in unnorm.values()), Fraction(0))
    return CoupledStateVector(
        J_twice,
        J_twice,
        {m1: SignedSqrtRational(a.sign, a.radicand / norm) for m1, a in unnorm.items()},
    )


def _apply_total(
    state: CoupledStateVector, j1: Spin, j2: Spin, direction: Direction
) -> dict[int, SignedSqrtRational]:
    """Unnormalized ``(L1 +/- L2)`` applied to ``state``, merged per product ket."""
    step = -2 if direction == "lower" else 2
    M_new = state.M_twice + step
    out: dict[int, SignedSqrtRational] = {m1: ZERO for m1 in _m1_span(j1, j2, M_new)}
    for m1, amp in state.amplitudes.items():
        if amp.is_zero():
            continue
        m2 = state.M_twice - m1
        r1 = ladder_radicand(j1.twice, m1, direction)
        if r1:
            out[m1 + step] = ssr_add(out[m1 + step], ssr(amp.sign, amp.radicand * r1))
        r2 = ladder_radicand(j2.twice, m2, direction)
        if r2:
            out[m1] = ssr_add(out[m1], ssr(amp.sign, amp.radicand * r2))
    return out


def lower(state: CoupledStateVector, j1: SpinLike, j2: SpinLike) -> CoupledStateVector:
    """``|J, M>`` -> ``|J, M-1>`` via the total lowering operator."""
    j1, j2 = as_spin(j1), as_spin(j2)
    if state.M_twice <= -state.J_twice:
        raise RangeError(f"cannot lower below M = -J (J_twice={state.J_twice})")
    raw = _apply_total(state, j1, j2, "lower")
    scale = ladder_radicand(state.J_twice, state.M_twice, "lower")
    return CoupledStateVector(
        state.J_twice,
        state.M_twice - 2,
        {m1: SignedSqrtRational(a.sign, a.radicand / scale) for m1, a in raw.items()},
    )


def raise_state(state: CoupledStateVector, j1: SpinLike, j2: SpinLike) -> CoupledStateVector:
    """Unnormalized total raising operator applied to ``state``.

    The result carries ``M + 1``; for a highest-weight input it is the
    exact zero vector (an empty map when ``M + 1`` exceeds ``j1 + j2``).
    """
    j1, j2 = as_spin(j1), as_spin(j2)
    raw = _apply_total(state, j1, j2, "raise")
    return CoupledStateVector(state.J_twice, state.M_twice + 2, raw)


def build_multiplet(j1: SpinLike, j2: SpinLike, J_twice: int) -> list[CoupledStateVector]:
    """All ``|J, M>`` for one J, ordered ``M = J, J-1, ..., -J``."""
    j1, j2 = as_spin(j1), as_spin(j2)
    states = [highest_weight(j1, j2, J_twice)]
    while states[-1].M_twice > -J_twice:
        states.append(lower(states[-1], j1, j2))
    return states


def build_cg_table(j1: SpinLike, j2: SpinLike) -> CGTable:
    j1, j2 = as_spin(j1), as_spin(j2)
    entries = {}
    for J in allowed_J_range(j1, j2):
        for state in build_multiplet(j1, j2, J):
            for m1, amp in state.amplitudes.items():
                entries[(J, state.M_twice, m1)] = amp
    return CGTable(j1, j2, entries)
