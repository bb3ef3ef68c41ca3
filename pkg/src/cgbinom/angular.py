"""Angular momenta, kets and the Clebsch-Gordan table container.

All quantum numbers are stored as *twice-values*: spin 3/2 is ``Spin(3)``,
``m = -1/2`` is ``m_twice = -1``.  Half-integers stay exact integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Union

from .exact import ZERO, SignedSqrtRational, ssr_mul, ssr_sum

__all__ = [
    "RangeError",
    "Spin",
    "ProductKet",
    "CoupledKet",
    "CGTable",
    "CGEntry",
    "as_spin",
    "allowed_J_range",
    "m_values",
    "lookup",
    "format_half",
    "unitarity_violations",
    "completeness_violations",
]


class RangeError(ValueError):
    """A quantum number outside its allowed range."""


@dataclass(frozen=True, order=True)
class Spin:
    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or self.twice < 0:
            raise ValueError(f"Spin.twice must be a nonnegative integer, got {self.twice!r}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return format_half(self.twice)


SpinLike = Union[Spin, int]


def as_spin(s: SpinLike) -> Spin:
    return s if isinstance(s, Spin) else Spin(s)


class ProductKet(NamedTuple):
    m1_twice: int
    m2_twice: int


class CoupledKet(NamedTuple):
    J_twice: int
    M_twice: int


class CGEntry(NamedTuple):
    J_twice: int
    M_twice: int
    m1_twice: int
    m2_twice: int
    coefficient: SignedSqrtRational


def format_half(twice: int) -> str:
    """Render a twice-value as a physical number: 3 -> '3/2', -2 -> '-1'."""
    if twice % 2 == 0:
        return str(twice // 2)
    return f"{twice}/2"


def allowed_J_range(j1: SpinLike, j2: SpinLike) -> list[int]:
    """Allowed total J (twice-values), descending from j1 + j2 to |j1 - j2|."""
    a, b = as_spin(j1).twice, as_spin(j2).twice
    return list(range(a + b, abs(a - b) - 1, -2))


def m_values(s: SpinLike) -> list[int]:
    t = as_spin(s).twice
    return list(range(t, -t - 1, -2))


def _valid_m(j_twice: int, m_twice: int) -> bool:
    return abs(m_twice) <= j_twice and (j_twice - m_twice) % 2 == 0


@dataclass(frozen=True)
class CGTable:
    """Complete map ``(J, M, m1) -> coefficient`` for one ``(j1, j2)`` pair.

    ``m2`` is implied by ``M - m1``.  Vanishing coefficients at valid
    indices are stored explicitly.
    """

    j1: Spin
    j2: Spin
    entries: Mapping[tuple[int, int, int], SignedSqrtRational] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def valid_index(self, J_twice: int, M_twice: int, m1_twice: int) -> bool:
        if J_twice not in allowed_J_range(self.j1, self.j2):
            return False
        if not _valid_m(J_twice, M_twice):
            return False
        return _valid_m(self.j1.twice, m1_twice) and _valid_m(self.j2.twice, M_twice - m1_twice)

    def m1_range(self, M_twice: int) -> list[int]:
        """m1 values (descending) admissible for total projection M."""
        return [m1 for m1 in m_values(self.j1) if _valid_m(self.j2.twice, M_twice - m1)]

    def __getitem__(self, key: tuple[int, int, int]) -> SignedSqrtRational:
        return lookup(self, *key)

    def __len__(self) -> int:
        return len(self.entries)

    def rows(self) -> Iterator[CGEntry]:
        """Entries ordered by J desc, M desc, m1 desc."""
        for J in allowed_J_range(self.j1, self.j2):
            for M in range(J, -J - 1, -2):
                for m1 in self.m1_range(M):
                    yield CGEntry(J, M, m1, M - m1, self.entries[(J, M, m1)])

    def state(self, J_twice: int, M_twice: int) -> dict[int, SignedSqrtRational]:
        """Amplitudes of ``|J, M>`` keyed by ``m1_twice``."""
        if not (J_twice in allowed_J_range(self.j1, self.j2) and _valid_m(J_twice, M_twice)):
            raise IndexError(f"no state J_twice={J_twice}, M_twice={M_twice}")
        return {m1: self.entries[(J_twice, M_twice, m1)] for m1 in self.m1_range(M_twice)}


def lookup(t: CGTable, J_twice: int, M_twice: int, m1_twice: int) -> SignedSqrtRational:
    if not t.valid_index(J_twice, M_twice, m1_twice):
        raise IndexError(
            f"invalid CG index (J_twice={J_twice}, M_twice={M_twice}, m1_twice={m1_twice}) "
            f"for j1_twice={t.j1.twice}, j2_twice={t.j2.twice}"
        )
    return t.entries.get((J_twice, M_twice, m1_twice), ZERO)


def unitarity_violations(t: CGTable) -> list[str]:
    """Exact row checks: each ``|J, M>`` normalized, different J orthogonal.

    Returns human-readable descriptions of violations (empty when unitary).
    """
    problems = []
    Js = allowed_J_range(t.j1, t.j2)
    top = Js[0] if Js else 0
    for M in range(top, -top - 1, -2):
        present = [J for J in Js if J >= abs(M)]
        vectors = {J: t.state(J, M) for J in present}
        for J in present:
            norm = sum((c.radicand for c in vectors[J].values()), Fraction(0))
            if norm != 1:
                problems.append(f"<J={J},M={M}|J={J},M={M}> = {norm}")
        for i, Ja in enumerate(present):
            for Jb in present[i + 1:]:
                overlap = ssr_sum(ssr_mul(vectors[Ja][m1], vectors[Jb][m1]) for m1 in vectors[Ja])
                if overlap:
                    problems.append(f"<J={Ja},M={M}|J={Jb},M={M}> != 0")
    return problems


def completeness_violations(t: CGTable) -> list[str]:
    """Exact column checks over J for each product ket ``(m1, m2)``.

    Each column must have unit norm and distinct columns sharing ``M`` must
    be orthogonal.
    """
    problems = []
    Js = allowed_J_range(t.j1, t.j2)
    by_M: dict[int, list[int]] = {}
    for m1 in m_values(t.j1):
        for m2 in m_values(t.j2):
            by_M.setdefault(m1 + m2, []).append(m1)
    for M, m1s in by_M.items():
        present = [J for J in Js if J >= abs(M)]
        cols = {m1: [t.entries[(J, M, m1)] for J in present] for m1 in m1s}
        for m1, col in cols.items():
            norm = sum((c.radicand for c in col), Fraction(0))
            if norm != 1:
                problems.append(f"column (m1={m1}, m2={M - m1}) norm {norm}")
        for i, a in enumerate(m1s):
            for b in m1s[i + 1:]:
                if ssr_sum(ssr_mul(x, y) for x, y in zip(cols[a], cols[b])):
                    problems.append(f"columns m1={a} and m1={b} at M={M} not orthogonal")
    return problems
