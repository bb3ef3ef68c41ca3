"""Binomial spin spectra, conditioning on the total projection, and sampling.

A particle of spin ``l/2`` is given the projection ``M = l/2 - K`` with
``K ~ B(l, p)``.  For two independent particles the joint distribution
conditioned on ``M1 + M2`` no longer depends on ``p`` and equals the squared
stretched Clebsch-Gordan coefficients.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .angular import SpinLike, as_spin, format_half, m_values
from .exact import binomial
from .stretched import stretched_cg_squared

__all__ = [
    "ConditioningOnNullError",
    "SpectrumDistribution",
    "ConditionalReport",
    "Theorem2Report",
    "SampleResult",
    "binomial_pmf",
    "convolve",
    "spectrum_from_binomial",
    "uniform_spectrum",
    "explicit_spectrum",
    "conditional_joint",
    "verify_theorem2",
    "sample_conditional",
]


class ConditioningOnNullError(ValueError):
    """Conditioning on an event of probability zero."""


def _check_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return p


def binomial_pmf(l: int, p: Fraction, k: int) -> Fraction:
    """``P(K = k)`` for ``K ~ B(l, p)``."""
    p = _check_p(p)
    if k < 0 or k > l:
        return Fraction(0)
    return binomial(l, k) * p**k * (1 - p) ** (l - k)


def convolve(l1: int, l2: int, p: Fraction) -> list[Fraction]:
    """Distribution of ``K1 + K2`` over ``k = 0 .. l1 + l2`` by direct convolution."""
    p = _check_p(p)
    a = [binomial_pmf(l1, p, k) for k in range(l1 + 1)]
    b = [binomial_pmf(l2, p, k) for k in range(l2 + 1)]
    out = [Fraction(0)] * (l1 + l2 + 1)
    for k1, x in enumerate(a):
        for k2, y in enumerate(b):
            out[k1 + k2] += x * y
    return out


@dataclass(frozen=True)
class SpectrumDistribution:
    """Exact pmf over the projections ``m_twice`` of a spin ``l_twice/2``."""

    l_twice: int
    probs: Mapping[int, Fraction]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        probs = {m: Fraction(self.probs.get(m, 0)) for m in m_values(self.l_twice)}
        extra = set(self.probs) - set(probs)
        if extra:
            raise ValueError(f"projections {sorted(extra)} invalid for l_twice={self.l_twice}")
        if any(v < 0 for v in probs.values()):
            raise ValueError("probabilities must be nonnegative")
        if sum(probs.values()) != 1:
            raise ValueError(f"probabilities sum to {sum(probs.values())}, not 1")
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, m_twice: int) -> Fraction:
        return self.probs.get(m_twice, Fraction(0))


def spectrum_from_binomial(l_twice: int, p: Fraction) -> SpectrumDistribution:
    p = _check_p(p)
    probs = {m: binomial_pmf(l_twice, p, (l_twice - m) // 2) for m in m_values(l_twice)}
    return SpectrumDistribution(l_twice, probs, label=f"binomial:{l_twice}:{p}")


def uniform_spectrum(l_twice: int) -> SpectrumDistribution:
    ms = m_values(l_twice)
    return SpectrumDistribution(
        l_twice, {m: Fraction(1, len(ms)) for m in ms}, label=f"uniform:{l_twice}"
    )


def explicit_spectrum(l_twice: int, probs: Mapping[int, Fraction]) -> SpectrumDistribution:
    body = ",".join(f"{m}={Fraction(v)}" for m, v in sorted(probs.items(), reverse=True))
    return SpectrumDistribution(l_twice, dict(probs), label=f"explicit:{body}")


@dataclass(frozen=True)
class ConditionalReport:
    """Joint law of ``(M1, M2)`` given ``M1 + M2 = total_m_twice``.

    ``entries`` is ordered by ``m1`` descending.  ``reference`` optionally
    carries squared Clebsch-Gordan values for the same cells.
    """

    total_m_twice: int
    entries: Mapping[tuple[int, int], Fraction]
    event_probability: Fraction
    reference: Optional[Mapping[tuple[int, int], Fraction]] = None

    def with_reference(self, reference: Mapping[tuple[int, int], Fraction]) -> "ConditionalReport":
        return ConditionalReport(self.total_m_twice, self.entries, self.event_probability, dict(reference))

    @property
    def matches_reference(self) -> Optional[bool]:
        if self.reference is None:
            return None
        return dict(self.entries) == dict(self.reference)


def _cells(d1: SpectrumDistribution, d2: SpectrumDistribution, total: int) -> list[tuple[int, int]]:
    return [(m1, total - m1) for m1 in m_values(d1.l_twice) if total - m1 in d2.probs]


def conditional_joint(
    d1: SpectrumDistribution, d2: SpectrumDistribution, total_m_twice: int
) -> ConditionalReport:
    cells = _cells(d1, d2, total_m_twice)
    joint = {(m1, m2): d1[m1] * d2[m2] for m1, m2 in cells}
    event = sum(joint.values(), Fraction(0))
    if event == 0:
        raise ConditioningOnNullError(f"P(M1 + M2 = {format_half(total_m_twice)}) = 0")
    return ConditionalReport(total_m_twice, {c: v / event for c, v in joint.items()}, event)


def _stretched_reference(l1: int, l2: int, total: int) -> dict[tuple[int, int], Fraction]:
    return {
        (m1, total - m1): stretched_cg_squared(l1, (l1 - m1) // 2, l2, (l2 - total + m1) // 2)
        for m1 in m_values(l1)
        if abs(total - m1) <= l2
    }


@dataclass(frozen=True)
class Theorem2Report:
    j1_twice: int
    j2_twice: int
    M_twice: int
    p: Fraction
    p_alt: Fraction
    report: ConditionalReport
    alt_entries: Mapping[tuple[int, int], Fraction]

    @property
    def matches_cg(self) -> bool:
        return bool(self.report.matches_reference)

    @property
    def p_independent(self) -> bool:
        return dict(self.report.entries) == dict(self.alt_entries)

    @property
    def passed(self) -> bool:
        return self.matches_cg and self.p_independent


def verify_theorem2(
    j1: SpinLike,
    j2: SpinLike,
    p: Fraction,
    M_twice: int,
    p_alt: Fraction = Fraction(1, 3),
) -> Theorem2Report:
    """Conditional law of binomial spectra vs. squared stretched coefficients.

    The check is repeated at ``p_alt`` and the two conditional laws must be
    identical.
    """
    j1, j2 = as_spin(j1), as_spin(j2)
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly inside (0, 1), got {p}")
    if p_alt == p:
        p_alt = Fraction(1, 7) if p != Fraction(1, 7) else Fraction(2, 7)
    l1, l2 = j1.twice, j2.twice
    report = conditional_joint(
        spectrum_from_binomial(l1, p), spectrum_from_binomial(l2, p), M_twice
    ).with_reference(_stretched_reference(l1, l2, M_twice))
    alt = conditional_joint(spectrum_from_binomial(l1, p_alt), spectrum_from_binomial(l2, p_alt), M_twice)
    return Theorem2Report(l1, l2, M_twice, p, Fraction(p_alt), report, alt.entries)


@dataclass(frozen=True)
class SampleResult:
    """Empirical conditional frequencies from rejection sampling."""

    total_m_twice: int
    n: int
    seed: int
    draws: int
    cells: list[tuple[int, int]]
    counts: dict[tuple[int, int], int]
    exact: dict[tuple[int, int], Fraction]

    @property
    def acceptance_rate(self) -> float:
        return self.n / self.draws

    @property
    def frequencies(self) -> dict[tuple[int, int], float]:
        return {c: self.counts[c] / self.n for c in self.cells}

    @property
    def std_errors(self) -> dict[tuple[int, int], float]:
        """Binomial standard error of each cell frequency, ``sqrt(f (1 - f) / n)``."""
        return {c: math.sqrt(f * (1.0 - f) / self.n) for c, f in self.frequencies.items()}


def _inverse_cdf_table(d: SpectrumDistribution) -> tuple[np.ndarray, np.ndarray]:
    ms = np.array(m_values(d.l_twice), dtype=np.int64)
    cdf = np.cumsum([float(d[m]) for m in ms])
    cdf[-1] = 1.0
    return ms, cdf


def _sample_stream(
    rng: np.random.Generator,
    tables: tuple,
    total: int,
    n: int,
    acceptance: float,
    batch_cap: int = 1 << 21,
) -> tuple[np.ndarray, np.ndarray, int]:
    (ms1, cdf1), (ms2, cdf2) = tables
    got1, got2 = [], []
    accepted = 0
    draws = 0
    while accepted < n:
        need = n - accepted
        batch = min(batch_cap, int(need / acceptance * 1.1) + 64)
        u = rng.random((2, batch))
        a = ms1[np.searchsorted(cdf1, u[0], side="right")]
        b = ms2[np.searchsorted(cdf2, u[1], side="right")]
        hit = np.flatnonzero(a + b == total)
        if len(hit) >= need:
            hit = hit[:need]
            draws += int(hit[-1]) + 1
        else:
            draws += batch
        got1.append(a[hit])
        got2.append(b[hit])
        accepted += len(hit)
    return np.concatenate(got1), np.concatenate(got2), draws


def sample_conditional(
    d1: SpectrumDistribution,
    d2: SpectrumDistribution,
    total_m_twice: int,
    n: int,
    seed: int,
    streams: int = 1,
    workers: Optional[int] = None,
) -> SampleResult:
    """Rejection-sample ``n`` accepted pairs with ``M1 + M2 = total``.

    Projections are drawn by inverse CDF from numpy's PCG64 generator seeded
    through ``SeedSequence(seed)``.  With ``streams > 1`` the budget is split
    across independently spawned child streams, optionally run on a thread
    pool, and merged in stream order; the output depends only on
    ``(seed, streams, inputs)``.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if streams < 1:
        raise ValueError(f"streams must be >= 1, got {streams}")
    exact = conditional_joint(d1, d2, total_m_twice)
    acceptance = float(exact.event_probability)
    tables = (_inverse_cdf_table(d1), _inverse_cdf_table(d2))
    seq = np.random.SeedSequence(seed)
    children = [seq] if streams == 1 else seq.spawn(streams)
    budgets = [n // streams + (i < n % streams) for i in range(streams)]

    def run(i: int):
        if budgets[i] == 0:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty, 0
        rng = np.random.Generator(np.random.PCG64(children[i]))
        return _sample_stream(rng, tables, total_m_twice, budgets[i], acceptance)

    if workers and workers > 1 and streams > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(streams)))
    else:
        parts = [run(i) for i in range(streams)]

    cells = list(exact.entries)
    counts = {c: 0 for c in cells}
    index = {c[0]: c for c in cells}
    for a, _b, _ in parts:
        values, freq = np.unique(a, return_counts=True)
        for m1, cnt in zip(values.tolist(), freq.tolist()):
            counts[index[m1]] += cnt
    draws = sum(part[2] for part in parts)
    return SampleResult(total_m_twice, n, seed, draws, cells, counts, dict(exact.entries))
