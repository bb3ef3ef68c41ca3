"""Cross-verification suite run by ``cgbinom verify``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .angular import completeness_violations, unitarity_violations
from .exact import MergeError
from .ladder import build_cg_table, highest_weight, raise_state
from .oracle import oracle_max_deviation, oracle_phase_mismatches
from .probability import binomial_pmf, convolve, verify_theorem2
from .stretched import verify_theorem1

__all__ = ["CheckResult", "ORACLE_TOL", "CONVOLUTION_PS", "run_suite"]

ORACLE_TOL = 1e-9
CONVOLUTION_PS = (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))


@dataclass(frozen=True)
class CheckResult:
    check: str
    j1_twice: int
    j2_twice: int
    passed: bool
    detail: str


def _pair_checks(a: int, b: int) -> list[CheckResult]:
    out = []

    def add(name, passed, detail):
        out.append(CheckResult(name, a, b, bool(passed), detail))

    try:
        table = build_cg_table(a, b)
    except MergeError as exc:
        add("build", False, f"MergeError: {exc}")
        return out

    rep1 = verify_theorem1(a, b)
    add("theorem1", rep1.passed, f"{len(rep1.comparisons)} comparisons, {len(rep1.failures)} failed")

    bad = []
    for M in range(a + b, -(a + b) - 1, -2):
        rep2 = verify_theorem2(a, b, Fraction(1, 2), M)
        if not rep2.passed:
            bad.append(M)
    add("theorem2", not bad, f"{a + b + 1} totals, failing M_twice={bad}" if bad else f"{a + b + 1} totals")

    rows = unitarity_violations(table)
    add("unitarity", not rows, "; ".join(rows[:3]) or f"{len(table)} entries")
    cols = completeness_violations(table)
    add("completeness", not cols, "; ".join(cols[:3]) or f"{(a + 1) * (b + 1)} product kets")

    nonzero = []
    for J in sorted({k[0] for k in table.entries}, reverse=True):
        if not raise_state(highest_weight(a, b, J), a, b).is_zero():
            nonzero.append(J)
    add("annihilation", not nonzero, f"nonzero for J_twice={nonzero}" if nonzero else "all highest weights annihilated")

    dev = oracle_max_deviation(table)
    phases = oracle_phase_mismatches(table)
    add(
        "float_oracle",
        dev <= ORACLE_TOL and not phases,
        f"max |dev| = {dev:.3e}" + (f", phase mismatches {phases}" if phases else ""),
    )
    return out


def run_suite(max_twice: int) -> list[CheckResult]:
    """All checks for every pair ``0 <= j1_twice, j2_twice <= max_twice``."""
    if max_twice < 0:
        raise ValueError("max_twice must be >= 0")
    results = []
    for a in range(max_twice + 1):
        for b in range(max_twice + 1):
            results.extend(_pair_checks(a, b))
            ok = all(
                convolve(a, b, p) == [binomial_pmf(a + b, p, k) for k in range(a + b + 1)]
                for p in CONVOLUTION_PS
            )
            results.append(CheckResult("convolution", a, b, ok, f"p in {{{', '.join(map(str, CONVOLUTION_PS))}}}"))
    return results
