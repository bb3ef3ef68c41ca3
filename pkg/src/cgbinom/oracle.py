"""Floating-point cross-check by diagonalizing total J^2 in the product basis.

Independent of the exact ladder construction: spin matrices are built
numerically, ``J^2`` is diagonalized block by block in ``M``, and the
eigenvectors give the squared coefficients up to a phase.
"""
from __future__ import annotations

import numpy as np

from .angular import CGTable, SpinLike, as_spin

__all__ = [
    "spin_matrices",
    "diagonalized_cg_amplitudes",
    "diagonalized_cg_squared",
    "oracle_max_deviation",
    "oracle_phase_mismatches",
]


def spin_matrices(twice: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(Jz, J+, J-)`` for spin ``twice/2`` in the basis m = j, j-1, ..., -j."""
    j = twice / 2
    m = j - np.arange(twice + 1)
    jz = np.diag(m)
    # J+ takes basis index i+1 (m = j-i-1) to index i
    up = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jp = np.diag(up, k=1)
    return jz, jp, jp.T.copy()


def diagonalized_cg_amplitudes(j1: SpinLike, j2: SpinLike) -> dict[tuple[int, int, int], float]:
    """Eigenvector components keyed like :class:`CGTable` entries.

    Each ``(J, M)`` vector carries an arbitrary overall sign.
    """
    a, b = as_spin(j1).twice, as_spin(j2).twice
    z1, p1, n1 = spin_matrices(a)
    z2, p2, n2 = spin_matrices(b)
    e1, e2 = np.eye(a + 1), np.eye(b + 1)
    jz = np.kron(z1, e2) + np.kron(e1, z2)
    jp = np.kron(p1, e2) + np.kron(e1, p2)
    jm = np.kron(n1, e2) + np.kron(e1, n2)
    j2_total = jm @ jp + jz @ jz + jz

    m1s = a - 2 * np.arange(a + 1)
    m2s = b - 2 * np.arange(b + 1)
    pair_m1 = np.repeat(m1s, b + 1)
    pair_M = pair_m1 + np.tile(m2s, a + 1)
    assert np.allclose(np.diag(jz) * 2, pair_M)

    out = {}
    for M in np.unique(pair_M):
        idx = np.flatnonzero(pair_M == M)
        vals, vecs = np.linalg.eigh(j2_total[np.ix_(idx, idx)])
        for col, lam in enumerate(vals):
            J_twice = int(round(2 * (np.sqrt(0.25 + lam) - 0.5)))
            for row, i in enumerate(idx):
                out[(J_twice, int(M), int(pair_m1[i]))] = float(vecs[row, col])
    return out


def diagonalized_cg_squared(j1: SpinLike, j2: SpinLike) -> dict[tuple[int, int, int], float]:
    return {k: v * v for k, v in diagonalized_cg_amplitudes(j1, j2).items()}


def oracle_max_deviation(table: CGTable) -> float:
    """Largest absolute gap between exact squared entries and the float oracle."""
    ref = diagonalized_cg_squared(table.j1, table.j2)
    if set(ref) != set(table.entries):
        return float("inf")
    return max(abs(float(c.radicand) - ref[key]) for key, c in table.entries.items())


def oracle_phase_mismatches(table: CGTable, atol: float = 1e-9) -> list[tuple[int, int]]:
    """``(J, M)`` vectors whose signs disagree with the oracle beyond one global flip."""
    ref = diagonalized_cg_amplitudes(table.j1, table.j2)
    ratios: dict[tuple[int, int], set[int]] = {}
    for (J, M, m1), c in table.entries.items():
        x = ref.get((J, M, m1), 0.0)
        if c.sign == 0 or abs(x) < atol:
            continue
        ratios.setdefault((J, M), set()).add(c.sign * (1 if x > 0 else -1))
    return sorted(key for key, signs in ratios.items() if len(signs) > 1)
