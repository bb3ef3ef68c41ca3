from fractions import Fraction

import numpy as np
import pytest

from _float_spin import j_values_from_eigen, lowering, total_j2_eigen
from cgbinom.angular import RangeError, Spin, completeness_violations, unitarity_violations
from cgbinom.exact import ssr
from cgbinom.ladder import (
    build_cg_table,
    build_multiplet,
    highest_weight,
    ladder_radicand,
    lower,
    raise_state,
)
from cgbinom.stretched import stretched_cg_squared

S1 = Spin(2)


def test_ladder_radicand_examples():
    assert ladder_radicand(4, 4, "lower") == 4
    assert ladder_radicand(2, -2, "lower") == 0
    assert ladder_radicand(2, 2, "raise") == 0


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
def test_ladder_radicand_against_matrix(two_j):
    lo = lowering(two_j)
    for i, m in enumerate(range(two_j, -two_j - 1, -2)):
        elem = lo[i + 1, i] if i + 1 <= two_j else 0.0
        assert float(ladder_radicand(two_j, m, "lower")) == pytest.approx(elem**2, abs=1e-12)
        up = lo.T[i - 1, i] if i >= 1 else 0.0
        assert float(ladder_radicand(two_j, m, "raise")) == pytest.approx(up**2, abs=1e-12)


def test_ladder_radicand_spin1_middle():
    assert ladder_radicand(2, 0, "lower") == 2


@pytest.mark.parametrize("args", [(2, 1, "lower"), (2, 4, "lower"), (2, 0, "sideways")])
def test_ladder_radicand_contract(args):
    with pytest.raises(ValueError):
        ladder_radicand(*args)


def test_highest_weight_stretched():
    hw = highest_weight(S1, S1, 4)
    assert dict(hw.amplitudes) == {2: ssr(1, 1)}


def test_highest_weight_singlet():
    hw = highest_weight(S1, S1, 0)
    assert dict(hw.amplitudes) == {
        2: ssr(1, Fraction(1, 3)),
        0: ssr(-1, Fraction(1, 3)),
        -2: ssr(1, Fraction(1, 3)),
    }


def test_highest_weight_spin_half_singlet_against_diagonalization():
    vals, vecs = total_j2_eigen(1, 1)
    # product basis order (m1, m2): (+,+), (+,-), (-,+), (-,-)
    J = j_values_from_eigen(vals)
    singlet = vecs[:, J.index(0)]
    expected = [round(abs(x) ** 2, 12) for x in singlet[1:3]]
    hw = highest_weight(1, 1, 0)
    assert [float(a.radicand) for a in hw.amplitudes.values()] == expected == [0.5, 0.5]
    assert [a.sign for a in hw.amplitudes.values()] == [1, -1]


def test_highest_weight_range():
    with pytest.raises(RangeError):
        highest_weight(S1, S1, 6)
    with pytest.raises(RangeError):
        highest_weight(S1, S1, 1)


def test_lower_examples():
    s22 = highest_weight(S1, S1, 4)
    s21 = lower(s22, S1, S1)
    assert dict(s21.amplitudes) == {2: ssr(1, Fraction(1, 2)), 0: ssr(1, Fraction(1, 2))}
    s20 = lower(s21, S1, S1)
    assert dict(s20.amplitudes) == {
        2: ssr(1, Fraction(1, 6)),
        0: ssr(1, Fraction(2, 3)),
        -2: ssr(1, Fraction(1, 6)),
    }
    bottom = build_multiplet(S1, S1, 4)[-1]
    assert bottom.M_twice == -4
    with pytest.raises(RangeError):
        lower(bottom, S1, S1)


def test_spin1_table_matches_hand_values():
    t = build_cg_table(S1, S1)
    assert len(t) == 19
    assert t[(2, 0, 0)].is_zero()
    assert t[(2, 2, 2)] == ssr(1, Fraction(1, 2))
    assert t[(2, 2, 0)] == ssr(-1, Fraction(1, 2))


def test_trivial_table():
    t = build_cg_table(0, 0)
    assert dict(t.entries) == {(0, 0, 0): ssr(1, 1)}


@pytest.mark.parametrize("a,b", [(2, 1), (1, 2), (3, 3), (4, 1), (6, 5)])
def test_table_against_diagonalization(a, b):
    t = build_cg_table(a, b)
    vals, vecs = total_j2_eigen(a, b)
    Js = j_values_from_eigen(vals)
    m1s = [a - 2 * i for i in range(a + 1) for _ in range(b + 1)]
    m2s = [b - 2 * k for _ in range(a + 1) for k in range(b + 1)]
    # eigenvectors of J^2 mix M within a J multiplet; project onto each M block
    for J in set(Js):
        cols = vecs[:, [i for i, x in enumerate(Js) if x == J]]
        proj = cols @ cols.conj().T
        for M in range(J, -J - 1, -2):
            idx = [i for i in range(len(m1s)) if m1s[i] + m2s[i] == M]
            block = proj[np.ix_(idx, idx)].real
            # rank-one projector onto |J, M>: diagonal holds the squared coefficients
            for row, i in enumerate(idx):
                assert float(t[(J, M, m1s[i])].radicand) == pytest.approx(block[row, row], abs=1e-9)


def test_raising_annihilates_highest_weights():
    for a in range(7):
        for b in range(7):
            for J in range(a + b, abs(a - b) - 1, -2):
                assert raise_state(highest_weight(a, b, J), a, b).is_zero()


def test_no_merge_failures_and_unitarity():
    for a in range(9):
        for b in range(9):
            t = build_cg_table(a, b)
            assert not unitarity_violations(t)
            assert not completeness_violations(t)


def test_stretched_rows_agree_with_closed_form():
    for a in range(9):
        for b in range(9):
            for state in build_multiplet(a, b, a + b):
                for m1, amp in state.amplitudes.items():
                    m2 = state.M_twice - m1
                    assert amp.sign == 1
                    assert amp.radicand == stretched_cg_squared(a, (a - m1) // 2, b, (b - m2) // 2)


def test_states_are_normalized():
    for state in build_multiplet(5, 3, 4):
        assert state.norm_squared() == 1
