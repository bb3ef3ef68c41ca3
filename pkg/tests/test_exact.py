from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cgbinom.exact import (
    ONE,
    ZERO,
    MergeError,
    SignedSqrtRational,
    binomial,
    rational_sqrt,
    ssr,
    ssr_add,
    ssr_mul,
    ssr_square,
    ssr_sum,
)


def pascal_rows(n_max):
    rows = [[1]]
    for _ in range(n_max):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return rows


PASCAL = pascal_rows(64)


def test_binomial_matches_pascal():
    for n, row in enumerate(PASCAL):
        for k in range(-2, n + 3):
            expected = row[k] if 0 <= k <= n else 0
            assert binomial(n, k) == expected


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (0, 0, 1), (5, 7, 0), (5, -1, 0)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_vandermonde():
    for l1 in range(17):
        for l2 in range(17):
            for k in range(l1 + l2 + 1):
                total = sum(binomial(l1, k1) * binomial(l2, k - k1) for k1 in range(k + 1))
                assert total == binomial(l1 + l2, k)


@pytest.mark.parametrize(
    "r,expected",
    [(Fraction(4, 9), Fraction(2, 3)), (Fraction(2), None), (Fraction(0), Fraction(0)), (Fraction(1, 2), None)],
)
def test_rational_sqrt_examples(r, expected):
    assert rational_sqrt(r) == expected


def test_rational_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(-1, 4))


fractions_nonneg = st.fractions(min_value=0, max_denominator=10**6).filter(lambda f: f <= 10**9)


@given(fractions_nonneg)
def test_rational_sqrt_squares_back(r):
    s = rational_sqrt(r)
    if s is not None:
        assert s >= 0 and s * s == r


@given(fractions_nonneg, fractions_nonneg)
def test_rational_sqrt_multiplicative_on_squares(a, b):
    assert rational_sqrt(a * a * b * b) == a * b


def test_canonical_zero():
    z = SignedSqrtRational(1, Fraction(0))
    assert z.sign == 0 and z == ZERO
    with pytest.raises(ValueError):
        SignedSqrtRational(1, Fraction(-1))
    with pytest.raises(ValueError):
        SignedSqrtRational(2, Fraction(1))


def test_mul_examples():
    assert ssr(1, Fraction(1, 2)) * ssr(1, Fraction(1, 2)) == ssr(1, Fraction(1, 4))
    assert ssr_mul(ssr(-1, Fraction(2, 3)), ssr(1, Fraction(3, 2))) == ssr(-1, 1)
    assert ssr_mul(ssr(-1, 7), ZERO) == ZERO


def test_add_examples():
    assert ssr_add(ssr(1, Fraction(1, 6)), ssr(1, Fraction(1, 6))) == ssr(1, Fraction(2, 3))
    assert ssr_add(ssr(1, Fraction(1, 2)), ssr(-1, Fraction(1, 2))) == ZERO
    with pytest.raises(MergeError):
        ssr_add(ssr(1, 2), ssr(1, 3))


def test_add_opposite_magnitudes():
    # sqrt(8) - sqrt(2) = sqrt(2); -sqrt(8) + sqrt(2) = -sqrt(2)
    assert ssr(1, 8) + ssr(-1, 2) == ssr(1, 2)
    assert ssr(-1, 8) + ssr(1, 2) == ssr(-1, 2)


def test_square_examples():
    assert ssr_square(ssr(-1, Fraction(1, 3))) == Fraction(1, 3)
    assert ssr_square(ZERO) == 0
    assert ssr_square(ssr(1, Fraction(2, 3))) == Fraction(2, 3)


small = st.fractions(min_value=0, max_value=50, max_denominator=30)
signs = st.sampled_from([-1, 0, 1])
ssrs = st.builds(SignedSqrtRational, signs, small)


@st.composite
def mergeable_pairs(draw):
    base = draw(st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30))
    q1 = draw(st.fractions(min_value=0, max_value=20, max_denominator=20))
    q2 = draw(st.fractions(min_value=0, max_value=20, max_denominator=20))
    return (
        SignedSqrtRational(draw(signs), q1 * q1 * base),
        SignedSqrtRational(draw(signs), q2 * q2 * base),
    )


@given(mergeable_pairs())
def test_add_commutative_and_float_consistent(pair):
    a, b = pair
    s = ssr_add(a, b)
    assert s == ssr_add(b, a)
    assert float(s) == pytest.approx(float(a) + float(b), abs=1e-9)


@given(ssrs)
def test_zero_is_identity(a):
    assert ssr_add(a, ZERO) == a
    assert ssr_add(ZERO, a) == a


@given(ssrs, ssrs)
def test_square_of_product(a, b):
    assert ssr_square(ssr_mul(a, b)) == ssr_square(a) * ssr_square(b)


def test_from_rational():
    assert SignedSqrtRational.from_rational(Fraction(-2, 3)) == ssr(-1, Fraction(4, 9))
    assert str(ONE) == "+1"
    assert str(ssr(-1, Fraction(1, 3))) == "-sqrt(1/3)"


def test_ssr_sum_groups_square_classes():
    # sqrt(2) + sqrt(3) - sqrt(8)/2 - sqrt(12)/2 = 0
    terms = [ssr(1, 2), ssr(1, 3), ssr(-1, 2), ssr(-1, 3)]
    assert ssr_sum(terms) == []
    parts = ssr_sum([ssr(1, 2), ssr(1, 3), ssr(1, 8)])
    assert sorted(p.radicand for p in parts) == [3, 18]
