from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from extremal.certified import (
    exp_bounds,
    floor_exp_ratio,
    gamma_tail_upper,
    ln_bounds,
    sign_certified,
    sqrt_bounds,
)
from mpmath import iv

positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000)


@given(positive, st.integers(40, 200))
def test_sqrt_brackets(x, bits):
    lo, hi = sqrt_bounds(x, bits)
    assert lo * lo <= x <= hi * hi
    assert hi - lo <= Fraction(1, 2 ** bits)


def test_sqrt_exact_squares():
    assert sqrt_bounds(Fraction(9, 4)) == (Fraction(3, 2), Fraction(3, 2))


@given(positive)
def test_ln_and_exp_enclose(x):
    lo, hi = ln_bounds(x, 80)
    ref = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    assert lo <= Fraction(str(ref)) + Fraction(1, 10**12)
    assert Fraction(str(ref)) - Fraction(1, 10**12) <= hi
    elo, ehi = exp_bounds(lo, 80)
    assert elo <= x * (1 + Fraction(1, 10**15))


def test_sign_and_floor():
    assert sign_certified(lambda: iv.mpf(3) - iv.log(3) - iv.log(2) - 1) == 1
    assert sign_certified(lambda: iv.mpf(2) - 2 * iv.log(2) - 1) == -1
    assert floor_exp_ratio(Fraction(3), 1) == 20
    assert floor_exp_ratio(Fraction(6), 20) == 20  # e**6 = 403.4...


@pytest.mark.parametrize("j, logm", [(1, 3), (2, 6), (5, 15), (20, 60), (40, 120)])
def test_gamma_tail_upper_dominates(j, logm):
    L = mpmath.mpf(logm) - j * mpmath.log(2)
    exact = mpmath.gammainc(j, L, regularized=True) if L > 0 else mpmath.mpf(1)
    ub = gamma_tail_upper(j, Fraction(logm))
    assert ub >= Fraction(str(exact)) * (1 - Fraction(1, 10**10))
    assert ub <= 1
