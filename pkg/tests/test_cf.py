from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from extremal.cf import (
    CFStream,
    ContinuedFraction,
    cf_evaluate,
    cf_from_rational,
    cf_negate,
    cf_truncate,
    convergent_table,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda r: abs(r) < 10**6)
element_lists = st.lists(st.integers(1, 60), max_size=25)


@pytest.mark.parametrize("r, a0, els", [
    (Fraction(3, 4), 0, (1, 3)),
    (Fraction(-3, 4), -1, (4,)),
    (Fraction(5), 5, ()),
    (Fraction(3, 7), 0, (2, 3)),
])
def test_expansion_anchors(r, a0, els):
    cf = cf_from_rational(r)
    assert (cf.a0, cf.elements) == (a0, els)
    assert cf_evaluate(cf) == r


def test_convergent_rows_by_hand():
    t = convergent_table(0, [1, 3])
    assert t.rows == ((1, 0), (0, 1), (1, 1), (3, 4))
    assert convergent_table(7).rows == ((1, 0), (7, 1))
    t = convergent_table(0, [2])
    assert t.convergent(1) == Fraction(1, 2)
    assert t.p(0) * t.q(1) - t.p(1) * t.q(0) == -1


@pytest.mark.parametrize("bad", [[0], [2, -1], [1, 0, 3]])
def test_table_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        convergent_table(0, bad)


def test_canonical_form_enforced():
    with pytest.raises(ValueError):
        ContinuedFraction(0, (2, 1))
    with pytest.raises(ValueError):
        ContinuedFraction(0, (0, 3))


@pytest.mark.parametrize("cf, want", [
    (ContinuedFraction(0, (1, 3)), ContinuedFraction(-1, (4,))),
    (ContinuedFraction(5), ContinuedFraction(-5)),
    (ContinuedFraction(0, (2,)), ContinuedFraction(-1, (2,))),
])
def test_negation(cf, want):
    assert cf_negate(cf) == want


def test_negate_refuses_infinite_streams():
    with pytest.raises(ValueError):
        cf_negate(CFStream.periodic(1, (), (2,)))


def test_truncation_reconstructs():
    tr = cf_truncate(CFStream.terminating([1, 3]), 1)
    assert tr.prefix == (1,) and tr.remainder == 3 and tr.exact
    assert tr.reconstruct() == (Fraction(3, 4), Fraction(3, 4))
    with pytest.raises(IndexError):
        cf_truncate(CFStream.terminating([1, 3]), 2)


def test_truncation_of_sqrt2_remainder():
    tr = cf_truncate(CFStream.periodic(1, (), (2,)), 1, bits=200)
    lo, hi = tr.remainder_bounds()
    # r = 1 + sqrt(2) solves r**2 = 2 r + 1
    assert lo * lo < 2 * lo + 1 and hi * hi > 2 * hi + 1
    assert hi - lo < Fraction(1, 2 ** 190)


def test_stream_accessors():
    s = CFStream.periodic(0, (5,), (1, 2))
    assert s.prefix(6) == (5, 1, 2, 1, 2, 1)
    assert s.tail(2).prefix(3) == (1, 2, 1)
    r = CFStream.from_rule(0, lambda i: i)
    assert r.prefix(4) == (1, 2, 3, 4)
    with pytest.raises(IndexError):
        CFStream.terminating([2, 3]).element(3)


@given(rationals)
def test_round_trip(r):
    assert cf_evaluate(cf_from_rational(r)) == r


@given(rationals)
def test_expansion_is_canonical(r):
    cf = cf_from_rational(r)
    assert all(a >= 1 for a in cf.elements)
    assert not cf.elements or cf.elements[-1] >= 2


@given(st.integers(-40, 40), element_lists)
def test_determinant_identity(a0, els):
    t = convergent_table(a0, els)
    for i in range(len(els) + 1):
        assert t.p(i - 1) * t.q(i) - t.p(i) * t.q(i - 1) == (-1) ** i


@given(rationals)
def test_double_negation(r):
    cf = cf_from_rational(r)
    assert cf_negate(cf_negate(cf)) == cf


@given(st.integers(0, 5), st.lists(st.integers(1, 9), min_size=1, max_size=6),
       st.lists(st.integers(1, 9), min_size=1, max_size=4), st.integers(10, 200))
def test_stream_bounds_enclose_convergents(a0, pre, per, bits):
    s = CFStream.periodic(a0, pre, per)
    lo, hi = s.bounds(bits)
    assert hi - lo <= Fraction(1, 2 ** bits)
    deep = convergent_table(a0, s.prefix(bits + 10))
    v = deep.convergent(deep.depth)
    assert lo - Fraction(1, 2 ** bits) <= v <= hi + Fraction(1, 2 ** bits)
