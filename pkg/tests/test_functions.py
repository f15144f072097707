from fractions import Fraction as F
from math import log

import pytest
from hypothesis import given, strategies as st

from extremal.functions import (
    CoverPair,
    LineFamily,
    PiecewiseLinear,
    Schedule,
    build_cover,
    build_urysohn,
    choose_schedule,
    f_level_eval,
    f_total_eval,
    growth_preset,
    normalize_growth,
    schedule_target,
    support_report,
    trim_origin,
    u_eval,
    U_FUNCTION,
)
from extremal.harness import brute_level_terms, construct_witness
from extremal.intervals import IntervalSet, RatInterval
from extremal.khinchin_sets import BudgetExhausted, EnumeratedSet, GFamily

small = st.fractions(-20, 20, max_denominator=500)


@pytest.mark.parametrize("x, want", [(F(1, 4), 0), (F(3, 4), F(1, 2)), (-2, 1), (F(1, 2), 0), (1, 1)])
def test_u_values(x, want):
    assert u_eval(x) == want


@given(small)
def test_u_matches_breakpoint_table_and_is_even(x):
    assert u_eval(x) == U_FUNCTION(x) == u_eval(-x)
    assert 0 <= u_eval(x) <= 1


def test_piecewise_linear():
    f = PiecewiseLinear([(0, 0), (1, 2), (3, 2)])
    assert f(F(1, 2)) == 1 and f(-5) == 0 and f(10) == 2 and f(2) == 2
    with pytest.raises(ValueError):
        PiecewiseLinear([(0, 0), (0, 1)])


def test_normalize_growth_example():
    g = normalize_growth([-1, 5], lambda n: n - 1, divergent=True)
    assert [g(n) for n in range(1, 7)] == [1, 2, 2, 3, 4, 5]
    h = normalize_growth([1, 2, 3], lambda n: n, divergent=True)
    assert [h(n) for n in range(1, 6)] == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        normalize_growth([1, 2], lambda n: n)


@given(st.lists(st.integers(-5, 30), max_size=12), st.integers(1, 40))
def test_normalized_growth_is_positive_monotone_and_below(prefix, n):
    g = normalize_growth(prefix, lambda i: F(i), divergent=True)
    assert g(n) > 0
    if n > 1:
        assert g(n) >= g(n - 1)
    raw = prefix[n - 1] if n <= len(prefix) else n
    if raw > 0:
        assert g(n) <= raw


@pytest.mark.parametrize("name, ref", [("log", lambda n: log(n + 1)), ("sqrt", lambda n: n ** 0.5),
                                       ("linear", float)])
def test_growth_presets(name, ref):
    g = growth_preset(name)
    vals = [g(n) for n in range(1, 300)]
    assert vals == sorted(vals) and vals[0] > 0
    for n in (1, 7, 299):
        assert abs(float(g(n)) - ref(n)) < 1e-12
        lo, hi = g.inv_sqrt_bounds(n)
        assert lo * lo * g(n) <= 1 <= hi * hi * g(n)


def test_unknown_growth():
    with pytest.raises(ValueError):
        growth_preset("cubic")


def test_schedule_g_first_level():
    lines = LineFamily(GFamily(3), (-6, 6))
    sched = choose_schedule(lines, "G", 5)
    assert sched.ks[0] == 1 and lines.upper(1) < F(1, 4)
    assert sched.ks == sorted(set(sched.ks))
    for l, k in enumerate(sched.ks, 1):
        assert lines.upper(k) < schedule_target("G", l)
    assert choose_schedule(lines, "G", 0).ks == []


def test_loose_targets_give_earlier_schedule():
    lines = LineFamily(GFamily(3), (-6, 6))

    class Loose(Schedule):
        def target(self, l):
            return 2 * super().target(l)

    tight = choose_schedule(lines, "G", 6, m=2)
    loose = Loose(lines, "G", 2, 6)
    loose(6)
    assert all(a <= b for a, b in zip(loose.ks, tight.ks))


def test_schedule_budget_names_level():
    with pytest.raises(BudgetExhausted, match="l = 3"):
        Schedule(LineFamily(GFamily(3), (-2, 2)), "G", 1, 2)(3)


def test_cover_single_interval():
    c = build_cover(IntervalSet.of((F(1, 3), F(2, 5))))
    (o,) = c.outer.intervals
    assert o == RatInterval(F(1, 3) - c.pad, F(2, 5) + c.pad)
    assert 2 * c.pad < F(1, 15)


def test_cover_rejections():
    with pytest.raises(ValueError):
        build_cover(IntervalSet.of((0, F(1, 21))))
    with pytest.raises(ValueError):
        build_cover(IntervalSet())


def _sets_away_from_zero():
    pair = st.tuples(st.fractions(F(1, 100), 5, max_denominator=200),
                     st.fractions(F(1, 100), 5, max_denominator=200)).filter(lambda p: p[0] != p[1])
    sign = st.sampled_from([1, -1])
    return st.lists(st.tuples(pair, sign), min_size=1, max_size=10).map(
        lambda items: IntervalSet.of(*[(s * min(p), s * max(p)) if s > 0 else (s * max(p), s * min(p))
                                       for p, s in items]))


@given(_sets_away_from_zero())
def test_cover_invariants(inner):
    c = build_cover(inner)
    assert c.outer.measure < 2 * inner.measure
    assert 0 not in c.outer and len(c.outer) == len(inner)
    for a, b in zip(inner.intervals, c.outer.intervals):
        assert b.contains_closed(a)


@given(_sets_away_from_zero(), st.fractions(-6, 6, max_denominator=1000))
def test_urysohn_contract(inner, y):
    c = build_cover(inner)
    v = build_urysohn(c)
    val = v(y)
    assert 0 <= val <= 1
    if any(iv.lo <= y <= iv.hi for iv in inner.intervals):
        assert val == 1
    if c.outer.locate(y) is None:
        assert val == 0


def test_urysohn_landmarks():
    c = build_cover(IntervalSet.of((F(1, 3), F(2, 5))))
    v = build_urysohn(c)
    assert v(F(1, 3)) == 1 and v(F(2, 5)) == 1
    assert v(F(1, 3) - c.pad) == 0 and v(F(2, 5) + c.pad) == 0
    assert v(F(1, 3) - c.pad / 2) == F(1, 2)


def test_trim_origin():
    es = EnumeratedSet(IntervalSet.of((F(-1, 4), F(1, 2)), (1, 2)), F(0))
    t = trim_origin(es)
    assert t.inner == IntervalSet.of((F(-1, 4), F(-1, 8)), (F(1, 4), F(1, 2)), (1, 2))
    assert t.upper == es.upper


@pytest.mark.parametrize("kind", ["F", "G"])
def test_schedule_and_covers_per_level(ctx, kind):
    for m in (1, 2, 3):
        bank = ctx.bank(kind, m)
        ks = [bank.k(l) for l in range(1, 12)]
        assert ks == sorted(set(ks))
        for l in range(1, 12):
            assert bank.lines.upper(bank.k(l)) < schedule_target(kind, l, m)
            c = bank.cover(l)
            assert c.outer.measure < 2 * c.inner.measure and 0 not in c.outer


@given(small, st.integers(1, 6))
def test_level_vanishes_below_m_over_two(x, m):
    if abs(x) < F(m, 2):
        from extremal.functions import FunctionContext
        # u(x/m) = 0 makes the level zero without touching any cover
        assert f_level_eval(x, m, FunctionContext(), "G").is_zero


def test_zero_point(ctx):
    for kind in "FG":
        assert f_level_eval(0, 1, ctx, kind).is_zero
    t = f_total_eval(F(1, 3), ctx)
    assert t.f_F == t.f_G == t.f_E == (0, 0)


def test_witness_alignment(ctx):
    x0 = construct_witness(ctx, "G", 1, 12, 1)
    for n in range(1, 13):
        lv = f_level_eval(n * x0, 1, ctx, "G")
        assert (n, 1) in lv.terms
        lo, _ = ctx.growth.inv_sqrt_bounds(n)
        assert lv.lo >= lo


@given(st.fractions(-6, 6, max_denominator=10**4), st.integers(1, 3), st.sampled_from("FG"))
def test_fast_matches_brute_force(ctx, x, m, kind):
    assert dict(f_level_eval(x, m, ctx, kind).terms) == brute_level_terms(x, m, ctx, kind)


@given(st.fractions(-6, 6, max_denominator=1000))
def test_total_is_sum_and_bounded(ctx, x):
    t = f_total_eval(x, ctx)
    assert t.f_E == (t.f_F[0] + t.f_G[0], t.f_F[1] + t.f_G[1])
    cap = ctx.growth.inv_sqrt_bounds(1)[1]
    assert 0 <= t.f_F[0] <= t.f_F[1] <= cap and 0 <= t.f_G[0] <= t.f_G[1] <= cap
    assert t.error < F(1, 2 ** 64)


def test_support_report(ctx):
    rep = support_report(ctx, 4)
    assert all(r.ok for r in rep)
    for kind in "FG":
        assert sum(r.bound for r in rep if r.kind == kind) < 1
    assert support_report(None, 4) == []


def test_budget_error_beyond_lmax():
    from extremal.functions import BuildConfig, FunctionContext
    small_ctx = FunctionContext(BuildConfig(l_max=2))
    # deep inside every G cylinder, so the level-5 cover is genuinely needed
    y = 1 + small_ctx.bank("G", 1).lines.family.cylinders.cylinder(300).midpoint
    with pytest.raises(BudgetExhausted):
        f_level_eval(5 * y, 1, small_ctx, "G")
    # a point the hull test rules out needs no cover at all
    assert f_level_eval(5 * F(3, 2), 1, small_ctx, "G").is_zero
