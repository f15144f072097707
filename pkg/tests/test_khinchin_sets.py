from fractions import Fraction as F
from math import exp, log

import pytest
from hypothesis import given, strategies as st

from extremal.intervals import IntervalSet, iset_intersect, iset_union
from extremal.khinchin_sets import (
    BudgetExhausted,
    FFamily,
    GFamily,
    GParams,
    PathCylinders,
    PhiSchedule,
    enumerate_F0,
    enumerate_G0,
    extend_to_line,
    f0_measure_bound,
    f_path,
    g0_complement,
    g_path,
    sparse_F0,
    sparse_G0,
    validate_A,
)

CONST2 = PhiSchedule.constant(2)

# frozen from an exhaustive run: G0(k=2, A=3)
G2_NODES = 404
G2_MEASURE_FLOAT = 0.017702819171794604


@pytest.mark.parametrize("A, ok", [(3, True), (1, False), (2, False), (F(5, 2), False), (F(27, 10), True)])
def test_validate_A(A, ok):
    assert validate_A(A) is ok
    # cross-check against plain floats away from the root near 2.68
    assert (A - log(A) - log(2) - 1 > 0) is ok


def test_gparams_rejects_bad_A():
    with pytest.raises(ValueError):
        GParams(2, 1)


def test_F0_worked_example():
    s = enumerate_F0(1, 1, CONST2, 3)
    assert s.inner == IntervalSet.of((F(1, 4), F(2, 7)), (F(1, 3), F(2, 5)), (F(1, 2), F(2, 3)))
    assert s.measure == F(1, 6) + F(1, 15) + F(1, 28)
    assert s.tail_bound == F(1, 4)


def test_F0_linear_phi_frozen():
    s = enumerate_F0(2, 2, PhiSchedule.linear(), 2)
    assert s.measure == F(233745764380621, 1402827280028460)
    assert s.tail_bound == F(55, 84)


def test_phi_barely_above_one_still_admits_ones():
    # a < 1.000001 allows a = 1, so the set is the all-ones cylinders, not empty
    s = enumerate_F0(1, 1, PhiSchedule.constant(F(1000001, 1000000)), 3)
    assert s.measure == F(113, 420)


def test_phi_must_exceed_one():
    with pytest.raises(ValueError):
        enumerate_F0(1, 2, PhiSchedule.constant(1), 3)
    with pytest.raises(ValueError):
        enumerate_F0(1, 2, PhiSchedule.from_table([3, 3, 2]), 3)


@given(st.integers(1, 5))
def test_F0_monotone_in_cap(B):
    a, b = enumerate_F0(1, 2, CONST2, B), enumerate_F0(1, 2, CONST2, B + 1)
    assert a.measure <= b.measure and b.tail_bound <= a.tail_bound


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_F0_inner_plus_tail_respects_product_bound_plus_tail(m, k, B):
    s = enumerate_F0(m, k, CONST2, B)
    w = enumerate_F0(m, k, CONST2, B, weighted_tail=True)
    assert s.inner == w.inner
    assert w.tail_bound == s.tail_bound * f0_measure_bound(m, k, CONST2)
    assert s.measure <= f0_measure_bound(m, k, CONST2)


def test_G0_depth_one():
    s = enumerate_G0(GParams(3, 1))
    assert s.inner == IntervalSet.of((0, F(1, 21)))
    assert s.measure == F(1, 21) and s.tail_bound == 0
    # e**(7/2) = 33.1..., so a_1 >= 34
    assert enumerate_G0(GParams(F(7, 2), 1)).measure == F(1, 34)


def test_G0_depth_two_frozen():
    s = enumerate_G0(GParams(3, 2))
    assert s.params_echo["nodes"] == G2_NODES
    assert float(s.measure) == G2_MEASURE_FLOAT
    assert s.measure < F(1, 21)


@pytest.mark.parametrize("k", [1, 2])
def test_G0_is_complement_of_brute_force(k):
    p = GParams(3, k)
    s, c = enumerate_G0(p), g0_complement(p)
    assert iset_intersect(s.inner, c).measure == 0
    assert s.measure + c.measure == 1
    assert iset_union(s.inner, c).measure == 1


def test_G0_budget():
    with pytest.raises(BudgetExhausted):
        enumerate_G0(GParams(3, 3), node_budget=100)


@pytest.mark.parametrize("k", [1, 2, 5, 12, 40])
def test_sparse_G0_bounds_exact(k):
    sp = sparse_G0(GParams(3, k))
    if k <= 2:
        assert sp.upper >= enumerate_G0(GParams(3, k)).measure
    assert sp.inner.measure <= sp.upper <= 1
    assert len(sp.inner) == 1  # the constant path clears the threshold


def test_sparse_bounds_decay():
    ups = [sparse_G0(GParams(3, k)).upper for k in (10, 20, 40, 80)]
    assert ups == sorted(ups, reverse=True) and ups[-1] < F(1, 10**6)
    fs = [sparse_F0(2, k, CONST2).upper for k in (5, 10, 20)]
    assert fs == sorted(fs, reverse=True)


def test_witness_paths():
    assert g_path(3).prefix(3) == (21, 21, 21)
    pc = PathCylinders(f_path())
    assert (pc.cylinder(2).lo, pc.cylinder(2).hi) == (F(1, 2), F(2, 3))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_extension_bound(k):
    ext = extend_to_line(GFamily(3), k, (-6, 6))
    assert ext.upper < F(3, 2 ** k)
    for j, piece in ext.pieces.items():
        assert piece.upper < ext.piece_bound(j)
        assert ext.n_of_j[j] >= 1


def test_extension_examples():
    ext = extend_to_line(GFamily(3), 2, (-2, 2))
    assert len(ext.pieces) == 5 and ext.upper < F(3, 4)
    single = extend_to_line(GFamily(3), 3, (0, 0))
    assert single.upper < F(1, 8)
    with pytest.raises(ValueError):
        extend_to_line(GFamily(3), 1, (1, 3))


def test_extension_budget_error():
    with pytest.raises(BudgetExhausted):
        extend_to_line(GFamily(3), 1, (-40, 40), max_increment=2)


def test_families_switch_to_sparse():
    fam = GFamily(3, exact_budget=500)
    assert not fam.is_sparse(2)
    assert fam.is_sparse(3)
    ff = FFamily(2, CONST2, exact_depth=1)
    assert not ff.is_sparse(1) and ff.is_sparse(2)


@given(st.integers(1, 60))
def test_depth_family_bits_consistent(d):
    fam = GFamily(3, exact_budget=500)
    s = fam.bits(d)
    assert fam.upper(d) < F(1, 2) ** s if s >= 0 else fam.upper(d) < 2 ** (-s)
    assert not fam.upper(d) < (F(1, 2) ** (s + 1) if s + 1 >= 0 else 2 ** (-(s + 1)))
