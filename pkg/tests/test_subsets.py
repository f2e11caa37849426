from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from essmod.errors import OutOfRange
from essmod.subsets import Interval, SymbolicSubset, subset_normalize


def iv(lo, hi, lc=True, hc=True):
    return SymbolicSubset.interval(F(lo), F(hi), lc, hc)


# --- normalization ------------------------------------------------------------

def test_point_absorbed_into_touching_interval():
    s = SymbolicSubset(points=(F(1, 2),), intervals=(Interval(F(0), F(1, 2), False, True),))
    assert s == iv(0, F(1, 2), False, True)
    assert not s.points


def test_point_closes_open_endpoint():
    s = SymbolicSubset(points=(F(1, 2),), intervals=(Interval(F(0), F(1, 2), False, False),))
    assert s == iv(0, F(1, 2), False, True)


def test_overlapping_intervals_merge():
    s = SymbolicSubset(
        intervals=(Interval(F(0), F(1, 2), True, True), Interval(F(1, 4), F(3, 4), True, True))
    )
    assert s == iv(0, F(3, 4))


def test_adjacent_intervals_merge_across_shared_endpoint():
    s = SymbolicSubset(
        intervals=(Interval(F(0), F(1, 2), True, True), Interval(F(1, 2), F(1), False, True))
    )
    assert s == SymbolicSubset.full()


def test_open_adjacent_intervals_stay_separate():
    s = SymbolicSubset(
        intervals=(Interval(F(0), F(1, 2), True, False), Interval(F(1, 2), F(1), False, True))
    )
    assert len(s.intervals) == 2
    assert not s.contains(F(1, 2))


def test_degenerate_intervals():
    assert SymbolicSubset(intervals=(Interval(F(1, 3), F(1, 3), True, True),)) == SymbolicSubset.point(F(1, 3))
    assert SymbolicSubset(intervals=(Interval(F(1, 3), F(1, 3), True, False),)).is_empty()


def test_out_of_range_rejected():
    with pytest.raises(OutOfRange):
        SymbolicSubset.point(F(3, 2))
    with pytest.raises(OutOfRange):
        SymbolicSubset.interval(F(-1, 2), F(1, 2))
    with pytest.raises(OutOfRange):
        subset_normalize(points=[F(2)])


def test_subset_normalize_accepts_raw_tuples():
    s = subset_normalize(
        points=[F(1, 2)],
        intervals=[(F(0), F(1, 2), True, False), (F(1, 4), F(3, 4), True, True)],
    )
    assert s == iv(0, F(3, 4))
    assert s.contains(F(1, 2)) and not s.contains(F(7, 8))


# --- set operations --------------------------------------------------------------

def test_complement_of_open_interval():
    s = iv(F(1, 3), F(2, 3), False, False).complement()
    assert s == iv(0, F(1, 3)) | iv(F(2, 3), 1)


def test_complement_involution_and_demorgan():
    a = iv(0, F(1, 4)) | SymbolicSubset.point(F(1, 2))
    b = iv(F(1, 8), F(3, 4), False, False)
    assert a.complement().complement() == a
    assert (a | b).complement() == a.complement() & b.complement()


def test_difference_and_membership():
    s = SymbolicSubset.full() - SymbolicSubset.point(F(1, 2))
    assert not s.contains(F(1, 2))
    assert s.contains(F(1, 3))
    assert len(s.intervals) == 2


def test_interval_minus_points_splits():
    s = iv(0, 1) - SymbolicSubset.from_points([F(1, 4), F(1, 2)])
    assert len(s.intervals) == 3
    assert not s.contains(F(1, 4)) and s.contains(F(3, 8))


# --- topology ------------------------------------------------------------------------

def test_closure_closes_endpoints():
    s = iv(F(1, 4), F(1, 2), False, False).closure()
    assert s == iv(F(1, 4), F(1, 2), True, True)


def test_interior_is_relative_to_unit_interval():
    # [0, 1/2) is relatively open at 0 inside [0, 1]
    s = iv(0, F(1, 2), True, False)
    assert s.interior() == s
    t = iv(F(1, 4), F(1, 2), True, True)
    assert t.interior() == iv(F(1, 4), F(1, 2), False, False)


def test_interior_drops_isolated_points():
    s = SymbolicSubset.from_points([F(1, 3), F(2, 3)])
    assert s.interior().is_empty()


def test_nowhere_dense_examples():
    assert SymbolicSubset.empty().is_nowhere_dense()
    assert SymbolicSubset.from_points([F(1, 4), F(1, 2), F(3, 4)]).is_nowhere_dense()
    assert not iv(F(3, 10), F(2, 5)).is_nowhere_dense()
    assert not (SymbolicSubset.point(F(1, 8)) | iv(F(1, 2), F(5, 8), False, False)).is_nowhere_dense()


# --- randomized laws ----------------------------------------------------------------

frac01 = st.fractions(min_value=0, max_value=1, max_denominator=64)


@st.composite
def subsets(draw):
    pts = draw(st.lists(frac01, max_size=3))
    n_ivs = draw(st.integers(0, 3))
    ivs = []
    for _ in range(n_ivs):
        a, b = sorted([draw(frac01), draw(frac01)])
        ivs.append(Interval(a, b, draw(st.booleans()), draw(st.booleans())))
    return SymbolicSubset(points=tuple(pts), intervals=tuple(ivs))


@settings(deadline=None, max_examples=200)
@given(subsets())
def test_interior_subset_closure(s):
    assert s.interior().is_subset_of(s)
    assert s.is_subset_of(s.closure())
    assert s.closure().closure() == s.closure()
    assert s.interior().interior() == s.interior()


@settings(deadline=None, max_examples=200)
@given(subsets())
def test_nowhere_dense_two_routes_agree(s):
    via_topology = s.closure().interior().is_empty()
    via_intervals = not s.closure().has_interval()
    assert s.is_nowhere_dense() == via_topology == via_intervals


@settings(deadline=None, max_examples=100)
@given(subsets(), subsets())
def test_union_intersection_laws(a, b):
    assert (a | b) == (b | a)
    assert (a & b).is_subset_of(a)
    assert a.is_subset_of(a | b)
    assert (a - b) & b == SymbolicSubset.empty()
    assert ((a - b) | (a & b)) == a


@settings(deadline=None, max_examples=100)
@given(subsets(), frac01)
def test_membership_consistency(s, x):
    assert s.contains(x) == (not s.complement().contains(x))
