from fractions import Fraction as F

import pytest

from essmod.errors import DimensionMismatch
from essmod.polynomials import GaussianPoly, RationalPoly
from essmod.rationals import ComplexRational, cr
from essmod.sections import PiecewiseSection, bump, pointwise_inner, unit_bump
from essmod.subsets import SymbolicSubset


def x_section():
    return PiecewiseSection.scalar_poly(GaussianPoly(RationalPoly.x(), RationalPoly.zero()))


def test_constant_section_evaluates():
    m = PiecewiseSection.constant([1, cr(0, 1)])
    assert m(F(1, 3)) == (ComplexRational(F(1)), ComplexRational(F(0), F(1)))


def test_continuity_enforced():
    zero = GaussianPoly.zero()
    one = GaussianPoly.const(cr(1))
    with pytest.raises(ValueError, match="discontinuity"):
        PiecewiseSection(1, (F(0), F(1, 2), F(1)), ((zero,), (one,)))


def test_breakpoint_validation():
    one = GaussianPoly.const(cr(1))
    with pytest.raises(ValueError):
        PiecewiseSection(1, (F(0), F(1, 2)), ((one,),))  # must end at 1
    with pytest.raises(ValueError):
        PiecewiseSection(1, (F(0), F(1, 2), F(1, 4), F(1)), ((one,), (one,), (one,)))


def test_refine_preserves_values():
    m = bump(F(1, 4), F(3, 4))
    r = m.refine([F(1, 2), F(1, 8)])
    for x in (F(0), F(1, 8), F(1, 3), F(1, 2), F(9, 10)):
        assert m(x) == r(x)
    assert F(1, 2) in r.breakpoints


def test_addition_merges_breakpoints():
    a = bump(F(0), F(1, 2))
    b = bump(F(1, 2), F(1))
    s = a + b
    for x in (F(1, 4), F(1, 2), F(3, 4)):
        assert s(x)[0] == a(x)[0] + b(x)[0]


def test_scalar_section_product():
    m = PiecewiseSection.constant([2, 3])
    c = x_section()
    prod = m.mul_scalar_section(c)
    assert prod(F(1, 2)) == (ComplexRational(F(1)), ComplexRational(F(3, 2)))
    with pytest.raises(DimensionMismatch):
        m.mul_scalar_section(PiecewiseSection.constant([1, 1]))


def test_pointwise_inner_conjugates_first_slot():
    u = PiecewiseSection.constant([cr(0, 1)])  # i
    v = x_section()
    ip = pointwise_inner(u, v)
    # ⟨i, x⟩ = conj(i)·x = -i x
    assert ip(F(1, 2))[0] == ComplexRational(F(0), F(-1, 2))
    # hermitian symmetry: ⟨u,v⟩ = conj(⟨v,u⟩)
    assert pointwise_inner(v, u)(F(1, 2))[0] == ComplexRational(F(0), F(1, 2))


def test_zero_and_support_sets():
    m = x_section()
    assert m.zero_set() == SymbolicSubset.point(F(0))
    assert m.support_set() == SymbolicSubset.interval(F(0), F(1), False, True)
    z = PiecewiseSection.zero(2)
    assert z.zero_set() == SymbolicSubset.full()
    assert z.support_set().is_empty()


def test_bump_shape():
    a = bump(F(1, 4), F(1, 2))
    assert a(F(1, 4))[0].is_zero() and a(F(1, 2))[0].is_zero()
    assert a(F(3, 8))[0] == ComplexRational(F(1, 64))  # (1/8)^2
    assert a(F(3, 4))[0].is_zero()
    assert a.support_set() == SymbolicSubset.interval(F(1, 4), F(1, 2), False, False)


def test_unit_bump_peaks_at_one():
    a = unit_bump(F(1, 2), F(1, 8))
    assert a(F(1, 2))[0] == ComplexRational(F(1))
    assert a.exact_sup_norm() == F(1)
    assert a(F(3, 8))[0].is_zero()


def test_exact_sup_norm_constraints():
    assert unit_bump(F(1, 4), F(1, 8)).exact_sup_norm() == F(1)
    with pytest.raises(ValueError):
        PiecewiseSection.constant([1, 1]).exact_sup_norm()  # not scalar
    cubic = PiecewiseSection.scalar_poly(
        GaussianPoly(RationalPoly((F(0), F(0), F(0), F(1))), RationalPoly.zero())
    )
    with pytest.raises(ValueError):
        cubic.exact_sup_norm()


def test_sup_norm_upper_bound_dominates():
    m = bump(F(0), F(1))  # x(1-x), true sup 1/4
    bound = m.sup_norm_upper_bound()
    assert bound >= F(1, 4)


def test_equality_across_refinements():
    a = bump(F(1, 4), F(1, 2))
    b = a.refine([F(1, 3), F(2, 5)])
    assert a.equals(b) and b.equals(a)
    assert not a.equals(bump(F(1, 4), F(3, 4)))
