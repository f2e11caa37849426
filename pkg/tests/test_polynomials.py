from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from essmod.errors import IrrationalRoot
from essmod.polynomials import (
    GaussianPoly,
    RationalPoly,
    certify_only_rational_roots,
    common_real_zero_gcd,
    count_distinct_real_roots,
    exact_zero_points,
    poly_gcd,
    rational_roots,
    squarefree_part,
)
from essmod.rationals import ComplexRational


def p(*coeffs):
    return RationalPoly(tuple(F(c) for c in coeffs))


def test_eval_and_degree():
    q = p(1, -2, 1)  # (x-1)^2
    assert q(F(1)) == 0 and q(F(3)) == 4
    assert q.degree == 2
    assert RationalPoly.zero().degree == -1


def test_divmod_exact():
    a = p(-1, 0, 1)  # x^2 - 1
    b = p(-1, 1)  # x - 1
    q, r = a.divmod(b)
    assert r.is_zero()
    assert q == p(1, 1)


def test_gcd_of_shared_factor():
    shared = p(-1, 2)  # 2x - 1
    a = shared * p(3, 1)
    b = shared * p(-5, 0, 7)
    g = poly_gcd(a, b)
    assert g == shared.monic()


def test_squarefree_part_strips_multiplicity():
    q = p(-1, 1) * p(-1, 1) * p(2, 1)
    sf = squarefree_part(q)
    assert sf == (p(-1, 1) * p(2, 1)).monic()


def test_rational_roots_complete():
    # roots 0, 1/2, -3
    q = p(0, 1) * p(-1, 2) * p(3, 1)
    assert rational_roots(q) == [F(-3), F(0), F(1, 2)]


def test_rational_roots_ignores_irrational():
    q = p(-2, 0, 1)  # x^2 - 2
    assert rational_roots(q) == []


def test_sturm_counts_distinct_roots():
    q = p(-2, 0, 1)  # roots ±√2
    assert count_distinct_real_roots(q, F(0), F(2)) == 1
    assert count_distinct_real_roots(q, F(-2), F(2)) == 2
    assert count_distinct_real_roots(q, F(2), F(3)) == 0
    # multiple root counted once
    sq = p(-1, 1) * p(-1, 1)
    assert count_distinct_real_roots(sq, F(0), F(2)) == 1


def test_certify_returns_rational_roots_in_range():
    q = p(0, 1) * p(-1, 2)
    assert certify_only_rational_roots(q, F(0), F(1)) == [F(0), F(1, 2)]


def test_certify_raises_on_irrational_root():
    half = p(F(-1, 2), 0, 1)  # x^2 - 1/2, root 1/√2 ≈ 0.707
    with pytest.raises(IrrationalRoot):
        certify_only_rational_roots(half, F(0), F(1))
    # a rational root alongside an irrational one still raises
    with pytest.raises(IrrationalRoot):
        certify_only_rational_roots(half * p(-1, 2), F(0), F(1))
    # but outside the interval the irrational root is invisible
    assert certify_only_rational_roots(half, F(0), F(1, 2)) == []


def test_gaussian_poly_arithmetic_and_conj():
    # (1 + i x) * conj = 1 + x^2
    g = GaussianPoly(p(1), p(0, 1))
    prod = g * g.conj()
    assert prod.re == p(1, 0, 1)
    assert prod.im.is_zero()
    v = g(F(1, 2))
    assert v == ComplexRational(F(1), F(1, 2))


def test_common_real_zero_gcd():
    g1 = GaussianPoly(p(0, 1) * p(-1, 1), p(0))  # x(x-1)
    g2 = GaussianPoly(p(0, 1) * p(-2, 1), p(0))  # x(x-2)
    g = common_real_zero_gcd([g1, g2])
    assert rational_roots(g) == [F(0)]


def test_exact_zero_points_modes():
    # identically zero
    assert exact_zero_points([GaussianPoly.zero()], F(0), F(1)) is None
    # no zeros: nonzero constant
    assert exact_zero_points([GaussianPoly(p(3), p(0))], F(0), F(1)) == []
    # imaginary and real parts constrain jointly: re has roots {0, 1/2}, im has {1/2}
    g = GaussianPoly(p(0, 1) * p(-1, 2), p(-1, 2))
    assert exact_zero_points([g], F(0), F(1)) == [F(1, 2)]


def test_exact_zero_points_irrational_rejected():
    g = GaussianPoly(p(F(-1, 2), 0, 1), p(0))  # x^2 - 1/2
    with pytest.raises(IrrationalRoot):
        exact_zero_points([g], F(0), F(1))


small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=8)
polys = st.lists(small_fracs, min_size=0, max_size=4).map(lambda cs: RationalPoly(tuple(cs)))


@settings(deadline=None, max_examples=200)
@given(polys, polys, small_fracs)
def test_product_evaluates_pointwise(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@settings(deadline=None, max_examples=200)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    for q in (a, b):
        _, r = q.divmod(g)
        assert r.is_zero()


@settings(deadline=None, max_examples=150)
@given(polys)
def test_rational_roots_are_roots(a):
    if a.is_zero():
        return
    for r in rational_roots(a):
        assert a(r) == 0
