from fractions import Fraction as F

import pytest

from essmod.errors import NoRoom, PreconditionFailed, SampleNotInDefect, ZeroInput
from essmod.fields import (
    FieldModuleSpec,
    FieldPiece,
    SubspaceField,
    _pick_interval,
    essential_witness,
    inductive_witness_section,
    is_essential_field,
    non_essential_witness,
    residual_set,
)
from essmod.polynomials import GaussianPoly, RationalPoly
from essmod.rationals import mat, mat_identity
from essmod.sections import PiecewiseSection
from essmod.subsets import SymbolicSubset


def zero_basis(d):
    return tuple(() for _ in range(d))


def field_with_regions(d, *pairs):
    """Build a field from (region, basis) pairs plus a full-fiber remainder."""
    pieces = []
    rest = SymbolicSubset.full()
    for region, basis in pairs:
        pieces.append(FieldPiece(region, basis))
        rest = rest - region
    if not rest.is_empty():
        pieces.append(FieldPiece(rest, mat_identity(d)))
    return SubspaceField(d, tuple(pieces))


# --- essential witness ------------------------------------------------------------

def test_essential_witness_full_field():
    m = PiecewiseSection.constant([1, 0])
    w = essential_witness(m, SubspaceField.full(2))
    assert w.verified
    assert not w.ma.is_zero()


def test_essential_witness_avoids_point_defect():
    field = field_with_regions(1, (SymbolicSubset.point(F(1, 2)), zero_basis(1)))
    m = PiecewiseSection.constant([1])
    w = essential_witness(m, field)
    assert w.verified
    lo, hi = w.support
    assert not (lo <= F(1, 2) <= hi)
    assert residual_set(w.ma, field).is_empty()


def test_essential_witness_support_follows_the_section_support():
    # m vanishes on [0, 1/2]; the defect lives in (0, 1/4); a must sit in (1/2, 1)
    rise = GaussianPoly(
        (RationalPoly.x() - RationalPoly.const(F(1, 2))) * (RationalPoly.x() - RationalPoly.const(F(1, 2))),
        RationalPoly.zero(),
    )
    m = PiecewiseSection(1, (F(0), F(1, 2), F(1)), ((GaussianPoly.zero(),), (rise,)))
    field = field_with_regions(
        1, (SymbolicSubset.interval(F(0), F(1, 4), False, False), zero_basis(1))
    )
    w = essential_witness(m, field)
    assert w.verified
    lo, hi = w.support
    assert F(1, 2) < lo < hi < F(1)


def test_essential_witness_rejects_zero_section():
    with pytest.raises(ZeroInput):
        essential_witness(PiecewiseSection.zero(1), SubspaceField.full(1))


def test_essential_witness_precondition():
    field = field_with_regions(
        1, (SymbolicSubset.interval(F(1, 4), F(1, 2), False, False), zero_basis(1))
    )
    with pytest.raises(PreconditionFailed):
        essential_witness(PiecewiseSection.constant([1]), field)


def test_pick_interval_requires_an_interval():
    with pytest.raises(NoRoom):
        _pick_interval(SymbolicSubset.from_points([F(1, 2)]))


# --- non-essential witness ----------------------------------------------------------

def test_non_essential_witness_interval_defect():
    field = field_with_regions(
        2, (SymbolicSubset.interval(F(3, 10), F(2, 5), False, False), mat([[0], [1]]))
    )
    m = PiecewiseSection.constant([1, 0])
    w = non_essential_witness(m, field)
    assert w.closure_equal and w.ma_nonzero and w.verified
    lo, hi = w.support
    assert F(3, 10) <= lo < hi <= F(2, 5)
    # the probes show b compressing m·a into the submodule kills it
    assert all(p.implication_holds for p in w.probes)
    assert any(not p.residual_empty for p in w.probes)


def test_non_essential_witness_polynomial_defect():
    # m = (x, 0) against L = span(e2) on (0, 1): defect dense in the support
    field = field_with_regions(2, (SymbolicSubset.interval(F(0), F(1), False, False), mat([[0], [1]])))
    m = PiecewiseSection(
        2,
        (F(0), F(1)),
        ((GaussianPoly(RationalPoly.x(), RationalPoly.zero()), GaussianPoly.zero()),),
    )
    w = non_essential_witness(m, field)
    assert w.closure_equal and w.ma_nonzero


def test_non_essential_witness_precondition_failure():
    field = field_with_regions(1, (SymbolicSubset.point(F(1, 2)), zero_basis(1)))
    with pytest.raises(PreconditionFailed):
        non_essential_witness(PiecewiseSection.constant([1]), field)


# --- inductive witness section --------------------------------------------------------

def planted_interval_spec():
    field = field_with_regions(
        2, (SymbolicSubset.interval(F(3, 10), F(2, 5), False, False), mat([[0], [1]]))
    )
    return FieldModuleSpec(
        2, (PiecewiseSection.constant([1, 0]), PiecewiseSection.constant([0, 1])), field
    )


def test_inductive_witness_base_case():
    spec = planted_interval_spec()
    w = inductive_witness_section(spec, (F(3, 10), F(2, 5)), [F(1, 3)])
    assert w.sample_defects_verified
    assert w.lambdas == (F(1, 2),)
    # m = λ1 g_{k1} a1 exactly: value at the sample is λ1·g(x1)
    val = w.m(F(1, 3))
    g_val = spec.generators[w.picks[0]](F(1, 3))
    assert all(v == g * w.lambdas[0] for v, g in zip(val, g_val))


def test_inductive_witness_shared_generator_keeps_default_lambdas():
    spec = planted_interval_spec()
    xs = [F(3, 10) + F(i, 100) for i in range(1, 9)]
    w = inductive_witness_section(spec, (F(3, 10), F(2, 5)), xs)
    assert w.sample_defects_verified
    assert w.picks == (0,) * 8
    assert w.lambdas == tuple(F(1, 2 ** j) for j in range(1, 9))


def test_inductive_witness_adversarial_lambda_adjustment():
    """A crafted instance where λ3 = 1/8 lands the partial sum exactly in the
    subspace, forcing the fallback λ3 = 1/16."""
    x1, x2, x3 = F(1, 2), F(1, 8), F(5, 32)
    field = field_with_regions(
        2,
        (SymbolicSubset.point(x1), mat([[1], [0]])),          # span(e1)
        (SymbolicSubset.point(x2), mat([[1], [1]])),          # span(e1 + e2)
        (SymbolicSubset.point(x3), mat([[1], [0]])),          # span(e1)
    )
    g1 = PiecewiseSection.constant([1, 1])
    g2 = PiecewiseSection.constant([1, F(-2, 3)])
    spec = FieldModuleSpec(2, (g1, g2), field)
    w = inductive_witness_section(spec, (F(1, 16), F(3, 4)), [x1, x2, x3])
    assert w.picks == (0, 1, 0)
    assert w.lambdas == (F(1, 2), F(1, 4), F(1, 16))
    assert w.sample_defects_verified


def test_inductive_witness_rejects_sample_outside_defect():
    spec = planted_interval_spec()
    with pytest.raises(SampleNotInDefect):
        inductive_witness_section(spec, (F(1, 10), F(2, 5)), [F(1, 10)])


def test_inductive_witness_lambda_bounds_and_membership():
    spec = planted_interval_spec()
    xs = [F(3, 10) + F(i, 50) for i in range(1, 5)]
    w = inductive_witness_section(spec, (F(3, 10), F(2, 5)), xs)
    for j, lam in enumerate(w.lambdas, start=1):
        assert F(0) < lam <= F(1, 2 ** j)
    # exact postcondition: m(x_j) outside L at every sample
    from essmod.rationals import mat_sub, mat_vec, vec_is_zero

    ident = mat_identity(2)
    for x in w.samples:
        proj = spec.subfield.projector_at(x)
        assert not vec_is_zero(mat_vec(mat_sub(ident, proj), w.m(x)))


def test_inductive_witness_defect_set_not_nowhere_dense():
    """The built section has a defect set containing the sampled region's
    closure points, so with dense sampling its closure gains interior."""
    spec = planted_interval_spec()
    decision = is_essential_field(spec)
    assert not decision.essential
    xs = [F(3, 10) + F(i, 100) for i in range(1, 9)]
    w = inductive_witness_section(spec, (F(3, 10), F(2, 5)), xs)
    y_m = residual_set(w.m, spec.subfield)
    for x in xs:
        assert y_m.contains(x)
