from fractions import Fraction as F

import pytest

from essmod import serialize
from essmod.algebra import AlgebraElement, AlgebraShape, ideal_from_projection
from essmod.errors import SchemaError
from essmod.fields import FieldModuleSpec, FieldPiece, SubspaceField
from essmod.generate import SplitMix64, rand_algebra_element, rand_module_element
from essmod.modules import CompactOperator, Submodule, module_basis
from essmod.rationals import cr, mat, mat_identity
from essmod.sections import PiecewiseSection, bump
from essmod.subsets import SymbolicSubset

MIXED = AlgebraShape((1, 2))


def test_fraction_roundtrip():
    assert serialize.frac_from_json(serialize.frac_to_json(F(-3, 7))) == F(-3, 7)
    assert serialize.frac_to_json(F(2)) == "2/1"
    with pytest.raises(SchemaError):
        serialize.frac_from_json("1/0")
    with pytest.raises(SchemaError):
        serialize.frac_from_json(1.5)


def test_algebra_element_roundtrip():
    rng = SplitMix64(71)
    a = rand_algebra_element(rng, MIXED)
    doc = serialize.element_to_json(a)
    back = serialize.element_from_json(doc)
    assert back.distance(a) == 0.0
    # blocks serialize as nested [re, im] pairs
    assert isinstance(doc["blocks"][0][0][0], list) and len(doc["blocks"][0][0][0]) == 2


def test_element_block_shape_mismatch_rejected():
    doc = serialize.element_to_json(AlgebraElement.identity(MIXED))
    doc["blocks"][1] = [[[1.0, 0.0]]]  # wrong size for a 2x2 block
    with pytest.raises(SchemaError):
        serialize.element_from_json(doc)


def test_right_ideal_roundtrip():
    ideal = ideal_from_projection(AlgebraElement.identity(MIXED))
    back = serialize.ideal_from_json(serialize.ideal_to_json(ideal))
    assert back.support_projection.distance(ideal.support_projection) == 0.0
    bad = serialize.ideal_to_json(ideal)
    bad["support_projection"]["blocks"][0][0][0] = [0.5, 0.0]
    with pytest.raises(SchemaError):
        serialize.ideal_from_json(bad)


def test_module_element_and_submodule_roundtrip():
    rng = SplitMix64(72)
    x = rand_module_element(rng, MIXED, 3)
    back = serialize.module_element_from_json(serialize.module_element_to_json(x))
    assert (back - x).norm() == 0.0
    n = Submodule(MIXED, 2, tuple(module_basis(MIXED, 2)))
    back_n = serialize.submodule_from_json(serialize.submodule_to_json(n))
    assert back_n.same_span(n)


def test_compact_operator_roundtrip():
    rng = SplitMix64(73)
    t = CompactOperator(
        MIXED,
        tuple(tuple(rand_algebra_element(rng, MIXED) for _ in range(2)) for _ in range(2)),
    )
    back = serialize.compact_operator_from_json(serialize.compact_operator_to_json(t))
    assert (back - t).norm() == 0.0


def test_subset_roundtrip():
    s = SymbolicSubset.interval(F(1, 3), F(2, 3), False, True) | SymbolicSubset.point(F(1, 8))
    assert serialize.subset_from_json(serialize.subset_to_json(s)) == s


def test_section_roundtrip_exact():
    a = bump(F(1, 4), F(3, 4)).scale(cr(F(2, 3), F(1, 7)))
    back = serialize.section_from_json(serialize.section_to_json(a))
    assert back.equals(a)


def test_section_discontinuity_rejected():
    doc = {
        "d": 1,
        "breakpoints": ["0/1", "1/2", "1/1"],
        "pieces": [[[["0/1", "0/1"]]], [[["1/1", "0/1"]]]],
    }
    with pytest.raises(SchemaError, match="discontinuity"):
        serialize.section_from_json(doc)


def test_field_spec_roundtrip():
    field = SubspaceField(
        2,
        (
            FieldPiece(SymbolicSubset.interval(F(0), F(1, 2), True, True), mat([[1], [1]])),
            FieldPiece(SymbolicSubset.interval(F(1, 2), F(1), False, True), mat_identity(2)),
        ),
    )
    spec = FieldModuleSpec(
        2,
        (PiecewiseSection.constant([1, 0]), PiecewiseSection.constant([0, 1])),
        field,
    )
    doc = serialize.field_spec_to_json(spec)
    back = serialize.field_spec_from_json(doc)
    assert back.d == 2 and len(back.subfield.pieces) == 2
    assert back.subfield.pieces[0].region == field.pieces[0].region
    assert back.generators[0].equals(spec.generators[0])


def test_field_spec_partition_errors_surface_as_schema_errors():
    doc = {
        "d": 1,
        "partition": [serialize.subset_to_json(SymbolicSubset.interval(F(0), F(1, 2)))],
        "subspace_bases": [[[["1/1", "0/1"]]]],
        "generators": [serialize.section_to_json(PiecewiseSection.constant([1]))],
    }
    with pytest.raises(SchemaError, match="cover"):
        serialize.field_spec_from_json(doc)


def test_instance_validation():
    doc = serialize.instance_to_json("right_ideal", {"support_projection": {}}, 7)
    kind, payload = serialize.validate_instance(doc)
    assert kind == "right_ideal" and "support_projection" in payload
    with pytest.raises(SchemaError, match="schema"):
        serialize.validate_instance({"schema": "essmod/999", "kind": "field", "payload": {}})
    with pytest.raises(SchemaError, match="kind"):
        serialize.validate_instance({"schema": "essmod/1", "kind": "nope", "payload": {}})
    with pytest.raises(SchemaError, match="payload"):
        serialize.validate_instance({"schema": "essmod/1", "kind": "field"})
    with pytest.raises(SchemaError, match="seed"):
        serialize.validate_instance(
            {"schema": "essmod/1", "kind": "field", "payload": {}, "seed": -3}
        )


def test_canonical_json_and_digest_are_stable():
    doc = {"b": [1, 2], "a": {"y": 1, "x": 2}}
    s1 = serialize.canonical_json(doc)
    s2 = serialize.canonical_json({"a": {"x": 2, "y": 1}, "b": [1, 2]})
    assert s1 == s2
    assert serialize.digest(doc) == serialize.digest({"b": [1, 2], "a": {"y": 1, "x": 2}})
