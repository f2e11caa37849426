"""JSON (de)serialization for every public value type, plus instance and
report envelopes.

Conventions: floating scalars are [re, im] pairs; exact scalars are
rational strings "p/q"; exact complex scalars are ["p/q", "p/q"] pairs.
Instance documents carry schema "essmod/1" and one of the kinds
right_ideal / module_submodule / field.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, AlgebraShape, RightIdeal
from .errors import SchemaError
from .fields import FieldModuleSpec, FieldPiece, SubspaceField
from .modules import CompactOperator, ModuleElement, Submodule
from .polynomials import GaussianPoly
from .rationals import ComplexRational, Matrix, mat_shape
from .sections import PiecewiseSection
from .subsets import Interval, SymbolicSubset

SCHEMA = "essmod/1"
KINDS = ("right_ideal", "module_submodule", "field")


# --- scalars ----------------------------------------------------------------

def frac_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frac_from_json(s) -> Fraction:
    if not isinstance(s, str):
        raise SchemaError(f"expected rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}: {exc}") from exc


def crat_to_json(z: ComplexRational) -> list:
    return [frac_to_json(z.re), frac_to_json(z.im)]


def crat_from_json(v) -> ComplexRational:
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError(f"expected [re, im] rational pair, got {v!r}")
    return ComplexRational(frac_from_json(v[0]), frac_from_json(v[1]))


def complex_to_json(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def complex_from_json(v) -> complex:
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError(f"expected [re, im] pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


# --- float-layer types -------------------------------------------------------

def shape_to_json(shape: AlgebraShape) -> dict:
    return {"block_dims": list(shape.block_dims)}


def shape_from_json(doc) -> AlgebraShape:
    if not isinstance(doc, dict) or "block_dims" not in doc:
        raise SchemaError("shape must be {block_dims: [...]}")
    dims = doc["block_dims"]
    if not isinstance(dims, list) or not dims or any(
        not isinstance(n, int) or n < 1 for n in dims
    ):
        raise SchemaError("block_dims must be a nonempty list of positive ints")
    return AlgebraShape(tuple(dims))


def element_to_json(a: AlgebraElement) -> dict:
    return {
        "shape": shape_to_json(a.shape),
        "blocks": [
            [[complex_to_json(z) for z in row] for row in blk.tolist()] for blk in a.blocks
        ],
    }


def element_from_json(doc) -> AlgebraElement:
    if not isinstance(doc, dict) or "shape" not in doc or "blocks" not in doc:
        raise SchemaError("algebra element must have shape and blocks")
    shape = shape_from_json(doc["shape"])
    blocks = []
    if len(doc["blocks"]) != shape.num_blocks:
        raise SchemaError("block count does not match shape")
    for n, blk in zip(shape.block_dims, doc["blocks"]):
        try:
            m = np.array(
                [[complex_from_json(z) for z in row] for row in blk], dtype=np.complex128
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad block data: {exc}") from exc
        if m.shape != (n, n):
            raise SchemaError(f"block of shape {m.shape}, expected ({n}, {n})")
        blocks.append(m)
    return AlgebraElement(shape, tuple(blocks))


def ideal_to_json(J: RightIdeal) -> dict:
    return {
        "shape": shape_to_json(J.shape),
        "support_projection": element_to_json(J.support_projection),
    }


def ideal_from_json(doc) -> RightIdeal:
    if not isinstance(doc, dict) or "support_projection" not in doc:
        raise SchemaError("right ideal must have a support_projection")
    p = element_from_json(doc["support_projection"])
    from .algebra import ideal_from_projection

    try:
        return ideal_from_projection(p)
    except Exception as exc:
        raise SchemaError(f"support_projection is not a projection: {exc}") from exc


def module_element_to_json(x: ModuleElement) -> dict:
    return {
        "shape": shape_to_json(x.shape),
        "k": x.k,
        "coords": [element_to_json(c) for c in x.coords],
    }


def module_element_from_json(doc) -> ModuleElement:
    if not isinstance(doc, dict) or "coords" not in doc:
        raise SchemaError("module element must have coords")
    coords = tuple(element_from_json(c) for c in doc["coords"])
    if not coords:
        raise SchemaError("module element needs k >= 1 coordinates")
    if "k" in doc and doc["k"] != len(coords):
        raise SchemaError("k does not match the number of coordinates")
    return ModuleElement(coords[0].shape, coords)


def compact_operator_to_json(t: CompactOperator) -> dict:
    return {
        "shape": shape_to_json(t.shape),
        "k": t.k,
        "matrix": [[element_to_json(e) for e in row] for row in t.matrix],
    }


def compact_operator_from_json(doc) -> CompactOperator:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise SchemaError("compact operator must have a matrix")
    rows = tuple(tuple(element_from_json(e) for e in row) for row in doc["matrix"])
    if not rows:
        raise SchemaError("operator matrix is empty")
    return CompactOperator(rows[0][0].shape, rows)


def submodule_to_json(n: Submodule) -> dict:
    return {
        "shape": shape_to_json(n.shape),
        "k": n.k,
        "generators": [module_element_to_json(g) for g in n.generators],
    }


def submodule_from_json(doc) -> Submodule:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise SchemaError("submodule must have generators")
    shape = shape_from_json(doc.get("shape", {}))
    k = doc.get("k")
    gens = tuple(module_element_from_json(g) for g in doc["generators"])
    if not isinstance(k, int) or k < 1:
        raise SchemaError("submodule needs a positive integer k")
    for g in gens:
        if g.k != k or g.shape != shape:
            raise SchemaError("generator shape or rank mismatch")
    return Submodule(shape, k, gens)


# --- exact-layer types --------------------------------------------------------

def subset_to_json(s: SymbolicSubset) -> dict:
    return {
        "points": [frac_to_json(p) for p in s.points],
        "intervals": [
            {
                "lo": frac_to_json(iv.lo),
                "hi": frac_to_json(iv.hi),
                "lo_closed": iv.lo_closed,
                "hi_closed": iv.hi_closed,
            }
            for iv in s.intervals
        ],
    }


def subset_from_json(doc) -> SymbolicSubset:
    if not isinstance(doc, dict):
        raise SchemaError("subset must be an object")
    pts = [frac_from_json(p) for p in doc.get("points", [])]
    ivs = []
    for iv in doc.get("intervals", []):
        try:
            ivs.append(
                Interval(
                    frac_from_json(iv["lo"]),
                    frac_from_json(iv["hi"]),
                    bool(iv["lo_closed"]),
                    bool(iv["hi_closed"]),
                )
            )
        except KeyError as exc:
            raise SchemaError(f"interval missing field {exc}") from exc
    return SymbolicSubset(points=tuple(pts), intervals=tuple(ivs))


def _poly_to_json(p: GaussianPoly) -> list:
    return [crat_to_json(c) for c in p.coeff_list()]


def _poly_from_json(doc) -> GaussianPoly:
    if not isinstance(doc, list):
        raise SchemaError("polynomial must be a coefficient list")
    return GaussianPoly.from_coeffs([crat_from_json(c) for c in doc])


def section_to_json(m: PiecewiseSection) -> dict:
    return {
        "d": m.d,
        "breakpoints": [frac_to_json(b) for b in m.breakpoints],
        "pieces": [[_poly_to_json(p) for p in row] for row in m.pieces],
    }


def section_from_json(doc) -> PiecewiseSection:
    if not isinstance(doc, dict) or "breakpoints" not in doc or "pieces" not in doc:
        raise SchemaError("section must have breakpoints and pieces")
    d = doc.get("d")
    if not isinstance(d, int) or d < 1:
        raise SchemaError("section needs a positive fiber dimension d")
    bps = tuple(frac_from_json(b) for b in doc["breakpoints"])
    pieces = tuple(tuple(_poly_from_json(p) for p in row) for row in doc["pieces"])
    try:
        return PiecewiseSection(d, bps, pieces)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _basis_to_json(basis: Matrix) -> list:
    rows, cols = mat_shape(basis)
    return [[crat_to_json(basis[i][j]) for i in range(rows)] for j in range(cols)]


def _basis_from_json(doc, d: int) -> Matrix:
    if not isinstance(doc, list):
        raise SchemaError("basis must be a list of columns")
    cols = [[crat_from_json(e) for e in col] for col in doc]
    for col in cols:
        if len(col) != d:
            raise SchemaError(f"basis column of length {len(col)}, expected {d}")
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(d))


def field_spec_to_json(spec: FieldModuleSpec) -> dict:
    return {
        "d": spec.d,
        "partition": [subset_to_json(p.region) for p in spec.subfield.pieces],
        "subspace_bases": [_basis_to_json(p.basis) for p in spec.subfield.pieces],
        "generators": [section_to_json(g) for g in spec.generators],
        "vanish_at_boundary": spec.vanish_at_boundary,
    }


def field_spec_from_json(doc) -> FieldModuleSpec:
    if not isinstance(doc, dict):
        raise SchemaError("field spec must be an object")
    for key in ("d", "partition", "subspace_bases", "generators"):
        if key not in doc:
            raise SchemaError(f"field spec missing {key!r}")
    d = doc["d"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError("field spec needs a positive fiber dimension d")
    regions = [subset_from_json(p) for p in doc["partition"]]
    bases = doc["subspace_bases"]
    if len(bases) != len(regions):
        raise SchemaError("partition and subspace_bases lengths differ")
    pieces = tuple(
        FieldPiece(region, _basis_from_json(basis, d))
        for region, basis in zip(regions, bases)
    )
    try:
        field = SubspaceField(d, pieces)
        return FieldModuleSpec(
            d,
            tuple(section_from_json(g) for g in doc["generators"]),
            field,
            bool(doc.get("vanish_at_boundary", False)),
        )
    except (ValueError, SchemaError) as exc:
        raise SchemaError(str(exc)) from exc


# --- instance envelope ---------------------------------------------------------

def instance_to_json(kind: str, payload: dict, seed: int | None) -> dict:
    doc = {"schema": SCHEMA, "kind": kind, "payload": payload}
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


def validate_instance(doc) -> tuple[str, dict]:
    """Structural validation of an instance document; returns (kind, payload)."""
    if not isinstance(doc, dict):
        raise SchemaError("instance must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}, expected one of {KINDS}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise SchemaError("instance payload must be an object")
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or seed < 0):
        raise SchemaError("seed must be a nonnegative integer")
    return kind, payload


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def digest(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def dumps(doc, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return canonical_json(doc) + "\n"
