"""Continuous fields of Hilbert spaces over [0, 1] with constant fiber C^d,
piecewise-constant subspace assignments, and exact essentiality analysis.

The subspace field x ↦ L_x is primary data: a partition of [0, 1] into
symbolic pieces, each carrying a rational spanning matrix whose exact
orthogonal projector decides membership m(x) ∈ L_x. Everything here runs in
Gaussian-rational arithmetic; nowhere-density is a qualitative property
that floating point would ruin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    GeneratorsNotSpanning,
    NoGeneratorDefect,
    NoRoom,
    PreconditionFailed,
    SampleNotInDefect,
    ZeroInput,
)
from .polynomials import GaussianPoly, exact_zero_points
from .rationals import (
    ComplexRational,
    Matrix,
    cr,
    mat,
    mat_identity,
    mat_rank,
    mat_shape,
    mat_sub,
    mat_vec,
    orthogonal_projector,
    vec_is_zero,
)
from .sections import PiecewiseSection, bump, pointwise_inner, unit_bump
from .subsets import SymbolicSubset

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FieldPiece:
    """One constant-subspace piece: a region and a spanning matrix."""

    region: SymbolicSubset
    basis: Matrix  # d×r, columns span the subspace

    def subspace_dim(self) -> int:
        return mat_rank(self.basis) if mat_shape(self.basis)[1] else 0


@dataclass(frozen=True)
class SubspaceField:
    """Piecewise-constant assignment x ↦ L_x ⊆ C^d on an exact partition."""

    d: int
    pieces: tuple[FieldPiece, ...]

    def __post_init__(self):
        for piece in self.pieces:
            rows, _ = mat_shape(piece.basis)
            if rows != self.d and mat_shape(piece.basis)[1] != 0:
                raise DimensionMismatch("basis rows must equal the fiber dimension")
        union = SymbolicSubset.empty()
        for i, piece in enumerate(self.pieces):
            if not piece.region.intersection(union).is_empty():
                raise ValueError("partition pieces overlap")
            union = union.union(piece.region)
        if union != SymbolicSubset.full():
            raise ValueError("partition pieces do not cover [0, 1]")
        projs = tuple(
            orthogonal_projector(p.basis) if mat_shape(p.basis)[1] else _zero_proj(self.d)
            for p in self.pieces
        )
        object.__setattr__(self, "_projectors", projs)

    @classmethod
    def full(cls, d: int) -> "SubspaceField":
        return cls(d, (FieldPiece(SymbolicSubset.full(), mat_identity(d)),))

    def piece_index_at(self, x: Fraction) -> int:
        for i, piece in enumerate(self.pieces):
            if piece.region.contains(x):
                return i
        raise AssertionError("partition does not cover the point")  # unreachable

    def projector_at(self, x: Fraction) -> Matrix:
        return self._projectors[self.piece_index_at(x)]

    def projector(self, index: int) -> Matrix:
        return self._projectors[index]

    def boundary_values(self) -> list[Fraction]:
        vals = set()
        for piece in self.pieces:
            vals.update(piece.region.boundary_values())
        return sorted(vals)


def _zero_proj(d: int) -> Matrix:
    return mat([[0] * d for _ in range(d)])


# --- atoms: the common refinement of the partition and section pieces ------

@dataclass(frozen=True)
class Atom:
    """Point (lo == hi) or open interval (lo, hi) with a constant subspace."""

    lo: Fraction
    hi: Fraction
    piece_index: int

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


def field_atoms(field: SubspaceField, extra_bounds) -> list[Atom]:
    bounds = sorted({ZERO, ONE, *field.boundary_values(), *(Fraction(b) for b in extra_bounds)})
    atoms = []
    for i, b in enumerate(bounds):
        atoms.append(Atom(b, b, field.piece_index_at(b)))
        if i + 1 < len(bounds):
            mid = (b + bounds[i + 1]) / 2
            atoms.append(Atom(b, bounds[i + 1], field.piece_index_at(mid)))
    return atoms


def _residual_polys(section: PiecewiseSection, proj: Matrix, piece: tuple[GaussianPoly, ...]):
    """(I − P) applied to the polynomial vector of one section piece."""
    d = section.d
    ident = mat_identity(d)
    comp = mat_sub(ident, proj)
    out = []
    for i in range(d):
        acc = GaussianPoly.zero()
        for j in range(d):
            c = comp[i][j]
            if not c.is_zero():
                acc = acc + piece[j] * c
        out.append(acc)
    return out


def residual_set(m: PiecewiseSection, field: SubspaceField) -> SymbolicSubset:
    """Exact defect set {x : m(x) ∉ L_x}.

    On each atom of the common refinement the membership failure set is
    either empty, the whole open atom minus finitely many rational roots,
    or a single point; irrational root boundaries are rejected.
    """
    if m.d != field.d:
        raise DimensionMismatch("section and field dimensions differ")
    acc = SymbolicSubset.empty()
    for atom in field_atoms(field, m.breakpoints):
        proj = field.projector(atom.piece_index)
        if atom.is_point:
            v = m(atom.lo)
            r = mat_vec(mat_sub(mat_identity(field.d), proj), v)
            if not vec_is_zero(r):
                acc = acc.union(SymbolicSubset.point(atom.lo))
            continue
        piece = m.pieces[m.piece_index_for_interval(atom.lo)]
        resid = _residual_polys(m, proj, piece)
        if all(p.is_zero() for p in resid):
            continue
        zeros = exact_zero_points(resid, atom.lo, atom.hi)
        defect = SymbolicSubset.interval(atom.lo, atom.hi, False, False)
        if zeros:
            defect = defect.difference(SymbolicSubset.from_points(zeros))
        acc = acc.union(defect)
    return acc


@dataclass(frozen=True)
class FieldModuleSpec:
    """A finitely generated module of sections together with its subspace
    field; the generators play the role of a countable generating set."""

    d: int
    generators: tuple[PiecewiseSection, ...]
    subfield: SubspaceField
    vanish_at_boundary: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        for g in self.generators:
            if g.d != self.d:
                raise DimensionMismatch("generator of wrong fiber dimension")
            if g.is_zero():
                raise ZeroInput("generators must be nonzero")
            if self.vanish_at_boundary:
                if not vec_is_zero(g(ZERO)) or not vec_is_zero(g(ONE)):
                    raise ValueError("generators must vanish at 0 and 1")
        if self.subfield.d != self.d:
            raise DimensionMismatch("subspace field of wrong fiber dimension")


def total_defect_set(spec: FieldModuleSpec) -> SymbolicSubset:
    """Union of the generator defect sets: the set where the generators
    witness L_x ≠ H_x."""
    acc = SymbolicSubset.empty()
    for g in spec.generators:
        acc = acc.union(residual_set(g, spec.subfield))
    return acc


@dataclass(frozen=True)
class SpanningProbe:
    x: Fraction
    rank: int
    full: bool


def check_generator_spanning(spec: FieldModuleSpec, defect: SymbolicSubset) -> list[SpanningProbe]:
    """Verify that the generator values span the full fiber C^d at rational
    probe points outside the defect set; raises GeneratorsNotSpanning.

    This validates taking the subspace field as primary data: off the defect
    set the fibers of the generated module must equal the full fiber.
    """
    extra = []
    for g in spec.generators:
        extra.extend(g.breakpoints)
    probes: list[Fraction] = []
    for atom in field_atoms(spec.subfield, extra):
        if atom.is_point:
            if not defect.contains(atom.lo):
                probes.append(atom.lo)
            continue
        for j in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)):
            x = atom.lo + (atom.hi - atom.lo) * j
            if not defect.contains(x):
                probes.append(x)
                break
    results = []
    for x in probes:
        cols = [list(g(x)) for g in spec.generators]
        matx = tuple(tuple(cols[k][i] for k in range(len(cols))) for i in range(spec.d))
        rank = mat_rank(matx)
        results.append(SpanningProbe(x=x, rank=rank, full=rank == spec.d))
    bad = [p for p in results if not p.full]
    if bad:
        raise GeneratorsNotSpanning(
            f"generators span a proper subspace at x = {bad[0].x} (rank {bad[0].rank} < {spec.d})"
        )
    return results


@dataclass(frozen=True)
class FieldDecision:
    essential: bool
    defect_set: SymbolicSubset
    probes: tuple[SpanningProbe, ...]


def is_essential_field(spec: FieldModuleSpec) -> FieldDecision:
    """The geometric criterion: the submodule of sections through L is
    essential iff the total defect set is nowhere dense."""
    defect = total_defect_set(spec)
    probes = check_generator_spanning(spec, defect)
    return FieldDecision(
        essential=defect.is_nowhere_dense(), defect_set=defect, probes=tuple(probes)
    )


def _pick_interval(s: SymbolicSubset) -> tuple[Fraction, Fraction]:
    """Largest interval component, shrunk so its closure sits strictly inside."""
    best = None
    for iv in s.intervals:
        if best is None or iv.hi - iv.lo > best.hi - best.lo:
            best = iv
    if best is None:
        raise NoRoom("the set contains no interval of positive length")
    quarter = (best.hi - best.lo) / 4
    return best.lo + quarter, best.hi - quarter


@dataclass(frozen=True)
class EssentialWitness:
    """A scalar function a with supp a ⊆ Z_m \\ closure(Y_m): then m·a lands
    in the submodule and stays nonzero."""

    a: PiecewiseSection
    ma: PiecewiseSection
    support: tuple[Fraction, Fraction]
    residual_empty: bool
    ma_nonzero: bool

    @property
    def verified(self) -> bool:
        return self.residual_empty and self.ma_nonzero


def essential_witness(m: PiecewiseSection, field: SubspaceField) -> EssentialWitness:
    if m.is_zero():
        raise ZeroInput("witness requires m ≠ 0")
    defect = residual_set(m, field)
    if not defect.is_nowhere_dense():
        raise PreconditionFailed("the defect set of m is not nowhere dense")
    support = m.support_set()
    room = support.difference(defect.closure())
    alpha, beta = _pick_interval(room)  # NoRoom if empty of intervals
    a = bump(alpha, beta)
    ma = m.mul_scalar_section(a)
    return EssentialWitness(
        a=a,
        ma=ma,
        support=(alpha, beta),
        residual_empty=residual_set(ma, field).is_empty(),
        ma_nonzero=not ma.is_zero(),
    )


@dataclass(frozen=True)
class ProbeReport:
    interval: tuple[Fraction, Fraction]
    residual_empty: bool
    product_zero: bool

    @property
    def implication_holds(self) -> bool:
        return (not self.residual_empty) or self.product_zero


@dataclass(frozen=True)
class NonEssentialWitness:
    """m·a with support inside the interior of closure(Y_m): its support
    closure equals its defect closure, so no right multiple enters the
    submodule without dying."""

    a: PiecewiseSection
    ma: PiecewiseSection
    support: tuple[Fraction, Fraction]
    closure_equal: bool
    ma_nonzero: bool
    probes: tuple[ProbeReport, ...]

    @property
    def verified(self) -> bool:
        return self.closure_equal and self.ma_nonzero and all(
            p.implication_holds for p in self.probes
        )


def non_essential_witness(m: PiecewiseSection, field: SubspaceField) -> NonEssentialWitness:
    defect = residual_set(m, field)
    v = defect.closure().interior()
    if v.is_empty():
        raise PreconditionFailed("interior of closure(Y_m) is empty")
    alpha, beta = _pick_interval(v)
    a = bump(alpha, beta)
    ma = m.mul_scalar_section(a)
    z_ma = ma.support_set()
    y_ma = residual_set(ma, field)
    closure_equal = z_ma.closure() == y_ma.closure()
    probes = []
    for iv in z_ma.intervals[:4]:
        quarter = (iv.hi - iv.lo) / 4
        u, w = iv.lo + quarter, iv.hi - quarter
        b = bump(u, w)
        mab = ma.mul_scalar_section(b)
        probes.append(
            ProbeReport(
                interval=(u, w),
                residual_empty=residual_set(mab, field).is_empty(),
                product_zero=mab.is_zero(),
            )
        )
    return NonEssentialWitness(
        a=a,
        ma=ma,
        support=(alpha, beta),
        closure_equal=closure_equal,
        ma_nonzero=not ma.is_zero(),
        probes=tuple(probes),
    )


@dataclass(frozen=True)
class InductiveWitness:
    """Finite truncation of the inductive series Σ λ_j g_{k_j} a_j built to
    leave the subspace at every sample point."""

    m: PiecewiseSection
    lambdas: tuple[Fraction, ...]
    picks: tuple[int, ...]
    samples: tuple[Fraction, ...]
    sample_defects_verified: bool


def inductive_witness_section(
    spec: FieldModuleSpec, interval: tuple[Fraction, Fraction], samples
) -> InductiveWitness:
    """Build m = Σ_{j≤J} λ_j g_{k_j} a_j with m(x_j) ∉ L_{x_j} for all j.

    Each a_j peaks at 1 on its sample and vanishes at all earlier samples;
    λ_j = 2^{-j} unless that unique value drops the partial sum into the
    subspace, in which case 2^{-j-1} is taken (at most one λ can fail since
    g_{k_j}(x_j) leaves the subspace).
    """
    xs = [Fraction(x) for x in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be distinct")
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    defect = total_defect_set(spec)
    field = spec.subfield
    for x in xs:
        if not (ZERO < x < ONE):
            raise ValueError("samples must lie strictly inside (0, 1)")
        if not (lo <= x <= hi):
            raise ValueError(f"sample {x} outside the given interval")
        if not defect.contains(x):
            raise SampleNotInDefect(f"sample {x} is not in the defect set")

    d = spec.d
    ident = mat_identity(d)
    lambdas: list[Fraction] = []
    picks: list[int] = []
    bumps: list[PiecewiseSection] = []
    for j, x in enumerate(xs, start=1):
        proj = field.projector_at(x)
        k_j = None
        for k, g in enumerate(spec.generators):
            r = mat_vec(mat_sub(ident, proj), g(x))
            if not vec_is_zero(r):
                k_j = k
                break
        if k_j is None:
            raise NoGeneratorDefect(
                f"no generator leaves the subspace at sample {x}; "
                "the defect set is inconsistent with the generators"
            )
        dists = [abs(x - other) for other in xs[: j - 1]]
        dists.extend([x, ONE - x])
        radius = min(dists) / 2
        a_j = unit_bump(x, radius)
        # exact partial sum at x over the earlier terms
        s = [ComplexRational(Fraction(0)) for _ in range(d)]
        for lam, k_i, a_i in zip(lambdas, picks, bumps):
            weight = a_i(x)[0] * cr(lam)
            g_val = spec.generators[k_i](x)
            s = [acc + g_val[i] * weight for i, acc in enumerate(s)]
        lam = Fraction(1, 2 ** j)
        g_val = spec.generators[k_j](x)
        trial = [s[i] + g_val[i] * cr(lam) for i in range(d)]
        if vec_is_zero(mat_vec(mat_sub(ident, proj), tuple(trial))):
            lam = Fraction(1, 2 ** (j + 1))
        lambdas.append(lam)
        picks.append(k_j)
        bumps.append(a_j)

    total = PiecewiseSection.zero(d)
    for lam, k_i, a_i in zip(lambdas, picks, bumps):
        term = spec.generators[k_i].mul_scalar_section(a_i).scale(cr(lam))
        total = total + term

    verified = True
    for x in xs:
        proj = field.projector_at(x)
        r = mat_vec(mat_sub(ident, proj), total(x))
        if vec_is_zero(r):
            verified = False
    return InductiveWitness(
        m=total,
        lambdas=tuple(lambdas),
        picks=tuple(picks),
        samples=tuple(xs),
        sample_defects_verified=verified,
    )


def commutative_limit_identity(m: PiecewiseSection, n: PiecewiseSection) -> bool:
    """Exact check of m·⟨n,n⟩ = n·⟨n,m⟩ for sections over the commutative
    scalars; holds whenever n lies in the closed submodule generated by m."""
    if m.d != n.d:
        raise DimensionMismatch("sections of different fiber dimension")
    lhs = m.mul_scalar_section(pointwise_inner(n, n))
    rhs = n.mul_scalar_section(pointwise_inner(n, m))
    return lhs.equals(rhs)
