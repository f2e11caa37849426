"""Piecewise-polynomial continuous sections [0, 1] → C^d over Gaussian
rationals: exact evaluation, exact algebra, exact zero sets."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch
from .polynomials import GaussianPoly, RationalPoly, exact_zero_points
from .rationals import ComplexRational, cr
from .subsets import SymbolicSubset

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PiecewiseSection:
    """Continuous map [0,1] → C^d, polynomial on each breakpoint interval."""

    d: int
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[GaussianPoly, ...], ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        pieces = tuple(tuple(row) for row in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if len(pieces) != len(bps) - 1:
            raise ValueError("need one piece per breakpoint interval")
        for piece in pieces:
            if len(piece) != self.d:
                raise DimensionMismatch("piece has wrong fiber dimension")
        for i in range(1, len(bps) - 1):
            t = bps[i]
            left, right = self.pieces[i - 1], self.pieces[i]
            for pl, pr in zip(left, right):
                if pl(t) != pr(t):
                    raise ValueError(f"discontinuity at breakpoint {t}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, values) -> "PiecewiseSection":
        vals = [v if isinstance(v, ComplexRational) else cr(v) for v in values]
        piece = tuple(GaussianPoly.const(v) for v in vals)
        return cls(len(vals), (ZERO, ONE), (piece,))

    @classmethod
    def zero(cls, d: int) -> "PiecewiseSection":
        return cls(d, (ZERO, ONE), (tuple(GaussianPoly.zero() for _ in range(d)),))

    @classmethod
    def scalar_poly(cls, poly: GaussianPoly) -> "PiecewiseSection":
        return cls(1, (ZERO, ONE), ((poly,),))

    # -- evaluation ----------------------------------------------------------

    def piece_index(self, x: Fraction) -> int:
        x = Fraction(x)
        if not ZERO <= x <= ONE:
            raise ValueError(f"evaluation point {x} outside [0, 1]")
        i = bisect_right(self.breakpoints, x) - 1
        return min(i, len(self.pieces) - 1)

    def __call__(self, x) -> tuple[ComplexRational, ...]:
        x = Fraction(x)
        piece = self.pieces[self.piece_index(x)]
        return tuple(p(x) for p in piece)

    # -- algebra (everything goes through a common refinement) ---------------

    def refine(self, extra_breakpoints) -> "PiecewiseSection":
        bps = sorted({*self.breakpoints, *(Fraction(b) for b in extra_breakpoints)})
        if any(b < ZERO or b > ONE for b in bps):
            raise ValueError("refinement breakpoints outside [0, 1]")
        pieces = []
        for lo in bps[:-1]:
            pieces.append(self.pieces[self.piece_index_for_interval(lo)])
        return PiecewiseSection(self.d, tuple(bps), tuple(pieces))

    def piece_index_for_interval(self, lo: Fraction) -> int:
        i = bisect_right(self.breakpoints, lo) - 1
        return min(i, len(self.pieces) - 1)

    def _aligned(self, other: "PiecewiseSection"):
        a = self.refine(other.breakpoints)
        b = other.refine(self.breakpoints)
        return a, b

    def __add__(self, other: "PiecewiseSection") -> "PiecewiseSection":
        if other.d != self.d:
            raise DimensionMismatch("section dimensions differ")
        a, b = self._aligned(other)
        pieces = tuple(
            tuple(pa + pb for pa, pb in zip(ra, rb)) for ra, rb in zip(a.pieces, b.pieces)
        )
        return PiecewiseSection(self.d, a.breakpoints, pieces)

    def __sub__(self, other: "PiecewiseSection") -> "PiecewiseSection":
        return self + (-other)

    def __neg__(self) -> "PiecewiseSection":
        return PiecewiseSection(
            self.d, self.breakpoints, tuple(tuple(-p for p in row) for row in self.pieces)
        )

    def scale(self, c) -> "PiecewiseSection":
        c = c if isinstance(c, ComplexRational) else cr(c)
        return PiecewiseSection(
            self.d, self.breakpoints, tuple(tuple(p * c for p in row) for row in self.pieces)
        )

    def mul_scalar_section(self, s: "PiecewiseSection") -> "PiecewiseSection":
        """Pointwise product with a scalar (d = 1) section."""
        if s.d != 1:
            raise DimensionMismatch("scalar section must have d = 1")
        a = self.refine(s.breakpoints)
        b = s.refine(self.breakpoints)
        pieces = tuple(
            tuple(p * rb[0] for p in ra) for ra, rb in zip(a.pieces, b.pieces)
        )
        return PiecewiseSection(self.d, a.breakpoints, pieces)

    def conj(self) -> "PiecewiseSection":
        return PiecewiseSection(
            self.d, self.breakpoints, tuple(tuple(p.conj() for p in row) for row in self.pieces)
        )

    def coordinate(self, i: int) -> "PiecewiseSection":
        return PiecewiseSection(1, self.breakpoints, tuple((row[i],) for row in self.pieces))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.pieces for p in row)

    def equals(self, other: "PiecewiseSection") -> bool:
        if self.d != other.d:
            return False
        a, b = self._aligned(other)
        return a.pieces == b.pieces

    # -- exact sets -----------------------------------------------------------

    def zero_set(self) -> SymbolicSubset:
        """{x : all coordinates vanish}, exactly (may raise IrrationalRoot)."""
        acc = SymbolicSubset.empty()
        for i in range(len(self.pieces)):
            lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
            zeros = exact_zero_points(self.pieces[i], lo, hi)
            if zeros is None:
                acc = acc.union(SymbolicSubset.interval(lo, hi, True, True))
            elif zeros:
                acc = acc.union(SymbolicSubset.from_points(zeros))
        return acc

    def support_set(self) -> SymbolicSubset:
        """{x : section(x) ≠ 0}, the complement of the exact zero set."""
        return self.zero_set().complement()

    # -- norms ---------------------------------------------------------------

    def sup_norm_upper_bound(self) -> Fraction:
        """Rational upper bound on sup_x ‖section(x)‖ via coefficient sums."""
        best = Fraction(0)
        for row in self.pieces:
            bound = sum((p.abs_coeff_bound() for p in row), Fraction(0))
            best = max(best, bound)
        return best

    def exact_sup_norm(self) -> Fraction:
        """Exact sup of |value| for real scalar sections of piece degree ≤ 2.

        Candidate extrema of a quadratic on an interval are its endpoints and
        vertex, all rational here; higher degrees or complex values have no
        rational sup in general and raise ValueError.
        """
        if self.d != 1:
            raise ValueError("exact sup norm only for scalar sections")
        best = Fraction(0)
        for i, row in enumerate(self.pieces):
            p = row[0]
            if not p.is_real():
                raise ValueError("exact sup norm needs real coefficients")
            q = p.re
            if q.degree > 2:
                raise ValueError("exact sup norm needs degree ≤ 2 pieces")
            lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
            candidates = [lo, hi]
            if q.degree == 2:
                vertex = -q.coeffs[1] / (2 * q.coeffs[2])
                if lo < vertex < hi:
                    candidates.append(vertex)
            for x in candidates:
                best = max(best, abs(q(x)))
        return best


def pointwise_inner(u: PiecewiseSection, v: PiecewiseSection) -> PiecewiseSection:
    """⟨u, v⟩(x) = Σ_i conj(u_i(x)) v_i(x) as an exact scalar section."""
    if u.d != v.d:
        raise DimensionMismatch("sections of different fiber dimension")
    a, b = u._aligned(v)
    pieces = []
    for ra, rb in zip(a.pieces, b.pieces):
        acc = GaussianPoly.zero()
        for pa, pb in zip(ra, rb):
            acc = acc + pa.conj() * pb
        pieces.append((acc,))
    return PiecewiseSection(1, a.breakpoints, tuple(pieces))


def bump(lo, hi) -> PiecewiseSection:
    """The quadratic bump (x − lo)(hi − x) on (lo, hi), zero elsewhere."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not ZERO <= lo < hi <= ONE:
        raise ValueError("bump needs 0 ≤ lo < hi ≤ 1")
    x = RationalPoly.x()
    poly = GaussianPoly(
        (x - RationalPoly.const(lo)) * (RationalPoly.const(hi) - x), RationalPoly.zero()
    )
    zero = GaussianPoly.zero()
    bps = sorted({ZERO, lo, hi, ONE})
    pieces = []
    for a, b in zip(bps[:-1], bps[1:]):
        pieces.append((poly,) if (a >= lo and b <= hi) else (zero,))
    return PiecewiseSection(1, tuple(bps), tuple(pieces))


def unit_bump(center, radius) -> PiecewiseSection:
    """Bump with peak value exactly 1 at its center, support radius wide on
    each side, clipped inside (0, 1): ((x−a)(b−x)) / radius²."""
    center, radius = Fraction(center), Fraction(radius)
    lo, hi = center - radius, center + radius
    if not ZERO <= lo < hi <= ONE:
        raise ValueError("bump support leaves [0, 1]")
    section = bump(lo, hi)
    return section.scale(cr(Fraction(1) / (radius * radius)))
