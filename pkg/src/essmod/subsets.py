"""Exact finite unions of rational points and intervals inside [0, 1].

Every subset is kept in a normalized form: disjoint sorted intervals that
cannot be merged or extended, and isolated points lying in no interval.
All operations (union, intersection, complement, closure, interior) are
exact and are computed by a boundary sweep: collecting every endpoint
involved, deciding membership on each elementary region, and rebuilding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import OutOfRange

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    def contains(self, x: Fraction) -> bool:
        if self.lo < x < self.hi:
            return True
        if x == self.lo and self.lo_closed:
            return True
        if x == self.hi and self.hi_closed:
            return True
        return False

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo}, {self.hi}{rb}"


@dataclass(frozen=True)
class SymbolicSubset:
    """Normalized finite union of rational points and intervals in [0, 1]."""

    points: tuple[Fraction, ...] = ()
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        pts, ivs = _normalize(self.points, self.intervals)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "intervals", ivs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls) -> "SymbolicSubset":
        return cls()

    @classmethod
    def full(cls) -> "SymbolicSubset":
        return cls(intervals=(Interval(ZERO, ONE, True, True),))

    @classmethod
    def from_points(cls, xs: Iterable) -> "SymbolicSubset":
        return cls(points=tuple(Fraction(x) for x in xs))

    @classmethod
    def point(cls, x) -> "SymbolicSubset":
        return cls(points=(Fraction(x),))

    @classmethod
    def interval(cls, lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> "SymbolicSubset":
        return cls(intervals=(Interval(Fraction(lo), Fraction(hi), lo_closed, hi_closed),))

    # -- queries -----------------------------------------------------------

    def contains(self, x) -> bool:
        x = Fraction(x)
        return x in self.points or any(iv.contains(x) for iv in self.intervals)

    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    def has_interval(self) -> bool:
        """True iff the set contains an interval of positive length."""
        return bool(self.intervals)

    def boundary_values(self) -> list[Fraction]:
        vals = set(self.points)
        for iv in self.intervals:
            vals.add(iv.lo)
            vals.add(iv.hi)
        return sorted(vals)

    # -- set algebra ---------------------------------------------------------

    def union(self, other: "SymbolicSubset") -> "SymbolicSubset":
        return _rebuild(
            _bounds([self, other]), lambda x: self.contains(x) or other.contains(x)
        )

    def intersection(self, other: "SymbolicSubset") -> "SymbolicSubset":
        return _rebuild(
            _bounds([self, other]), lambda x: self.contains(x) and other.contains(x)
        )

    def difference(self, other: "SymbolicSubset") -> "SymbolicSubset":
        return _rebuild(
            _bounds([self, other]), lambda x: self.contains(x) and not other.contains(x)
        )

    def complement(self) -> "SymbolicSubset":
        return _rebuild(_bounds([self]), lambda x: not self.contains(x))

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersection(other)

    def __sub__(self, other):
        return self.difference(other)

    def is_subset_of(self, other: "SymbolicSubset") -> bool:
        return self.difference(other).is_empty()

    # -- topology (relative to [0, 1]) ---------------------------------------

    def closure(self) -> "SymbolicSubset":
        closed = tuple(Interval(iv.lo, iv.hi, True, True) for iv in self.intervals)
        return SymbolicSubset(points=self.points, intervals=closed)

    def interior(self) -> "SymbolicSubset":
        return self.complement().closure().complement()

    def is_nowhere_dense(self) -> bool:
        """True iff the closure has empty interior."""
        return self.closure().interior().is_empty()

    def __str__(self) -> str:
        if self.is_empty():
            return "∅"
        parts = [str(iv) for iv in self.intervals] + [f"{{{p}}}" for p in self.points]
        return " ∪ ".join(parts)


def subset_normalize(points=(), intervals=()) -> SymbolicSubset:
    """Normalize raw subset data (points and possibly overlapping intervals,
    given as (lo, hi, lo_closed, hi_closed) tuples) into the invariant form.
    Raises OutOfRange for endpoints outside [0, 1]."""
    return SymbolicSubset(points=tuple(points), intervals=tuple(intervals))


def _check_range(x: Fraction):
    if not (ZERO <= x <= ONE):
        raise OutOfRange(f"value {x} outside [0, 1]")


def _normalize(points, intervals) -> tuple[tuple[Fraction, ...], tuple[Interval, ...]]:
    pts = []
    for p in points:
        p = Fraction(p)
        _check_range(p)
        pts.append(p)
    ivs = []
    for iv in intervals:
        if not isinstance(iv, Interval):
            iv = Interval(*iv)
        _check_range(iv.lo)
        _check_range(iv.hi)
        if iv.lo > iv.hi:
            raise ValueError(f"interval with lo > hi: {iv}")
        if iv.lo == iv.hi:
            if iv.lo_closed and iv.hi_closed:
                pts.append(iv.lo)
            continue
        ivs.append(iv)
    if not pts and not ivs:
        return (), ()

    def member(x: Fraction) -> bool:
        return x in pts or any(iv.contains(x) for iv in ivs)

    bounds = sorted({ZERO, ONE, *pts, *(iv.lo for iv in ivs), *(iv.hi for iv in ivs)})
    rebuilt = _sweep(bounds, member)
    return rebuilt


def _bounds(sets: list["SymbolicSubset"]) -> list[Fraction]:
    vals = {ZERO, ONE}
    for s in sets:
        vals.update(s.boundary_values())
    return sorted(vals)


def _rebuild(bounds: list[Fraction], member: Callable[[Fraction], bool]) -> "SymbolicSubset":
    pts, ivs = _sweep(bounds, member)
    out = SymbolicSubset.__new__(SymbolicSubset)
    object.__setattr__(out, "points", pts)
    object.__setattr__(out, "intervals", ivs)
    return out


def _sweep(bounds: list[Fraction], member: Callable[[Fraction], bool]):
    """Rebuild normal form from membership on elementary regions.

    Regions alternate point / open gap between consecutive bounds; the
    membership callable must be constant on each gap (guaranteed when all
    operand boundaries are among the bounds), so the gap midpoint decides.
    """
    regions = []  # (is_point, lo, hi, included)
    for i, b in enumerate(bounds):
        regions.append((True, b, b, member(b)))
        if i + 1 < len(bounds):
            mid = (b + bounds[i + 1]) / 2
            regions.append((False, b, bounds[i + 1], member(mid)))

    points: list[Fraction] = []
    intervals: list[Interval] = []
    run = None  # (lo, lo_closed, hi_so_far, hi_closed_so_far)
    for is_point, lo, hi, included in regions:
        if included:
            if run is None:
                run = [lo, is_point, hi, is_point]
            else:
                run[2], run[3] = hi, is_point
        else:
            if run is not None:
                _emit(run, points, intervals)
                run = None
    if run is not None:
        _emit(run, points, intervals)
    return tuple(points), tuple(intervals)


def _emit(run, points: list[Fraction], intervals: list[Interval]):
    lo, lo_closed, hi, hi_closed = run
    if lo == hi:
        points.append(lo)
    else:
        intervals.append(Interval(lo, hi, lo_closed, hi_closed))
