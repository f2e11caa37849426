"""Univariate polynomials with exact rational and Gaussian-rational
coefficients, plus exact real-root location on intervals.

Root location is split in two: rational roots come from the rational root
theorem (complete for rational candidates), and a Sturm count certifies
that no further real roots hide in an interval — if one does, the input is
rejected with IrrationalRoot rather than approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .errors import IrrationalRoot
from .rationals import ComplexRational


@dataclass(frozen=True)
class RationalPoly:
    """Dense polynomial over Q, coefficients ascending, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "RationalPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return RationalPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, RationalPoly):
            if self.is_zero() or other.is_zero():
                return RationalPoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPoly(tuple(out))
        return RationalPoly(tuple(c * Fraction(other) for c in self.coeffs))

    def __rmul__(self, other) -> "RationalPoly":
        return self * other

    def derivative(self) -> "RationalPoly":
        return RationalPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        dlead = other.coeffs[-1]
        dd = other.degree
        while len(rem) - 1 >= dd and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            f = rem[-1] / dlead
            pos = len(rem) - 1 - dd
            q[pos] = f
            for i, c in enumerate(other.coeffs):
                rem[pos + i] -= f * c
            rem.pop()
        return RationalPoly(tuple(q)), RationalPoly(tuple(rem))

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RationalPoly(tuple(c / lead for c in self.coeffs))


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd over Q[x]."""
    x, y = a, b
    while not y.is_zero():
        _, r = x.divmod(y)
        x, y = y, r
    return x.monic()


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.is_zero() or p.degree == 0:
        return p.monic() if not p.is_zero() else p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    q, _ = p.divmod(g)
    return q.monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def rational_roots(p: RationalPoly) -> list[Fraction]:
    """All rational roots (without multiplicity), sorted ascending."""
    if p.is_zero():
        raise ValueError("zero polynomial has every rational as a root")
    cs = list(p.coeffs)
    roots = set()
    # strip x^v factor
    v = 0
    while cs[v] == 0:
        v += 1
    if v > 0:
        roots.add(Fraction(0))
        cs = cs[v:]
    if len(cs) <= 1:
        return sorted(roots)
    # integerize: multiply by lcm of denominators
    denom_lcm = 1
    for c in cs:
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    ics = [int(c * denom_lcm) for c in cs]
    content = 0
    for c in ics:
        content = int_gcd(content, abs(c))
    ics = [c // content for c in ics]
    a0, an = ics[0], ics[-1]
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        _, r = seq[-2].divmod(seq[-1])
        seq.append(-r)
    seq.pop()
    return seq


def _sign_variations(seq: list[RationalPoly], x: Fraction) -> int:
    signs = []
    for q in seq:
        val = q(x)
        if val != 0:
            signs.append(1 if val > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_distinct_real_roots(p: RationalPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]; requires p(lo) ≠ 0."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p(lo) == 0:
        raise ValueError("Sturm count needs p(lo) ≠ 0")
    sf = squarefree_part(p)
    seq = sturm_sequence(sf)
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


def certify_only_rational_roots(p: RationalPoly, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Rational roots of p in the closed interval [lo, hi], with a proof
    that no other real root lies there; raises IrrationalRoot otherwise."""
    if p.is_zero():
        raise ValueError("zero polynomial vanishes everywhere")
    roots = [r for r in rational_roots(p) if lo <= r <= hi]
    reduced = squarefree_part(p)
    for r in rational_roots(p):
        q, rem = reduced.divmod(RationalPoly((-r, Fraction(1))))
        if rem.is_zero():
            reduced = q
    if reduced.degree >= 1 and lo < hi:
        # reduced has no rational roots, so it cannot vanish at lo or hi
        if count_distinct_real_roots(reduced, lo, hi) > 0:
            raise IrrationalRoot(
                f"polynomial has an irrational real root in [{lo}, {hi}]"
            )
    return roots


@dataclass(frozen=True)
class GaussianPoly:
    """Polynomial with Gaussian-rational coefficients, kept as a real and an
    imaginary rational polynomial (the variable is real)."""

    re: RationalPoly
    im: RationalPoly

    @classmethod
    def zero(cls) -> "GaussianPoly":
        return cls(RationalPoly.zero(), RationalPoly.zero())

    @classmethod
    def const(cls, c: ComplexRational) -> "GaussianPoly":
        return cls(RationalPoly.const(c.re), RationalPoly.const(c.im))

    @classmethod
    def from_coeffs(cls, coeffs) -> "GaussianPoly":
        cs = list(coeffs)
        return cls(
            RationalPoly(tuple(c.re for c in cs)),
            RationalPoly(tuple(c.im for c in cs)),
        )

    def coeff_list(self) -> list[ComplexRational]:
        n = max(len(self.re.coeffs), len(self.im.coeffs))
        out = []
        for i in range(n):
            re = self.re.coeffs[i] if i < len(self.re.coeffs) else Fraction(0)
            im = self.im.coeffs[i] if i < len(self.im.coeffs) else Fraction(0)
            out.append(ComplexRational(re, im))
        return out

    @property
    def degree(self) -> int:
        return max(self.re.degree, self.im.degree)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __call__(self, x: Fraction) -> ComplexRational:
        return ComplexRational(self.re(x), self.im(x))

    def __add__(self, other: "GaussianPoly") -> "GaussianPoly":
        return GaussianPoly(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianPoly") -> "GaussianPoly":
        return GaussianPoly(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianPoly":
        return GaussianPoly(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianPoly):
            return GaussianPoly(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, ComplexRational):
            return self * GaussianPoly.const(other)
        return GaussianPoly(self.re * other, self.im * other)

    def __rmul__(self, other) -> "GaussianPoly":
        return self * other

    def conj(self) -> "GaussianPoly":
        """Coefficientwise conjugate; evaluates to conj(p(x)) for real x."""
        return GaussianPoly(self.re, -self.im)

    def abs_coeff_bound(self) -> Fraction:
        """Rational upper bound for sup |p(x)| over [0, 1]: Σ (|re|+|im|)."""
        bound = Fraction(0)
        for c in self.coeff_list():
            bound += abs(c.re) + abs(c.im)
        return bound


def common_real_zero_gcd(polys) -> RationalPoly:
    """Monic gcd whose real roots are exactly the common real zeros of all
    given Gaussian polynomials; the zero polynomial means they all vanish
    identically."""
    g = RationalPoly.zero()
    for p in polys:
        for part in (p.re, p.im):
            if part.is_zero():
                continue
            g = part.monic() if g.is_zero() else poly_gcd(g, part)
            if g.degree == 0:
                return g
    return g


def exact_zero_points(polys, lo: Fraction, hi: Fraction):
    """Common zero set of the Gaussian polynomials on [lo, hi].

    Returns None when all polynomials vanish identically (the zero set is
    the whole interval); otherwise the finite sorted list of rational zeros,
    raising IrrationalRoot if an irrational common zero exists there.
    """
    g = common_real_zero_gcd(polys)
    if g.is_zero():
        return None
    if g.degree == 0:
        return []
    return certify_only_rational_roots(g, lo, hi)
