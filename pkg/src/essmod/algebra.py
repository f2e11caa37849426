"""Finite-dimensional C*-algebras A = ⊕_i M_{n_i}.

An algebra element is a tuple of complex blocks, one square matrix per
summand. The algebra acts on ⊕_i C^{n_i} in its defining representation,
where its bicommutant is itself: every projection is open and every closed
right ideal is of the form pA for a projection p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .errors import (
    EigenvalueAtThreshold,
    NotHermitian,
    NotProjection,
    ShapeMismatch,
    ZeroInput,
)
from .linalg import DEFAULT_TOL


@dataclass(frozen=True)
class AlgebraShape:
    """Block dimensions (n_1, ..., n_r) of A = ⊕ M_{n_i}."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError("block_dims must be a nonempty tuple of positive ints")
        object.__setattr__(self, "block_dims", dims)

    @property
    def num_blocks(self) -> int:
        return len(self.block_dims)

    @property
    def dim(self) -> int:
        """Complex dimension of the algebra, Σ n_i²."""
        return sum(n * n for n in self.block_dims)

    def matrix_units(self) -> Iterable[tuple[int, int, int]]:
        """All (block, row, col) index triples of the matrix-unit basis."""
        for b, n in enumerate(self.block_dims):
            for r in range(n):
                for c in range(n):
                    yield b, r, c


def _frozen(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class AlgebraElement:
    """Element of ⊕ M_{n_i}, stored blockwise."""

    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != self.shape.num_blocks:
            raise ShapeMismatch("block count does not match shape")
        frozen = []
        for n, blk in zip(self.shape.block_dims, self.blocks):
            m = linalg.as_matrix(blk)
            if m.shape != (n, n):
                raise ShapeMismatch(f"block of shape {m.shape}, expected ({n}, {n})")
            frozen.append(_frozen(m))
        object.__setattr__(self, "blocks", tuple(frozen))

    @classmethod
    def zeros(cls, shape: AlgebraShape) -> "AlgebraElement":
        return cls(shape, tuple(np.zeros((n, n)) for n in shape.block_dims))

    @classmethod
    def identity(cls, shape: AlgebraShape) -> "AlgebraElement":
        return cls(shape, tuple(np.eye(n) for n in shape.block_dims))

    @classmethod
    def matrix_unit(cls, shape: AlgebraShape, block: int, row: int, col: int) -> "AlgebraElement":
        blocks = [np.zeros((n, n), dtype=np.complex128) for n in shape.block_dims]
        blocks[block][row, col] = 1.0
        return cls(shape, tuple(blocks))

    def _check_same(self, other: "AlgebraElement"):
        if self.shape != other.shape:
            raise ShapeMismatch("algebra elements over different shapes")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.shape, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        return AlgebraElement(self.shape, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.shape, tuple(-a for a in self.blocks))

    def __mul__(self, other):
        """Algebra product, or scaling by a complex number."""
        if isinstance(other, AlgebraElement):
            self._check_same(other)
            return AlgebraElement(self.shape, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))
        return AlgebraElement(self.shape, tuple(a * complex(other) for a in self.blocks))

    def __rmul__(self, other) -> "AlgebraElement":
        return AlgebraElement(self.shape, tuple(complex(other) * a for a in self.blocks))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.shape, tuple(a.conj().T for a in self.blocks))

    def norm(self) -> float:
        """C*-norm: max of block operator norms."""
        return max(linalg.op_norm(b) for b in self.blocks)

    def is_hermitian(self, tol: float = DEFAULT_TOL) -> bool:
        scale = 1.0 + self.norm()
        return all(linalg.is_hermitian(b, tol=tol * scale) for b in self.blocks)

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return self.norm() <= tol

    def distance(self, other: "AlgebraElement") -> float:
        return (self - other).norm()


def _eig_blocks(a: AlgebraElement, tol: float) -> list[tuple[np.ndarray, np.ndarray]]:
    if not a.is_hermitian(tol):
        raise NotHermitian("algebra element is not hermitian within tolerance")
    return [linalg.herm_eig(b, tol=tol * (1.0 + a.norm())) for b in a.blocks]


def all_eigenvalues(a: AlgebraElement, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Sorted spectrum of a hermitian element across all blocks."""
    eigs = np.concatenate([e for e, _ in _eig_blocks(a, tol)])
    return np.sort(eigs)


def calculus(a: AlgebraElement, f: Callable[[float], float], tol: float = DEFAULT_TOL) -> AlgebraElement:
    """Continuous functional calculus f(a) for hermitian a.

    Applies f to the spectrum blockwise: u diag(f(λ)) u*. callable errors
    (ValueError / ZeroDivisionError) are surfaced as DomainError.
    """
    from .errors import DomainError

    out = []
    for eigs, u in _eig_blocks(a, tol):
        try:
            vals = np.array([float(f(float(t))) for t in eigs])
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"function undefined on spectrum: {exc}") from exc
        out.append(u @ np.diag(vals) @ u.conj().T)
    return AlgebraElement(a.shape, tuple(out))


def spectral_projection(a: AlgebraElement, eps: float, tol: float = DEFAULT_TOL) -> AlgebraElement:
    """χ_(eps, ∞)(a): the spectral projection onto eigenvalues above eps.

    Raises EigenvalueAtThreshold when some eigenvalue lies within the scaled
    tolerance of eps — the projection is discontinuous there.
    """
    scale = 1.0 + a.norm()
    eigs = all_eigenvalues(a, tol)
    if np.any(np.abs(eigs - eps) <= tol * scale):
        raise EigenvalueAtThreshold(
            f"eigenvalue within {tol * scale:.3g} of threshold {eps}"
        )
    return calculus(a, lambda t: 1.0 if t > eps else 0.0, tol=tol)


def lower_approximants(a: AlgebraElement, eps: float, n: int, tol: float = DEFAULT_TOL) -> AlgebraElement:
    """g_n(a) for the piecewise-linear lower approximants of χ_(eps, ∞):

        g_n(t) = 0 for t ≤ eps, n(t - eps) on (eps, eps + 1/n), 1 beyond.

    The sequence increases to the spectral projection as n grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def g(t: float) -> float:
        if t <= eps:
            return 0.0
        if t < eps + 1.0 / n:
            return n * (t - eps)
        return 1.0

    return calculus(a, g, tol=tol)


def shifted_positive_part(a: AlgebraElement, eps: float, tol: float = DEFAULT_TOL) -> AlgebraElement:
    """(a - eps)_+ = max(a - eps, 0) via the functional calculus."""
    return calculus(a, lambda t: max(t - eps, 0.0), tol=tol)


def is_projection(p: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    scale = 1.0 + p.norm()
    return p.is_hermitian(tol) and (p * p).distance(p) <= tol * scale


@dataclass(frozen=True)
class RightIdeal:
    """Closed right ideal pA, carried by its support projection p."""

    shape: AlgebraShape
    support_projection: AlgebraElement

    def __post_init__(self):
        if self.support_projection.shape != self.shape:
            raise ShapeMismatch("projection over a different shape")
        if not is_projection(self.support_projection, tol=1e-8):
            raise NotProjection("support projection fails p*p = p = p^*")

    def contains(self, b: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
        """Membership b ∈ pA  ⟺  p b = b."""
        p = self.support_projection
        return (p * b).distance(b) <= tol * (1.0 + b.norm())

    def spanning_set(self) -> list[AlgebraElement]:
        """Complex spanning set {p E} over the matrix-unit basis."""
        p = self.support_projection
        return [p * AlgebraElement.matrix_unit(self.shape, b, r, c)
                for b, r, c in self.shape.matrix_units()]

    def rank(self) -> int:
        """Total rank of the support projection across blocks."""
        return int(round(sum(np.trace(b).real for b in self.support_projection.blocks)))


def ideal_from_projection(p: AlgebraElement, tol: float = DEFAULT_TOL) -> RightIdeal:
    if not is_projection(p, tol=max(tol, 1e-8)):
        raise NotProjection("input is not a projection within tolerance")
    return RightIdeal(p.shape, p)


def ideal_support_projection(generators: Sequence[AlgebraElement], tol: float = DEFAULT_TOL) -> RightIdeal:
    """Support projection of the right ideal generated by the given elements.

    Blockwise this is the orthogonal projection onto the joint column space
    of the generators; it is the smallest projection p with p g = g for all g.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    shape = gens[0].shape
    for g in gens[1:]:
        if g.shape != shape:
            raise ShapeMismatch("generators over different shapes")
    blocks = []
    for b in range(shape.num_blocks):
        stacked = np.hstack([g.blocks[b] for g in gens])
        blocks.append(linalg.column_space_projector(stacked, tol=tol))
    return RightIdeal(shape, AlgebraElement(shape, tuple(blocks)))


def _interp_resolvent(eps: float) -> Callable[[float], float]:
    """g with g = 0 below eps/2, g(t) = 1/t above eps, linear in between."""

    def g(t: float) -> float:
        if t < eps / 2.0:
            return 0.0
        if t < eps:
            return (t - eps / 2.0) / (eps / 2.0) * (1.0 / eps)
        return 1.0 / t

    return g


def _choose_threshold(a: AlgebraElement, tol: float) -> float:
    """Half the smallest nonzero eigenvalue of the positive element a.

    Any threshold in (0, ‖a‖) would make (a−eps)₊ nonzero; this choice
    additionally puts the whole nonzero spectrum above the cut, so the
    spectral projection has exactly the rank of a. It sits in the middle of
    a spectral gap, far from every eigenvalue.
    """
    scale = 1.0 + a.norm()
    eigs = all_eigenvalues(a, tol)
    nonzero = eigs[eigs > 1e-9 * scale]
    if nonzero.size == 0:
        raise ZeroInput("element too small to pick a spectral threshold")
    return float(nonzero[0]) / 2.0


@dataclass(frozen=True)
class SubidealWitness:
    """Constructive output of the closed-subideal pipeline for nonzero x.

    Carries a = x x*, the threshold eps, the nonzero spectral projection
    p = χ_(eps,∞)(a), f(a) = a·g(a), and the closed right ideal K = pA,
    together with the residuals of the verified contracts f(a)p = p and
    b = f(a)p b over a spanning probe set of K (which certifies K ⊆ xA).
    """

    eps: float
    a: AlgebraElement
    p: AlgebraElement
    fa: AlgebraElement
    ga: AlgebraElement
    ideal: RightIdeal
    fa_p_error: float
    probe_errors: tuple[float, ...]
    membership_errors: tuple[float, ...] = field(default=())

    @property
    def verified(self) -> bool:
        tol = 1e-8
        return self.fa_p_error <= tol and all(e <= tol for e in self.probe_errors)


def closed_subideal(x: AlgebraElement, tol: float = DEFAULT_TOL) -> SubidealWitness:
    """Produce a closed right ideal K = pA inside the right ideal generated
    by a nonzero x, with verified membership certificates.

    a = x x* is positive and nonzero, eps is half its smallest nonzero
    eigenvalue, p = χ_(eps,∞)(a) ≠ 0 has the rank of x, and f(t) = t·g(t)
    with g vanishing below eps/2 and equal to 1/t from eps on. Then
    f(a)p = p, so every b ∈ K factors as b = f(a) p b = x (x* g(a) p b),
    an element of x A.
    """
    if x.is_zero(tol):
        raise ZeroInput("closed_subideal requires x ≠ 0")
    a = x * x.adjoint()
    eps = _choose_threshold(a, tol)
    p = spectral_projection(a, eps, tol=tol)
    g = _interp_resolvent(eps)
    ga = calculus(a, g, tol=tol)
    fa = calculus(a, lambda t: t * g(t), tol=tol)
    ideal = ideal_from_projection(p, tol=tol)

    scale = 1.0 + a.norm()
    fa_p_error = (fa * p).distance(p) / scale
    probe_errors = []
    membership_errors = []
    xadj = x.adjoint()
    for b in ideal.spanning_set():
        bscale = 1.0 + b.norm()
        probe_errors.append((fa * (p * b)).distance(b) / bscale)
        # explicit factorization through x: b = x · (x* g(a) p b)
        membership_errors.append((x * (xadj * (ga * (p * b)))).distance(b) / bscale)
    return SubidealWitness(
        eps=eps, a=a, p=p, fa=fa, ga=ga, ideal=ideal,
        fa_p_error=float(fa_p_error),
        probe_errors=tuple(float(e) for e in probe_errors),
        membership_errors=tuple(float(e) for e in membership_errors),
    )


@dataclass(frozen=True)
class IdealCertificate:
    """Decision evidence for essentiality of a right ideal pA.

    Essential: p is the identity (identity_error records ‖p − 1‖).
    Not essential: a unit vector v orthogonal to range(p) in some block,
    the rank-one ideal qA with q = vv*, and the verified fact
    dim(pA ∩ qA) = 0, computed by intersecting column spaces.
    """

    essential: bool
    identity_error: float | None = None
    block: int | None = None
    vector: tuple[complex, ...] | None = None
    rank_one: AlgebraElement | None = None
    intersection_dim: int | None = None


def is_essential_right_ideal(J: RightIdeal, tol: float = DEFAULT_TOL) -> tuple[bool, IdealCertificate]:
    """Decide essentiality of the closed right ideal pA.

    pA meets every nonzero right ideal iff p is the identity in every block;
    otherwise a rank-one ideal qA built on a unit vector orthogonal to
    range(p) intersects pA trivially.
    """
    p = J.support_projection
    shape = J.shape
    ident = AlgebraElement.identity(shape)
    err = p.distance(ident)
    if err <= tol * (1.0 + p.norm()):
        return True, IdealCertificate(essential=True, identity_error=float(err))

    # locate a defective block and a unit vector missing from range(p)
    for b, n in enumerate(shape.block_dims):
        pb = p.blocks[b]
        if linalg.op_norm(pb - np.eye(n)) <= tol * (1.0 + p.norm()):
            continue
        eigs, u = linalg.herm_eig(pb, tol=1e-8)
        v = u[:, 0]  # eigenvalue ≈ 0: orthogonal complement of range(p)
        q_blocks = [np.zeros((m, m), dtype=np.complex128) for m in shape.block_dims]
        q_blocks[b] = np.outer(v, v.conj())
        q = AlgebraElement(shape, tuple(q_blocks))
        inter = linalg.subspace_intersection_dim(pb, q.blocks[b], tol=1e-8)
        return False, IdealCertificate(
            essential=False,
            block=b,
            vector=tuple(complex(z) for z in v),
            rank_one=q,
            intersection_dim=int(inter),
        )
    raise AssertionError("projection differs from identity but no block is defective")
