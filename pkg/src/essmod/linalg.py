"""Dense complex linear algebra kernel.

Matrices are plain ``numpy.ndarray`` values of dtype complex128; every
function here is pure. The default tolerance is absolute and gets scaled by
(1 + norm) of the input where a relative notion makes sense: all intended
instances are well-conditioned matrices of size at most 16.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence, NotHermitian

DEFAULT_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def op_norm(a) -> float:
    """Largest singular value."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _canonical_phases(u: np.ndarray, eigs: np.ndarray) -> np.ndarray:
    """Fix each eigenvector's phase so the entry of largest modulus is
    positive real. Eigendecompositions are then reproducible run to run."""
    v = u.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        i = int(np.argmax(np.abs(col)))
        piv = col[i]
        if abs(piv) > 0:
            v[:, j] = col * (piv.conjugate() / abs(piv))
    return v


def herm_eig(a, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a hermitian matrix.

    Returns ``(eigenvalues, u)`` with eigenvalues ascending and ``u`` unitary
    such that ``u @ diag(eigenvalues) @ u*`` reconstructs the input.
    Raises NotHermitian if ``‖a - a*‖ > tol``, NoConvergence if LAPACK fails.
    """
    m = as_matrix(a)
    scale = 1.0 + op_norm(m)
    if m.shape[0] != m.shape[1] or np.max(np.abs(m - m.conj().T), initial=0.0) > tol * scale:
        raise NotHermitian(f"matrix is not hermitian within tol={tol}")
    h = (m + m.conj().T) / 2.0
    try:
        eigs, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return eigs.real, _canonical_phases(u, eigs.real)


def is_psd(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff the hermitian input has min eigenvalue >= -tol."""
    eigs, _ = herm_eig(a, tol=max(tol, DEFAULT_TOL))
    if eigs.size == 0:
        return True
    return bool(eigs[0] >= -tol)


def matrix_rank(a, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank via singular values, threshold scaled by the largest one."""
    m = as_matrix(a)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] <= tol:
        return 0
    return int(np.sum(s > tol * max(1.0, s[0])))


def orthonormal_column_basis(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space, as matrix columns."""
    m = as_matrix(a)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] <= tol:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    return u[:, :r]


def column_space_projector(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space of ``a``."""
    q = orthonormal_column_basis(a, tol=tol)
    n = as_matrix(a).shape[0]
    if q.shape[1] == 0:
        return np.zeros((n, n), dtype=np.complex128)
    return q @ q.conj().T


def subspace_intersection_dim(u, v, tol: float = DEFAULT_TOL) -> int:
    """dim(col(u) ∩ col(v)) via the rank formula."""
    bu = orthonormal_column_basis(u, tol=tol)
    bv = orthonormal_column_basis(v, tol=tol)
    if bu.shape[1] == 0 or bv.shape[1] == 0:
        return 0
    joint = matrix_rank(np.hstack([bu, bv]), tol=tol)
    return bu.shape[1] + bv.shape[1] - joint
