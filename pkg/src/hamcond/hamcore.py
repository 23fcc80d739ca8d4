"""Hamiltonian and skew-Hamiltonian structure on 2n x 2n matrices.

Matrices are plain numpy arrays.  A complex Hamiltonian matrix ``Q``
satisfies ``QJ = (QJ)^*`` with ``J = [[0, I], [-I, 0]]``; the real
Hamiltonian and skew-Hamiltonian spaces are the real matrices with
``HJ`` symmetric and ``WJ`` skew-symmetric respectively.
"""

from enum import Enum

import numpy as np

from .errors import InvalidDimension, StructureMismatch, ZeroProjection

DEFAULT_TOL = 1e-10
ZERO_NORM = 1e-300


class StructureTag(str, Enum):
    HAM_COMPLEX = "ham-complex"
    HAM_REAL = "ham-real"
    SKEWHAM_REAL = "skewham-real"
    SKEWHAM_COMPLEX = "skewham-complex"

    @property
    def is_real(self):
        return self in (StructureTag.HAM_REAL, StructureTag.SKEWHAM_REAL)

    @property
    def is_hamiltonian(self):
        return self in (StructureTag.HAM_REAL, StructureTag.HAM_COMPLEX)


def as_matrix(A):
    """Validate ``A`` as a finite square matrix of even order and return it as an array."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidDimension(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[0] % 2:
        raise InvalidDimension(f"matrix order must be even and positive, got {A.shape[0]}")
    if not np.issubdtype(A.dtype, np.number):
        raise InvalidDimension(f"non-numeric dtype {A.dtype}")
    if not np.all(np.isfinite(A)):
        raise InvalidDimension("matrix has non-finite entries")
    if not np.iscomplexobj(A):
        A = A.astype(float, copy=False)
    return A


def half_dim(A):
    return A.shape[0] // 2


def symplectic_form(n):
    """Return ``J = [[0, I_n], [-I_n, 0]]`` as a real ``2n x 2n`` array."""
    if int(n) != n or n < 1:
        raise InvalidDimension(f"half-dimension must be a positive integer, got {n!r}")
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def frobenius_inner(A, B):
    """``Trace(A^T B)``; the real inner product on real matrices (no conjugation)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise InvalidDimension(f"shape mismatch {A.shape} vs {B.shape}")
    val = np.sum(A * B)
    if not (np.iscomplexobj(A) or np.iscomplexobj(B)):
        return float(val)
    return complex(val)


def frobenius_norm(A):
    return float(np.linalg.norm(np.asarray(A), "fro"))


def _scale(A):
    return max(1.0, frobenius_norm(A))


def _real_part(A, tol):
    if not np.iscomplexobj(A):
        return A
    if np.max(np.abs(A.imag), initial=0.0) > tol * _scale(A):
        raise StructureMismatch("real structure requested for a matrix with nonzero imaginary part")
    return np.ascontiguousarray(A.real)


def structure_residual(A, tag):
    """Frobenius norm of the defining residual of ``tag`` (imaginary parts ignored for real tags)."""
    A = as_matrix(A)
    tag = StructureTag(tag)
    J = symplectic_form(half_dim(A))
    if tag.is_real:
        AJ = np.real(A) @ J
        R = AJ - AJ.T if tag is StructureTag.HAM_REAL else AJ + AJ.T
    else:
        AJ = A @ J
        R = AJ - AJ.conj().T if tag is StructureTag.HAM_COMPLEX else AJ + AJ.conj().T
    return frobenius_norm(R)


def check_structure(A, tag, tol=DEFAULT_TOL):
    """True when ``A`` belongs to the ``tag`` space up to ``tol * max(1, ||A||_F)``."""
    A = as_matrix(A)
    tag = StructureTag(tag)
    bound = tol * _scale(A)
    if tag.is_real and np.iscomplexobj(A) and np.max(np.abs(A.imag), initial=0.0) > bound:
        return False
    return structure_residual(A, tag) <= bound


def project(A, tag, tol=DEFAULT_TOL):
    """Frobenius-nearest point of the ``tag`` space.

    Complex tags use ``(A +- J A^* J)/2``, real tags ``(B +- J B^T J)/2``.
    Real tags raise :class:`StructureMismatch` on genuinely complex input.
    """
    A = as_matrix(A)
    tag = StructureTag(tag)
    J = symplectic_form(half_dim(A))
    sign = 1.0 if tag.is_hamiltonian else -1.0
    if tag.is_real:
        B = _real_part(A, tol)
        return 0.5 * (B + sign * (J @ B.T @ J))
    return 0.5 * (A + sign * (J @ A.conj().T @ J))


def project_blocks(A):
    """Block form of the complex Hamiltonian projection, ``[[K, M], [L, -K^*]]``.

    Independent of :func:`project`; used as a cross-check.
    """
    A = as_matrix(A).astype(complex)
    n = half_dim(A)
    A1, A3 = A[:n, :n], A[:n, n:]
    A2, A4 = A[n:, :n], A[n:, n:]
    K = 0.5 * (A1 - A4.conj().T)
    M = 0.5 * (A3 + A3.conj().T)
    L = 0.5 * (A2 + A2.conj().T)
    return np.block([[K, M], [L, -K.conj().T]])


def normalized_projection(A):
    """Complex Hamiltonian projection of ``A`` scaled to unit Frobenius norm."""
    P = project(A, StructureTag.HAM_COMPLEX)
    nrm = frobenius_norm(P)
    if nrm <= ZERO_NORM:
        raise ZeroProjection("projection onto the complex Hamiltonian space vanishes")
    return P / nrm


def distance_to_structure(A, tag, tol=DEFAULT_TOL):
    A = as_matrix(A)
    return frobenius_norm(A - project(A, tag, tol))


def _hermitian_from_params(rng, n, real):
    H = np.diag(rng.standard_normal(n)).astype(float if real else complex)
    il = np.tril_indices(n, -1)
    off = rng.standard_normal(len(il[0]))
    if not real:
        off = off + 1j * rng.standard_normal(len(il[0]))
    H[il] = off
    H[(il[1], il[0])] = np.conj(off)
    return H


def random_hamiltonian(n, seed=None, real=True):
    """Random ``[[K, M], [L, -K^*]]`` with ``L``, ``M`` symmetric (Hermitian when complex).

    All free real parameters are standard Gaussian.
    """
    if int(n) != n or n < 1:
        raise InvalidDimension(f"half-dimension must be a positive integer, got {n!r}")
    rng = np.random.default_rng(seed)
    K = rng.standard_normal((n, n))
    if not real:
        K = K + 1j * rng.standard_normal((n, n))
    M = _hermitian_from_params(rng, n, real)
    L = _hermitian_from_params(rng, n, real)
    return np.block([[K, M], [L, -K.conj().T]])


def random_hamiltonian_imaginary_spectrum(n, seed=None):
    """Real Hamiltonian ``J S`` with ``S`` symmetric positive definite.

    ``J S`` is similar to the skew-symmetric ``S^(1/2) J S^(1/2)``, so its
    spectrum lies on the imaginary axis.
    """
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((2 * n, 2 * n))
    S = G @ G.T / (2 * n) + np.eye(2 * n)
    return symplectic_form(n) @ S
