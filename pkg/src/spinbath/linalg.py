"""Dense complex matrix helpers for small quantum operators.

Everything here works on plain ``numpy.ndarray`` of dtype complex128.  The
Hilbert spaces involved are at most a few hundred dimensional (2^N with
N <= ~12), so dense storage and LAPACK eigendecompositions are the right
tool; no sparse or iterative machinery is used.
"""

from __future__ import annotations

import numpy as np

from .constants import STRUCT_TOL


def to_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (i*db+k, j*db+l) -> a[i,j]*b[k,l]."""
    return np.kron(to_complex(a), to_complex(b))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a@b - b@a.  Raises on shape mismatch."""
    a = to_complex(a)
    b = to_complex(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square matrices, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def is_hermitian(a: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.abs(a - a.conj().T).max() <= tol)


def hermitian_eig(a: np.ndarray, tol: float = STRUCT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns).  Rejects input
    whose anti-Hermitian part exceeds ``tol`` instead of silently
    symmetrizing it.
    """
    a = to_complex(a)
    dev = np.abs(a - a.conj().T).max()
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max |A - A^dag| = {dev:.3e} > {tol:.1e})")
    w, v = np.linalg.eigh(a)
    return w, v


def expm_hermitian(a: np.ndarray, s: float = 1.0) -> np.ndarray:
    """exp(s*a) for Hermitian a, via eigendecomposition.

    Exact up to eigensolver accuracy for any sign of s, which matters for
    Gibbs weights exp(-H/T) where squaring-and-scaling of a truncated series
    loses accuracy.
    """
    w, v = hermitian_eig(a)
    return (v * np.exp(s * w)) @ v.conj().T


def spectral_norm_hermitian(a: np.ndarray) -> float:
    """max |eigenvalue|, i.e. the operator 2-norm of a Hermitian matrix."""
    w, _ = hermitian_eig(a)
    return float(np.abs(w).max())
