"""Dense complex linear algebra substrate.

Hermitian eigendecompositions, spectral norms, real parts. Matrices are plain
numpy arrays (square, complex, finite); every function is pure.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

HERMITICITY_RTOL = 1e-8


class NotHermitian(ValueError):
    """Input fails the relative Hermiticity tolerance."""


class NoConvergence(RuntimeError):
    """The eigenvalue iteration did not converge."""


def as_matrix(A) -> np.ndarray:
    """Validate and return A as a square, finite, complex numpy array."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


@dataclass(frozen=True)
class HermitianSpectrum:
    """Full spectrum of a Hermitian matrix.

    eigenvalues are sorted non-increasing; eigenvectors holds the matching
    orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _hermitian_defect(H: np.ndarray) -> float:
    scale = max(1.0, float(np.linalg.norm(H, "fro")))
    return float(np.linalg.norm(H - H.conj().T, "fro")) / scale


def hermitian_eig(H, rtol: float = HERMITICITY_RTOL) -> HermitianSpectrum:
    """Eigendecomposition of a (numerically) Hermitian matrix.

    The input must satisfy ||H - H*||_F <= rtol * max(1, ||H||_F); it is
    symmetrized before factoring so the result is exactly Hermitian-consistent.

    Raises NotHermitian on precondition failure and NoConvergence if the
    underlying iteration gives up.
    """
    H = as_matrix(H)
    if _hermitian_defect(H) > rtol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    Hs = (H + H.conj().T) / 2
    try:
        w, v = np.linalg.eigh(Hs)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return HermitianSpectrum(eigenvalues=w[::-1].copy(), eigenvectors=v[:, ::-1].copy())


def top_eigenpair(H: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix.

    Fast path for support-function sweeps: only the top pair is computed.
    The caller is responsible for passing an (exactly) Hermitian array.
    """
    n = H.shape[0]
    if n == 1:
        return float(H[0, 0].real), np.ones(1, dtype=complex)
    try:
        w, v = scipy.linalg.eigh(H, subset_by_index=(n - 1, n - 1), check_finite=False)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return float(w[0]), v[:, 0]


def spectral_norm(A) -> float:
    """Operator 2-norm: sqrt of the top eigenvalue of A*A."""
    A = as_matrix(A)
    G = A.conj().T @ A
    G = (G + G.conj().T) / 2
    try:
        w = np.linalg.eigvalsh(G)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return float(np.sqrt(max(w[-1], 0.0)))


def real_part(A) -> np.ndarray:
    """Hermitian part (A + A*)/2."""
    A = as_matrix(A)
    return (A + A.conj().T) / 2
