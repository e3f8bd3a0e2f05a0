"""Quadratic operator recognition and elliptical range prediction.

A matrix A is quadratic when A^2 - 2 mu A - nu I = 0 for scalars (mu, nu); its
eigenvalues are then lambda_{1,2} = mu +- sqrt(mu^2 + nu) and A is unitarily
similar to

    lambda1 I  (+)  lambda2 I  (+)  [[lambda1 I, 2X], [0, lambda2 I]]

with X positive definite diagonal. The numerical range of such an A is the
elliptical disc with foci lambda1, lambda2 and major-axis length
s + |mu^2 + nu| / s where s = ||A - mu I||; the essential-range analogue
replaces s by an essential norm s0. This module extracts (mu, nu), builds the
canonical form, and emits those predictions.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from . import linalg
from ._random import make_rng, random_unitary
from .geometry import EllipseDisc

RESIDUAL_TOL = 1e-10
ANGLE_TOL = 1e-10          # principal-angle cosine below this folds into the normal part
DEFECT_TOL = 1e-10         # cosine above 1 - DEFECT_TOL means coalescing eigenspaces
X_FLOOR = 1e-12            # canonical x-values must exceed this
REASSEMBLY_TOL = 1e-8


class NotQuadratic(ValueError):
    """Operation requires a matrix that passes the quadratic verdict."""


class DefectiveDecomposition(RuntimeError):
    """Canonical decomposition failed its reassembly or angle sanity checks."""


class InvalidNorms(ValueError):
    """norm < ess_norm beyond tolerance."""


class DegenerateEigenvalues(ValueError):
    """Operation requires lambda1 != lambda2."""


class NonMonotoneWarning(UserWarning):
    """Tail-compression sequence dropped noticeably below its running max."""


@dataclass(frozen=True)
class QuadraticSignature:
    """Extracted (mu, nu) data of A^2 - 2 mu A - nu I ~ 0.

    lambda1/lambda2 are mu +- sqrt(mu^2 + nu) (principal branch), s is the
    spectral norm of A - mu I, residual is the relative Frobenius residual of
    the quadratic identity, and quadratic is the verdict at the fitting
    tolerance.
    """

    mu: complex
    nu: complex
    lambda1: complex
    lambda2: complex
    s: float
    residual: float
    quadratic: bool

    @property
    def focal_shift(self) -> complex:
        """sqrt(mu^2 + nu): half the focal separation, as a complex number."""
        return (self.lambda1 - self.lambda2) / 2


@dataclass(frozen=True)
class CanonicalForm:
    """Unitary reduction data: U* A U = lambda1 I_d1 (+) lambda2 I_d2 (+) blocks.

    x_values (sorted non-increasing) are the singular values of X in the
    coupled block [[lambda1 I, 2X], [0, lambda2 I]]; dim3 = len(x_values).
    """

    dim1: int
    dim2: int
    dim3: int
    x_values: np.ndarray
    unitary: np.ndarray


@dataclass(frozen=True)
class EllipsePrediction:
    """Predicted elliptical disc for W(A) or its essential counterpart."""

    ellipse: EllipseDisc
    source: str            # "classical" | "essential" | "c-scaled"
    s_used: float
    attained: str          # "yes" | "no" | "unknown"


@dataclass(frozen=True)
class EssNormEstimate:
    """Tail-compression essential-norm estimate with its per-size sequence.

    value repeats the last sequence entry; the sequence itself is reported so
    callers can judge convergence, this estimator is a heuristic and never a
    certificate.
    """

    value: float
    sizes: tuple
    sequence: tuple


def fit_quadratic(A, tol: float = RESIDUAL_TOL) -> QuadraticSignature:
    """Least-squares fit of A^2 onto span{A, I} and the quadratic verdict.

    (mu, nu) minimize ||A^2 - 2 mu A - nu I||_F; the residual is relative to
    max(1, ||A||_F^2). Scalar matrices A = alpha I are handled by the
    convention mu = alpha, nu = -alpha^2 (double eigenvalue alpha).
    """
    A = linalg.as_matrix(A)
    n = A.shape[0]
    A2 = A @ A
    normA = float(np.linalg.norm(A, "fro"))
    scale = max(1.0, normA**2)

    alpha = np.trace(A) / n
    if np.linalg.norm(A - alpha * np.eye(n), "fro") <= 1e-13 * max(1.0, normA):
        # A and I are linearly dependent; the projection is underdetermined
        mu, nu = complex(alpha), -complex(alpha) ** 2
    else:
        gram = np.array(
            [[np.vdot(A, A), np.trace(A.conj().T)], [np.trace(A), n]], dtype=complex
        )
        rhs = np.array([np.vdot(A, A2), np.trace(A2)], dtype=complex)
        two_mu, nu = np.linalg.solve(gram, rhs)
        mu, nu = complex(two_mu / 2), complex(nu)

    residual = float(np.linalg.norm(A2 - 2 * mu * A - nu * np.eye(n), "fro")) / scale
    delta = np.sqrt(complex(mu**2 + nu))
    s = linalg.spectral_norm(A - mu * np.eye(n))
    return QuadraticSignature(
        mu=mu,
        nu=nu,
        lambda1=mu + delta,
        lambda2=mu - delta,
        s=s,
        residual=residual,
        quadratic=residual <= tol,
    )


def _orthonormal_range(P: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the range of an (approximate) idempotent.

    Singular values of a projection are >= 1 or 0, so 1/2 separates range
    directions from the kernel.
    """
    U, svals, _ = np.linalg.svd(P)
    rank = int(np.sum(svals > 0.5))
    return U[:, :rank]


def canonical_decompose(A, sig: QuadraticSignature) -> CanonicalForm:
    """Unitary canonical form of a quadratic matrix.

    Distinct-eigenvalue branch: principal angles between the two eigenspaces
    give the coupled 2x2 blocks, x_i = (|lambda1 - lambda2| / 2) *
    sigma_i / sqrt(1 - sigma_i^2) for principal cosines sigma_i; orthogonal
    pairs populate the normal part. Nilpotent branch (lambda1 == lambda2):
    the SVD of A - mu I supplies the blocks with x_i = sigma_i / 2.

    Raises NotQuadratic if the signature verdict failed and
    DefectiveDecomposition if the eigenspaces nearly coalesce or the
    reassembly residual exceeds tolerance.
    """
    A = linalg.as_matrix(A)
    if not sig.quadratic:
        raise NotQuadratic(f"residual {sig.residual:.3e} exceeds the quadratic tolerance")
    n = A.shape[0]
    lam1, lam2 = complex(sig.lambda1), complex(sig.lambda2)
    gap = abs(lam1 - lam2)
    scale = max(1.0, float(np.linalg.norm(A, "fro")))

    if gap <= 1e-12 * scale:
        # lambda1 == lambda2 == mu: A - mu I is nilpotent of order two
        N = A - sig.mu * np.eye(n)
        U_s, svals, Vh = np.linalg.svd(N)
        cutoff = max(X_FLOOR, 1e-12 * (svals[0] if svals.size else 0.0))
        r = int(np.sum(svals > 2 * cutoff))
        x = svals[:r] / 2
        e1 = U_s[:, :r]            # range(N), killed by N
        e2 = Vh[:r].conj().T       # row space, mapped onto the range
        if r:
            paired = np.concatenate([e1, e2], axis=1)
            rest = scipy.linalg.null_space(paired.conj().T)
        else:
            rest = np.eye(n, dtype=complex)
        d1, d2 = n - 2 * r, 0
        U = np.concatenate([rest, e1, e2], axis=1)
        form = CanonicalForm(dim1=d1, dim2=d2, dim3=r, x_values=x, unitary=U)
    else:
        P1 = (A - lam2 * np.eye(n)) / (lam1 - lam2)
        B1 = _orthonormal_range(P1)
        B2 = _orthonormal_range(np.eye(n) - P1)
        r1, r2 = B1.shape[1], B2.shape[1]
        if r1 + r2 != n:
            raise DefectiveDecomposition(
                f"eigenspace ranks {r1} + {r2} do not span dimension {n}"
            )
        W, sigmas, Zh = np.linalg.svd(B1.conj().T @ B2)
        nsig = sigmas.shape[0]  # min(r1, r2)
        if np.any(sigmas >= 1 - DEFECT_TOL):
            raise DefectiveDecomposition(
                "eigenspaces nearly coalesce (principal cosine ~ 1); "
                "the quadratic residual check was too lax for this input"
            )
        U1 = B1 @ W              # aligned basis of the lambda1 eigenspace
        U2 = B2 @ Zh.conj().T    # aligned basis of the lambda2 eigenspace
        coupled = sigmas > ANGLE_TOL
        b = int(np.sum(coupled))
        x = (gap / 2) * sigmas[:b] / np.sqrt(1 - sigmas[:b] ** 2)
        phase = (lam2 - lam1) / gap
        u = U1[:, :b]
        w = U2[:, :b]
        e2 = (w - u * sigmas[:b]) / np.sqrt(1 - sigmas[:b] ** 2)
        e2 = e2 * np.conj(phase)  # makes the block off-diagonal real positive
        H1 = U1[:, b:]
        H2 = U2[:, b:]
        d1, d2 = r1 - b, r2 - b
        U = np.concatenate([H1, H2, u, e2], axis=1)
        form = CanonicalForm(dim1=d1, dim2=d2, dim3=b, x_values=x, unitary=U)

    C = _canonical_matrix(lam1, lam2, form.x_values, form.dim1, form.dim2)
    defect = np.linalg.norm(form.unitary.conj().T @ A @ form.unitary - C, "fro")
    if defect > REASSEMBLY_TOL * scale:
        raise DefectiveDecomposition(f"reassembly residual {defect:.3e} exceeds tolerance")
    return form


def _canonical_matrix(lam1, lam2, x_values, d1: int, d2: int) -> np.ndarray:
    k = len(x_values)
    n = d1 + d2 + 2 * k
    C = np.zeros((n, n), dtype=complex)
    C[:d1, :d1] = lam1 * np.eye(d1)
    C[d1 : d1 + d2, d1 : d1 + d2] = lam2 * np.eye(d2)
    o = d1 + d2
    C[o : o + k, o : o + k] = lam1 * np.eye(k)
    C[o + k :, o + k :] = lam2 * np.eye(k)
    C[o : o + k, o + k :] = 2 * np.diag(np.asarray(x_values, dtype=float))
    return C


def assemble_canonical(
    lam1: complex,
    lam2: complex,
    x_values: Sequence[float],
    dims: tuple[int, int] = (0, 0),
    unitary: np.ndarray | None = None,
    seed=None,
) -> np.ndarray:
    """Build a quadratic matrix from canonical data (test-fixture generator).

    Returns U C U* for C = lambda1 I_d1 (+) lambda2 I_d2 (+)
    [[lambda1 I, 2X], [0, lambda2 I]]; U is the given unitary or a random
    (Haar) one drawn from seed.
    """
    x = np.asarray(list(x_values), dtype=float)
    if np.any(x <= 0):
        raise ValueError("x-values must be positive")
    d1, d2 = dims
    if d1 < 0 or d2 < 0:
        raise ValueError("dims must be nonnegative")
    x = np.sort(x)[::-1]
    C = _canonical_matrix(complex(lam1), complex(lam2), x, d1, d2)
    n = C.shape[0]
    U = random_unitary(n, make_rng(seed)) if unitary is None else np.asarray(unitary, dtype=complex)
    return U @ C @ U.conj().T


def _major_axis(s_used: float, focal_sq: float) -> float:
    # s + |mu^2+nu|/s with the s = 0 convention (point disc)
    return s_used + focal_sq / s_used if s_used > 0 else 0.0


def predict_W(sig: QuadraticSignature) -> EllipsePrediction:
    """Predicted numerical range: elliptical disc with foci lambda1, lambda2.

    Major-axis length is s + |mu^2 + nu| / s; a scalar matrix (s = 0)
    degenerates to the point {mu}. Finite-dimensional ranges are attained and
    closed.
    """
    if not sig.quadratic:
        raise NotQuadratic(f"residual {sig.residual:.3e} exceeds the quadratic tolerance")
    focal_sq = abs(sig.mu**2 + sig.nu)
    major = _major_axis(sig.s, focal_sq)
    if sig.s > 0:
        ellipse = EllipseDisc(sig.lambda1, sig.lambda2, major, "closed")
    else:
        ellipse = EllipseDisc(sig.mu, sig.mu, 0.0, "closed")
    return EllipsePrediction(ellipse=ellipse, source="classical", s_used=sig.s, attained="yes")


def predict_Wess(sig: QuadraticSignature, s0: float) -> EllipsePrediction:
    """Essential-range prediction from a caller-supplied essential norm s0.

    Same foci, major axis s0 + |mu^2 + nu| / s0; s0 = 0 degenerates to the
    singleton {mu}. The essential range is always closed. s0 must come from a
    closed form or an external estimate, finite sections alone cannot certify
    it.
    """
    if not sig.quadratic:
        raise NotQuadratic(f"residual {sig.residual:.3e} exceeds the quadratic tolerance")
    if s0 < 0:
        raise ValueError("s0 must be nonnegative")
    focal_sq = abs(sig.mu**2 + sig.nu)
    if s0 > 0:
        ellipse = EllipseDisc(sig.lambda1, sig.lambda2, _major_axis(s0, focal_sq), "closed")
    else:
        ellipse = EllipseDisc(sig.mu, sig.mu, 0.0, "closed")
    return EllipsePrediction(ellipse=ellipse, source="essential", s_used=float(s0), attained="unknown")


def classify_closed(norm: float, ess_norm: float, attained_dim=None, m: int = 1) -> str:
    """Closedness of the (essential-norm-aware) range.

    Strict norm dominance closes the range; at equality the verdict depends on
    whether the norm is attained on a subspace of dimension at least m
    (attained_dim None means unknown).
    """
    if norm < ess_norm - 1e-12:
        raise InvalidNorms(f"norm {norm} below essential norm {ess_norm}")
    if norm > ess_norm:
        return "closed"
    if attained_dim is None:
        return "unknown"
    return "closed" if attained_dim >= m else "open"


def projection_involution_check(A, sig: QuadraticSignature) -> tuple[float, float]:
    """Both sides of the projection/involution norm identity.

    lhs = ||(A - lambda1 I) / (lambda2 - lambda1)|| (a projection norm);
    rhs = (||S|| + ||S||^{-1}) / 2 for the involution S = (A - mu I) /
    sqrt(mu^2 + nu). Equal for quadratic A with distinct eigenvalues.
    """
    A = linalg.as_matrix(A)
    n = A.shape[0]
    delta = np.sqrt(complex(sig.mu**2 + sig.nu))
    if abs(delta) <= 1e-14 * max(1.0, float(np.linalg.norm(A, "fro"))):
        raise DegenerateEigenvalues("identity requires lambda1 != lambda2")
    lhs = linalg.spectral_norm((A - sig.lambda1 * np.eye(n)) / (sig.lambda2 - sig.lambda1))
    ns = linalg.spectral_norm((A - sig.mu * np.eye(n)) / delta)
    rhs = (ns + 1 / ns) / 2
    return lhs, rhs


def estimate_ess_norm(
    family: Callable[[int], np.ndarray],
    sizes: Sequence[int],
    tail_fraction: float = 0.5,
) -> EssNormEstimate:
    """Heuristic essential-norm estimate by tail compression of finite sections.

    For each size N the norm of the compression of family(N) to coordinates
    >= floor(tail_fraction * N) is recorded; the estimate is the last value.
    This is validated only against families with known closed forms and is
    never a certificate. Emits NonMonotoneWarning when the sequence drops more
    than 5% below its running maximum.
    """
    sizes = [int(N) for N in sizes]
    if len(sizes) < 3:
        raise ValueError("need at least 3 sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if not 0 < tail_fraction < 1:
        raise ValueError("tail_fraction must lie in (0, 1)")
    seq = []
    for N in sizes:
        A = linalg.as_matrix(family(N))
        if A.shape[0] != N:
            raise ValueError(f"family returned size {A.shape[0]} for requested {N}")
        K = int(np.floor(tail_fraction * N))
        seq.append(linalg.spectral_norm(A[K:, K:]))
    running_max = np.maximum.accumulate(seq)
    if np.any(seq < running_max * 0.95):
        warnings.warn(
            "tail-compression sequence dropped more than 5% below its running max",
            NonMonotoneWarning,
            stacklevel=2,
        )
    return EssNormEstimate(value=seq[-1], sizes=tuple(sizes), sequence=tuple(seq))
