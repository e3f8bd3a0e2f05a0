"""c-numerical range W_c(A) = { sum_j c_j <A x_j, x_j> : {x_j} orthonormal }.

Real collinear coefficient vectors only (the general collinear case reduces to
this by a rotation). The support function in direction psi is an eigenvalue
sum of the Hermitian part of e^{-i psi} A: pad c with zeros to the full
dimension, sort non-increasing, and pair with the descending spectrum. The
padding matters: it sends negative weights to the bottom eigenvalues, which is
what actually realizes the supremum over orthonormal k-frames (the top-k
pairing undershoots whenever k < n and c has negative entries).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from ._random import make_rng, random_frames
from .geometry import ConvexRegion, EllipseDisc, ellipse_support, uniform_angles
from .quadratic import NotQuadratic, QuadraticSignature


class TooManyCoefficients(ValueError):
    """More coefficients than the matrix dimension."""


@dataclass(frozen=True)
class Coefficients:
    """Real coefficient vector for W_c, canonically sorted non-increasing.

    Zero entries are dropped on construction. Complex input that is collinear
    through the origin is rotated onto the real axis; the rotation angle is
    kept so callers can map results back (W_{e^{i t} c} = e^{i t} W_c).
    """

    values: np.ndarray
    rotation: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("need at least one nonzero coefficient")
        if np.any(v == 0):
            raise ValueError("zero coefficients must be dropped before construction")
        if np.any(np.diff(v) > 0):
            raise ValueError("coefficients must be sorted non-increasing")

    @classmethod
    def from_values(cls, values) -> "Coefficients":
        v = np.asarray(values)
        rotation = 0.0
        if np.iscomplexobj(v):
            w = v[v != 0]
            if w.size == 0:
                raise ValueError("need at least one nonzero coefficient")
            pivot = w[np.argmax(np.abs(w))]
            rotation = float(np.angle(pivot))
            rotated = v * np.exp(-1j * rotation)
            if np.abs(rotated.imag).max() > 1e-12 * max(1.0, np.abs(v).max()):
                raise ValueError("complex coefficients must be collinear through the origin")
            v = rotated.real
        v = np.asarray(v, dtype=float)
        v = v[v != 0]
        if v.size == 0:
            raise ValueError("need at least one nonzero coefficient")
        return cls(values=np.sort(v)[::-1], rotation=rotation)

    @property
    def k(self) -> int:
        return int(self.values.size)

    @property
    def norm_c(self) -> float:
        return float(np.abs(self.values).sum())

    @property
    def sum_c(self) -> float:
        return float(self.values.sum())

    @property
    def m_plus(self) -> int:
        return int(np.sum(self.values > 0))

    @property
    def m_minus(self) -> int:
        return int(np.sum(self.values < 0))

    @property
    def m(self) -> int:
        return max(self.m_plus, self.m_minus)


def _padded(c: Coefficients, n: int) -> np.ndarray:
    if c.k > n:
        raise TooManyCoefficients(f"{c.k} coefficients for dimension {n}")
    cpad = np.zeros(n)
    cpad[: c.k] = c.values
    cpad[::-1].sort()
    return cpad


def kyfan_support(A, c: Coefficients, psi: float) -> float:
    """Support value of W_c(A) at outer-normal angle psi.

    Evaluates the zero-padded non-increasing pairing of c against the
    descending spectrum of Re(e^{-i psi} A); an eigenvector frame attains the
    value (see attaining_frame), so this is the exact frame supremum.
    """
    A = linalg.as_matrix(A)
    cpad = _padded(c, A.shape[0])
    B = np.exp(-1j * psi) * A
    lam = np.linalg.eigvalsh((B + B.conj().T) / 2)[::-1]
    return float(cpad @ lam)


def attaining_frame(A, c: Coefficients, psi: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvector frame realizing kyfan_support at angle psi.

    Returns (frame, weights): frame columns are eigenvectors of
    Re(e^{-i psi} A) at the nonzero padded positions, weights the matching
    permutation of c. sum_j weights_j <A frame_j, frame_j> has real part equal
    to the support value (up to eigensolver noise).
    """
    A = linalg.as_matrix(A)
    cpad = _padded(c, A.shape[0])
    B = np.exp(-1j * psi) * A
    spec = linalg.hermitian_eig((B + B.conj().T) / 2)
    idx = np.nonzero(cpad)[0]
    return spec.eigenvectors[:, idx], cpad[idx]


def compute_wc(A, c: Coefficients, m: int = 720, workers: int = 1) -> ConvexRegion:
    """Support table of W_c(A) over a uniform m-angle grid.

    Witness points come from the attaining eigenvector frames, so they lie in
    W_c(A) on the corresponding support lines.
    """
    A = linalg.as_matrix(A)
    if m < 8:
        raise ValueError(f"grid must have at least 8 angles, got {m}")
    cpad = _padded(c, A.shape[0])
    idx = np.nonzero(cpad)[0]
    angles = uniform_angles(m)

    def one(psi: float) -> tuple[float, complex]:
        B = np.exp(-1j * psi) * A
        w, v = np.linalg.eigh((B + B.conj().T) / 2)
        w, v = w[::-1], v[:, ::-1]
        h = float(cpad @ w)
        V = v[:, idx]
        z = complex(np.einsum("j,ij,ij->", cpad[idx], V.conj(), A @ V))
        return h, z

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, angles))
    else:
        results = [one(psi) for psi in angles]
    h = np.array([r[0] for r in results])
    z = np.array([r[1] for r in results])
    return ConvexRegion(angles=angles, support_values=h, boundary_points=z)


def frame_oracle(A, c: Coefficients, trials: int, seed=None) -> np.ndarray:
    """sum_j c_j <A x_j, x_j> for `trials` random orthonormal k-frames.

    Frames are QR-orthonormalized complex Gaussian samples (condition-guarded),
    reproducible from the seed. Every sample lies in W_c(A) by definition.
    """
    A = linalg.as_matrix(A)
    n = A.shape[0]
    if c.k > n:
        raise TooManyCoefficients(f"{c.k} coefficients for dimension {n}")
    if trials < 1:
        raise ValueError("trials must be positive")
    Q = random_frames(n, c.k, trials, make_rng(seed))
    AQ = np.einsum("ij,bjk->bik", A, Q)
    return np.einsum("k,bik,bik->b", c.values, Q.conj(), AQ)


@dataclass(frozen=True)
class SandwichReport:
    """Containment diagnostics for E0 subset W_c subset E on a fixed grid."""

    outer: EllipseDisc
    inner: EllipseDisc | None
    max_violation_outer: float
    max_violation_inner: float | None
    grid: int

    def ok(self, tol: float = 1e-9) -> bool:
        inner_ok = self.max_violation_inner is None or self.max_violation_inner <= tol
        return self.max_violation_outer <= tol and inner_ok


def scaled_ellipse(sig: QuadraticSignature, c: Coefficients, s_used: float) -> EllipseDisc:
    """Elliptical disc with foci mu sum(c) +- sqrt(mu^2+nu) ||c|| and axes
    scaled by ||c||, built from the given s (operator norm or essential norm).
    """
    delta = sig.focal_shift
    center = sig.mu * c.sum_c
    focal_sq = abs(sig.mu**2 + sig.nu)
    major = (s_used + focal_sq / s_used if s_used > 0 else 0.0) * c.norm_c
    if s_used > 0:
        return EllipseDisc(center + delta * c.norm_c, center - delta * c.norm_c, major)
    return EllipseDisc(center, center, 0.0)


def sandwich_check(
    A,
    sig: QuadraticSignature,
    c: Coefficients,
    s0: float | None = None,
    grid: int = 720,
) -> SandwichReport:
    """Verify the two-sided ellipse containment for a quadratic matrix.

    Outer: h_{W_c}(psi) <= h_E(psi) for the ellipse E built from s; inner
    (when an essential norm s0 is supplied): h_{E0}(psi) <= h_{W_c}(psi).
    Reports the maximal violations over the angle grid; the caller applies its
    tolerance.
    """
    if not sig.quadratic:
        raise NotQuadratic(f"residual {sig.residual:.3e} exceeds the quadratic tolerance")
    A = linalg.as_matrix(A)
    angles = uniform_angles(grid)
    E = scaled_ellipse(sig, c, sig.s)
    hW = np.array([kyfan_support(A, c, psi) for psi in angles])
    hE = np.asarray(ellipse_support(E, angles))
    max_outer = float((hW - hE).max())
    E0 = None
    max_inner = None
    if s0 is not None:
        E0 = scaled_ellipse(sig, c, float(s0))
        hE0 = np.asarray(ellipse_support(E0, angles))
        max_inner = float((hE0 - hW).max())
    return SandwichReport(
        outer=E, inner=E0, max_violation_outer=max_outer, max_violation_inner=max_inner, grid=grid
    )
