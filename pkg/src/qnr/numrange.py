"""Classical numerical range W(A) via support functions.

W(A) = { <Ax, x> : ||x|| = 1 } is convex; its support function in the outer
normal direction psi is the top eigenvalue of the Hermitian part of
e^{-i psi} A, and the corresponding top eigenvector yields a boundary witness
<Av, v> that certifies inner membership. A brute-force Rayleigh-quotient
sampler provides an independent containment oracle.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg
from ._random import make_rng, unit_vectors
from .geometry import ConvexRegion, uniform_angles

MIN_GRID = 8


@dataclass(frozen=True)
class SupportTable(ConvexRegion):
    """ConvexRegion whose witnesses are Rayleigh quotients of top eigenvectors.

    Each boundary point z_i = <A v_i, v_i> lies in W(A) by construction and on
    the support line of its angle up to eigensolver noise.
    """


def _directional_hermitian(A: np.ndarray, psi: float) -> np.ndarray:
    B = np.exp(-1j * psi) * A
    return (B + B.conj().T) / 2


def support_value(A, psi: float) -> tuple[float, complex]:
    """Support value and boundary witness of W(A) at outer-normal angle psi.

    Returns (h, z) with h the top eigenvalue of Re(e^{-i psi} A) and
    z = <Av, v> for a corresponding unit eigenvector v.
    """
    A = linalg.as_matrix(A)
    h, v = linalg.top_eigenpair(_directional_hermitian(A, psi))
    z = complex(v.conj() @ (A @ v))
    return h, z


def compute_range(A, m: int = 720, workers: int = 1) -> SupportTable:
    """Sample W(A) on a uniform m-angle grid.

    The returned table sandwiches W(A): the convex hull of the witnesses is
    contained in it, and it is contained in the intersection of the sampled
    half-planes. workers > 1 splits the angle sweep over threads (the
    eigensolver releases the GIL); assembly order is deterministic either way.
    """
    A = linalg.as_matrix(A)
    if m < MIN_GRID:
        raise ValueError(f"grid must have at least {MIN_GRID} angles, got {m}")
    angles = uniform_angles(m)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda psi: support_value(A, psi), angles))
    else:
        results = [support_value(A, psi) for psi in angles]
    h = np.array([r[0] for r in results])
    z = np.array([r[1] for r in results])
    return SupportTable(angles=angles, support_values=h, boundary_points=z)


def sample_oracle(A, trials: int, seed=None) -> np.ndarray:
    """Rayleigh quotients <Ax, x> for `trials` random unit vectors.

    Reproducible from the seed; every returned point lies in W(A) by
    definition, which makes this an independent containment check for
    compute_range.
    """
    A = linalg.as_matrix(A)
    if trials < 1:
        raise ValueError("trials must be positive")
    X = unit_vectors(A.shape[0], trials, make_rng(seed))
    return np.einsum("bi,ij,bj->b", X.conj(), A, X)
