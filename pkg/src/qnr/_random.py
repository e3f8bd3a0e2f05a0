"""Seeded randomness helpers.

All stochastic code in the package draws from a counter-based (Philox)
generator so results are reproducible from an explicit seed and independent
streams can be split off cheaply.
"""
from __future__ import annotations

import numpy as np

FRAME_COND_LIMIT = 1e8


def make_rng(seed=None) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary (QR of a complex Ginibre sample)."""
    G = complex_gaussian(rng, (n, n))
    Q, R = np.linalg.qr(G)
    d = np.diag(R)
    # fix the phase ambiguity of QR so the distribution is Haar
    return Q * (d / np.abs(d))


def unit_vectors(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """count x n array of random unit vectors (normalized complex Gaussian)."""
    X = complex_gaussian(rng, (count, n))
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    # a zero draw has probability zero; redraw defensively anyway
    while (bad := norms[:, 0] < 1e-150).any():
        X[bad] = complex_gaussian(rng, (int(bad.sum()), n))
        norms = np.linalg.norm(X, axis=1, keepdims=True)
    return X / norms


def random_frames(
    n: int, k: int, count: int, rng: np.random.Generator, cond_limit: float = FRAME_COND_LIMIT
) -> np.ndarray:
    """count orthonormal k-frames in C^n, shaped (count, n, k).

    Frames come from QR of complex Gaussian n x k samples; draws whose Gaussian
    factor has condition number above cond_limit are redrawn (guards the
    measure-zero near-degenerate event).
    """
    if k > n:
        raise ValueError(f"frame size {k} exceeds dimension {n}")
    G = complex_gaussian(rng, (count, n, k))
    while (bad := np.linalg.cond(G) > cond_limit).any():
        G[bad] = complex_gaussian(rng, (int(bad.sum()), n, k))
    Q = np.linalg.qr(G)[0]
    return Q
