"""Shared helpers: seeded generators for random quadratic assemblies and the
closed-form spectrum of their directional real parts (used as an independent
oracle in several suites).
"""
import numpy as np
import pytest

from qnr._random import make_rng
from qnr.quadratic import assemble_canonical


def random_assembly(rng, n_max=12, real_spectrum=False):
    """Random canonical quadratic matrix plus the data that built it.

    Returns (A, lam1, lam2, x_values, (d1, d2)). Eigenvalues are well
    separated (gap >= 0.3) so the distinct-eigenvalue branch is exercised.
    """
    while True:
        lam1 = complex(rng.uniform(-2, 2), 0 if real_spectrum else rng.uniform(-2, 2))
        lam2 = complex(rng.uniform(-2, 2), 0 if real_spectrum else rng.uniform(-2, 2))
        if abs(lam1 - lam2) >= 0.3:
            break
    d1 = int(rng.integers(0, 3))
    d2 = int(rng.integers(0, 3))
    k = int(rng.integers(1, max(2, (n_max - d1 - d2) // 2 + 1)))
    xs = np.sort(rng.uniform(0.1, 2.0, size=k))[::-1]
    A = assemble_canonical(lam1, lam2, xs, dims=(d1, d2), seed=int(rng.integers(2**32)))
    return A, lam1, lam2, xs, (d1, d2)


def canonical_directional_spectrum(mu, delta, xs, d1, d2, psi):
    """Eigenvalues of Re(e^{-i psi} A) for the canonical quadratic matrix.

    Normal parts contribute Re(mu e^{-i psi}) +- Re(delta e^{-i psi}); each
    coupled block with singular value x contributes the pair
    Re(mu e^{-i psi}) +- sqrt(Re(delta e^{-i psi})^2 + x^2).
    """
    base = (mu * np.exp(-1j * psi)).real
    dcos = (delta * np.exp(-1j * psi)).real
    vals = [base + dcos] * d1 + [base - dcos] * d2
    for x in xs:
        r = np.sqrt(dcos**2 + x**2)
        vals.extend([base + r, base - r])
    return np.array(sorted(vals, reverse=True))


@pytest.fixture
def rng():
    return make_rng(20240817)
