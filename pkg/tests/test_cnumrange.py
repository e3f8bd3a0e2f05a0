"""c-numerical ranges: Ky Fan support, frame oracle, sandwich containment."""
import numpy as np
import pytest

from conftest import canonical_directional_spectrum, random_assembly
from qnr._random import complex_gaussian, make_rng
from qnr.cnumrange import (
    Coefficients,
    TooManyCoefficients,
    attaining_frame,
    compute_wc,
    frame_oracle,
    kyfan_support,
    sandwich_check,
    scaled_ellipse,
)
from qnr.numrange import support_value
from qnr.quadratic import fit_quadratic


def random_coeffs(rng, k):
    vals = rng.uniform(-2, 2, size=k)
    vals[np.abs(vals) < 0.05] = 0.5
    return Coefficients.from_values(vals)


def test_coefficients_canonical_form():
    c = Coefficients.from_values([0.5, -1.0, 2.0])
    np.testing.assert_array_equal(c.values, [2.0, 0.5, -1.0])
    assert c.k == 3
    assert c.norm_c == 3.5
    assert (c.m_plus, c.m_minus, c.m) == (2, 1, 2)


def test_coefficients_drop_zeros_and_permutation_invariance():
    a = Coefficients.from_values([1.0, 0.0, -2.0])
    assert a.k == 2
    np.testing.assert_array_equal(a.values, [1.0, -2.0])
    b = Coefficients.from_values([-2.0, 1.0, 0.0])
    np.testing.assert_array_equal(a.values, b.values)


def test_coefficients_collinear_rotation():
    # the largest-modulus entry is rotated onto the positive real axis
    c = Coefficients.from_values(np.array([1j, -2j]))
    np.testing.assert_allclose(c.values, [2.0, -1.0], atol=1e-12)
    assert abs(c.rotation + np.pi / 2) <= 1e-12
    back = sorted(c.values * np.exp(1j * c.rotation), key=lambda z: z.imag)
    np.testing.assert_allclose(back, [-2j, 1j], atol=1e-12)
    with pytest.raises(ValueError):
        Coefficients.from_values([1.0, 1j])    # not collinear through the origin
    with pytest.raises(ValueError):
        Coefficients.from_values([0.0])


def test_kyfan_reduces_to_support_value():
    rng = make_rng(61)
    c = Coefficients.from_values([1.0])
    for _ in range(10):
        A = complex_gaussian(rng, (6, 6))
        for psi in (0.0, 0.7, 2.0, 4.5):
            h, _ = support_value(A, psi)
            assert abs(kyfan_support(A, c, psi) - h) <= 1e-12


def test_kyfan_examples():
    A = np.diag([1.0, -1.0])
    assert abs(kyfan_support(A, Coefficients.from_values([1.0, 1.0]), 0.0)) <= 1e-12
    assert abs(kyfan_support(A, Coefficients.from_values([1.0, -1.0]), 0.0) - 2.0) <= 1e-12


def test_kyfan_padded_pairing_regression():
    # negative weights must pair with the bottom of the spectrum when k < n
    H = np.diag([3.0, 2.0, -5.0])
    c = Coefficients.from_values([1.0, -1.0])
    assert abs(kyfan_support(H, c, 0.0) - 8.0) <= 1e-12


def test_kyfan_rejects_too_many():
    with pytest.raises(TooManyCoefficients):
        kyfan_support(np.eye(2), Coefficients.from_values([1.0, 1.0, 1.0]), 0.0)


def test_attaining_frame_achieves_support():
    rng = make_rng(62)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, n + 1))
        A = complex_gaussian(rng, (n, n))
        c = random_coeffs(rng, k)
        psi = rng.uniform(0, 2 * np.pi)
        Q, w = attaining_frame(A, c, psi)
        got = sum(
            wj * np.vdot(Q[:, j], (np.exp(-1j * psi) * A) @ Q[:, j]).real
            for j, wj in enumerate(w)
        )
        assert abs(got - kyfan_support(A, c, psi)) <= 1e-10
        assert np.linalg.norm(Q.conj().T @ Q - np.eye(Q.shape[1])) <= 1e-10


def test_frame_oracle_never_exceeds_support():
    rng = make_rng(63)
    for _ in range(8):
        n = int(rng.integers(2, 8))
        k = int(rng.integers(1, n + 1))
        A = complex_gaussian(rng, (n, n))
        c = random_coeffs(rng, k)
        vals = frame_oracle(A, c, 2000, seed=int(rng.integers(2**32)))
        for psi in np.linspace(0, 2 * np.pi, 36, endpoint=False):
            h = kyfan_support(A, c, psi)
            assert (np.exp(-1j * psi) * vals).real.max() <= h + 1e-9


def test_frame_oracle_trace_case():
    rng = make_rng(64)
    A = complex_gaussian(rng, (5, 5))
    c = Coefficients.from_values(np.ones(5))
    vals = frame_oracle(A, c, 100, seed=3)
    assert np.abs(vals - np.trace(A)).max() <= 1e-10


def test_frame_oracle_reproducible():
    A = complex_gaussian(make_rng(65), (4, 4))
    c = Coefficients.from_values([1.0, -0.5])
    np.testing.assert_array_equal(
        frame_oracle(A, c, 50, seed=8), frame_oracle(A, c, 50, seed=8)
    )


def test_compute_wc_examples():
    A = np.diag([1.0, -1.0])
    seg = compute_wc(A, Coefficients.from_values([1.0, -1.0]), m=720)
    assert np.abs(seg.boundary_points.imag).max() <= 1e-10
    assert abs(seg.boundary_points.real.max() - 2.0) <= 1e-10
    assert abs(seg.boundary_points.real.min() + 2.0) <= 1e-10

    pt = compute_wc(A, Coefficients.from_values([1.0, 1.0]), m=64)
    assert np.abs(pt.boundary_points).max() <= 1e-10

    rng = make_rng(66)
    B = complex_gaussian(rng, (5, 5))
    doubled = compute_wc(B, Coefficients.from_values([2.0]), m=64)
    single = compute_wc(B, Coefficients.from_values([1.0]), m=64)
    np.testing.assert_allclose(doubled.support_values, 2 * single.support_values, atol=1e-10)


def test_wc_scaling_law():
    # W_c(alpha A + beta I) = alpha W_c(A) + beta sum(c), checked on aligned grids
    rng = make_rng(67)
    m = 90
    for _ in range(10):
        n = int(rng.integers(2, 8))
        k = int(rng.integers(1, n + 1))
        A = complex_gaussian(rng, (n, n))
        c = random_coeffs(rng, k)
        j = int(rng.integers(m))
        r = rng.uniform(0.5, 2.0)
        alpha = r * np.exp(1j * (2 * np.pi * j / m))
        beta = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        t = compute_wc(A, c, m=m)
        t_a = compute_wc(alpha * A + beta * np.eye(n), c, m=m)
        expected = r * np.roll(t.support_values, j) + (
            beta * c.sum_c * np.exp(-1j * t.angles)
        ).real
        assert np.abs(expected - t_a.support_values).max() <= 1e-9 * max(1.0, r)


def test_closed_form_support_on_assemblies(rng):
    # Ky Fan support vs the block-spectrum closed form from the canonical data
    for _ in range(15):
        A, lam1, lam2, xs, (d1, d2) = random_assembly(rng, n_max=10)
        n = A.shape[0]
        mu = (lam1 + lam2) / 2
        delta = (lam1 - lam2) / 2
        k = int(rng.integers(1, n + 1))
        c = random_coeffs(rng, k)
        cpad = np.zeros(n)
        cpad[: c.k] = c.values
        cpad = np.sort(cpad)[::-1]
        for psi in (0.0, 1.1, 3.9):
            spectrum = canonical_directional_spectrum(mu, delta, xs, d1, d2, psi)
            want = float(cpad @ spectrum)
            assert abs(kyfan_support(A, c, psi) - want) <= 1e-9


def test_scaled_ellipse_foci():
    sig = fit_quadratic(np.array([[1.0, 2.0], [0.0, -1.0]]))
    c = Coefficients.from_values([1.0, 1.0])
    E = scaled_ellipse(sig, c, sig.s)
    # mu = 0, nu = 1: foci at +-2, axes scaled by ||c|| = 2
    assert abs(E.focus1 - 2.0) <= 1e-12 and abs(E.focus2 + 2.0) <= 1e-12
    assert abs(E.major_axis - 2 * (sig.s + 1 / sig.s)) <= 1e-12


def test_sandwich_single_coefficient_equality(rng):
    # c = (1): W_c = W and the outer ellipse is the predicted range itself
    for _ in range(10):
        A, *_ = random_assembly(rng)
        sig = fit_quadratic(A)
        rep = sandwich_check(A, sig, Coefficients.from_values([1.0]), grid=240)
        assert rep.max_violation_outer <= 1e-9
        assert rep.max_violation_outer >= -1e-6    # equality case: gap ~ 0


def test_sandwich_containment_random(rng):
    for _ in range(15):
        A, *_ = random_assembly(rng, n_max=10)
        sig = fit_quadratic(A)
        k = int(rng.integers(1, A.shape[0] + 1))
        c = random_coeffs(rng, k)
        rep = sandwich_check(A, sig, c, grid=240)
        assert rep.ok(1e-9)
        assert rep.inner is None


def test_sandwich_with_inner(rng):
    # with the coupling value x repeated >= k times the c-range support is
    # exactly ||c|| sqrt(x0^2 + dcos^2) + center term for every x0 <= x, so the
    # inner ellipse built from any s0 in [|2 delta|, s] is genuinely contained
    from qnr.quadratic import assemble_canonical

    for _ in range(8):
        lam1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lam2 = lam1 + complex(rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5))
        x = rng.uniform(0.2, 1.5)
        blocks = int(rng.integers(2, 5))
        A = assemble_canonical(lam1, lam2, [x] * blocks, seed=int(rng.integers(2**32)))
        sig = fit_quadratic(A)
        k = int(rng.integers(1, blocks + 1))
        c = random_coeffs(rng, k)
        s0 = rng.uniform(abs(lam1 - lam2) / 2, sig.s)
        rep = sandwich_check(A, sig, c, s0=s0, grid=240)
        assert rep.inner is not None
        assert rep.ok(1e-9)


def test_sandwich_requires_quadratic():
    A = complex_gaussian(make_rng(68), (4, 4))
    from qnr.quadratic import NotQuadratic

    with pytest.raises(NotQuadratic):
        sandwich_check(A, fit_quadratic(A), Coefficients.from_values([1.0]))
