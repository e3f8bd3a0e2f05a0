"""Elliptical discs, support functions, and Hausdorff comparison contracts."""
import numpy as np
import pytest

from qnr._random import make_rng
from qnr.geometry import (
    ConvexRegion,
    EllipseDisc,
    GridMismatch,
    InvalidEllipse,
    ellipse_contains,
    ellipse_support,
    hausdorff_support,
    uniform_angles,
)


def random_ellipse(rng):
    f1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    f2 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    major = abs(f1 - f2) + rng.uniform(0, 3)
    return EllipseDisc(f1, f2, major)


def test_validation():
    with pytest.raises(InvalidEllipse):
        EllipseDisc(-1, 1, 1.0)                      # shorter than focal distance
    with pytest.raises(InvalidEllipse):
        EllipseDisc(0, 0, np.inf)
    with pytest.raises(InvalidEllipse):
        EllipseDisc(0, 0, 1.0, "sometimes")
    # degenerate segment and point are fine
    assert EllipseDisc(-1, 1, 2.0).minor_axis == 0.0
    assert EllipseDisc(3, 3, 0.0).is_point()


def test_derived_axes():
    E = EllipseDisc(-1, 1, 2 * np.sqrt(2))
    assert abs(E.minor_axis - 2.0) <= 1e-12
    assert abs(E.focal_distance - 2.0) <= 1e-12
    assert E.center == 0


def test_support_examples():
    assert abs(ellipse_support(EllipseDisc(-1, 1, 2.0), 0.0) - 1.0) <= 1e-12
    assert abs(ellipse_support(EllipseDisc(-1, 1, 2 * np.sqrt(2)), np.pi / 2) - 1.0) <= 1e-12
    assert abs(ellipse_support(EllipseDisc(3, 3, 0.0), np.pi) - (-3.0)) <= 1e-12


def test_support_periodic_and_width():
    rng = make_rng(11)
    psi = uniform_angles(64)
    for _ in range(20):
        E = random_ellipse(rng)
        h = ellipse_support(E, psi)
        h2 = ellipse_support(E, psi + 2 * np.pi)
        np.testing.assert_allclose(h, h2, atol=1e-10)
        # width h(psi) + h(psi + pi) is nonnegative for a nonempty set
        hop = ellipse_support(E, psi + np.pi)
        assert np.all(h + hop >= -1e-12)


def test_support_vectorized_matches_scalar():
    E = EllipseDisc(1 + 1j, -0.5, 4.0)
    psi = uniform_angles(16)
    vec = ellipse_support(E, psi)
    for i, p in enumerate(psi):
        assert abs(vec[i] - ellipse_support(E, float(p))) <= 1e-14


def test_contains_examples():
    E = EllipseDisc(-1, 1, 4.0)
    assert ellipse_contains(E, 0.0) == "inside"
    assert ellipse_contains(E, 2.0) == "boundary"
    assert ellipse_contains(E, 5.0) == "outside"


def test_contains_consistent_with_support():
    rng = make_rng(22)
    psi = uniform_angles(360)
    for _ in range(10):
        E = random_ellipse(rng)
        h = ellipse_support(E, psi)
        for _ in range(20):
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            verdict = ellipse_contains(E, z, tol=1e-8)
            strictly_inside = np.all((np.exp(-1j * psi) * z).real < h - 1e-8)
            if verdict == "inside":
                assert np.all((np.exp(-1j * psi) * z).real <= h + 1e-8)
            if strictly_inside:
                assert verdict in ("inside", "boundary")


def test_hausdorff_examples():
    E = EllipseDisc(-1, 1, 4.0)
    shifted = EllipseDisc(0, 2, 4.0)
    assert hausdorff_support(E, E) == 0.0
    assert abs(hausdorff_support(E, shifted) - 1.0) <= 1e-12
    disc = EllipseDisc(0, 0, 2.0)
    point = EllipseDisc(0, 0, 0.0)
    assert abs(hausdorff_support(disc, point) - 1.0) <= 1e-12


def test_hausdorff_metric_properties():
    rng = make_rng(33)
    for _ in range(15):
        A, B, C = (random_ellipse(rng) for _ in range(3))
        dab = hausdorff_support(A, B)
        assert dab == hausdorff_support(B, A)
        assert dab <= hausdorff_support(A, C) + hausdorff_support(C, B) + 1e-14
        assert dab >= 0


def test_hausdorff_grid_mismatch():
    psi8 = uniform_angles(8)
    psi16 = uniform_angles(16)
    r8 = ConvexRegion(psi8, np.ones(8), np.zeros(8, dtype=complex))
    r16 = ConvexRegion(psi16, np.ones(16), np.zeros(16, dtype=complex))
    with pytest.raises(GridMismatch):
        hausdorff_support(r8, r16)


def test_region_witness_invariant_enforced():
    psi = uniform_angles(8)
    # witness at 2 violates the h = 1 half-planes
    with pytest.raises(ValueError):
        ConvexRegion(psi, np.ones(8), np.full(8, 2.0 + 0j))


def test_major_axis_estimate():
    E = EllipseDisc(-1, 1, 2 * np.sqrt(2))
    psi = uniform_angles(720)
    h = np.asarray(ellipse_support(E, psi))
    pts = []
    # boundary witnesses of the ellipse: gradient parameterization
    a, b = E.major_axis / 2, E.minor_axis / 2
    pts = a * np.cos(psi) + 1j * b * np.sin(psi)
    reg = ConvexRegion(psi, h, pts)
    assert abs(reg.major_axis_estimate() - 2 * np.sqrt(2)) <= 1e-3
