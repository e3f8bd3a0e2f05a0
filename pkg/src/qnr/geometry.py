"""Elliptical discs, sampled convex regions, and support-function comparisons.

An EllipseDisc is stored by its foci and major-axis length (the natural
parameters of the predictions this package produces); everything else (center,
semi-axes, orientation) is derived. A ConvexRegion is a support function
sampled on a uniform angle grid together with boundary witness points.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_GRID = 720
WITNESS_TOL = 1e-9


class InvalidEllipse(ValueError):
    """Ellipse parameters violate major_axis >= focal distance."""


class GridMismatch(ValueError):
    """Support comparison between regions sampled on different angle grids."""


@dataclass(frozen=True)
class EllipseDisc:
    """Closed or open elliptical disc given by foci and major-axis length.

    Degenerate cases are allowed: a segment (major axis equal to the focal
    distance) and a point (coincident foci, zero major axis).
    boundary_included is reporting metadata ("closed" | "open" | "unknown");
    geometric operations ignore it.
    """

    focus1: complex
    focus2: complex
    major_axis: float
    boundary_included: str = "closed"

    def __post_init__(self):
        f1, f2 = complex(self.focus1), complex(self.focus2)
        if not (np.isfinite(self.major_axis) and np.isfinite([f1.real, f1.imag, f2.real, f2.imag]).all()):
            raise InvalidEllipse("non-finite ellipse parameters")
        if self.major_axis < abs(f1 - f2) - 1e-12:
            raise InvalidEllipse(
                f"major axis {self.major_axis} shorter than focal distance {abs(f1 - f2)}"
            )
        if self.boundary_included not in ("closed", "open", "unknown"):
            raise InvalidEllipse(f"bad boundary flag {self.boundary_included!r}")

    @property
    def center(self) -> complex:
        return (complex(self.focus1) + complex(self.focus2)) / 2

    @property
    def focal_distance(self) -> float:
        return abs(complex(self.focus1) - complex(self.focus2))

    @property
    def minor_axis(self) -> float:
        # derived, never stored: sqrt(major^2 - focal^2) clipped at 0
        return float(np.sqrt(max(self.major_axis**2 - self.focal_distance**2, 0.0)))

    @property
    def axis_angle(self) -> float:
        """Direction of the major axis (0 when degenerate to a point)."""
        d = complex(self.focus1) - complex(self.focus2)
        return float(np.angle(d)) if abs(d) > 0 else 0.0

    def is_point(self, tol: float = 0.0) -> bool:
        return self.major_axis <= tol and self.focal_distance <= tol


def ellipse_support(E: EllipseDisc, psi) -> float | np.ndarray:
    """Support function h(psi) = max over the disc of Re(e^{-i psi} z).

    Accepts a scalar angle or an array of angles.
    """
    psi = np.asarray(psi, dtype=float)
    a = E.major_axis / 2
    b = E.minor_axis / 2
    tau = E.axis_angle
    c = E.center
    h = (c * np.exp(-1j * psi)).real + np.sqrt(
        a**2 * np.cos(psi - tau) ** 2 + b**2 * np.sin(psi - tau) ** 2
    )
    return float(h) if h.ndim == 0 else h


def ellipse_contains(E: EllipseDisc, z: complex, tol: float = 1e-9) -> str:
    """Classify a point against the disc: "inside", "boundary", or "outside".

    Uses the focal-sum characterization |z - f1| + |z - f2| vs major axis with
    a tolerance band of width tol.
    """
    fs = abs(z - complex(E.focus1)) + abs(z - complex(E.focus2))
    if fs < E.major_axis - tol:
        return "inside"
    if fs <= E.major_axis + tol:
        return "boundary"
    return "outside"


@dataclass(frozen=True)
class ConvexRegion:
    """Support samples of a convex set over a uniform angle grid on [0, 2 pi).

    boundary_points[i] is a witness inside the set lying on (or near) the
    support line with outer normal angles[i]. Construction rejects witnesses
    that violate any sampled half-plane by more than WITNESS_TOL.
    """

    angles: np.ndarray
    support_values: np.ndarray
    boundary_points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "angles", np.asarray(self.angles, dtype=float))
        object.__setattr__(self, "support_values", np.asarray(self.support_values, dtype=float))
        object.__setattr__(self, "boundary_points", np.asarray(self.boundary_points, dtype=complex))
        m = self.angles.shape[0]
        if not (self.support_values.shape[0] == m == self.boundary_points.shape[0]):
            raise ValueError("angles, support values and witnesses must have equal length")
        defect = self.witness_defect()
        if defect > WITNESS_TOL:
            raise ValueError(f"witness violates a supporting half-plane by {defect:.3e}")

    @property
    def grid_size(self) -> int:
        return int(self.angles.shape[0])

    def witness_defect(self) -> float:
        """Max over all (angle, witness) pairs of Re(e^{-i psi} z) - h(psi).

        Nonpositive (up to float noise) for a genuine convex set: every
        witness must respect every supporting half-plane.
        """
        proj = (np.exp(-1j * self.angles)[:, None] * self.boundary_points[None, :]).real
        return float((proj - self.support_values[:, None]).max())

    def width(self, i: int) -> float:
        """Width along grid direction i: h(psi_i) + h(psi_i + pi).

        Requires an even grid so the antipodal angle is on the grid.
        """
        m = self.grid_size
        if m % 2:
            raise GridMismatch("width needs an even angle grid")
        return float(self.support_values[i] + self.support_values[(i + m // 2) % m])

    def major_axis_estimate(self) -> float:
        """Largest width over the grid (major-axis length for an ellipse)."""
        m = self.grid_size
        if m % 2:
            raise GridMismatch("major axis estimate needs an even angle grid")
        half = np.roll(self.support_values, -m // 2)
        return float((self.support_values + half).max())


def uniform_angles(m: int) -> np.ndarray:
    return 2 * np.pi * np.arange(m) / m


def _support_on(obj, angles: np.ndarray) -> np.ndarray:
    if isinstance(obj, EllipseDisc):
        return np.asarray(ellipse_support(obj, angles))
    if isinstance(obj, ConvexRegion):
        if obj.grid_size != angles.shape[0] or not np.allclose(obj.angles, angles, atol=1e-12):
            raise GridMismatch("regions sampled on different angle grids")
        return obj.support_values
    raise TypeError(f"unsupported convex description {type(obj).__name__}")


def hausdorff_support(A, B, m: int | None = None) -> float:
    """Hausdorff distance between two convex descriptions via support sampling.

    A and B are EllipseDisc or ConvexRegion. Regions must share their grid
    (GridMismatch otherwise); for two ellipses a uniform grid of m angles
    (default 720) is used. For convex compacts max |h_A - h_B| over the grid
    equals the Hausdorff distance up to grid error.
    """
    grids = [o.angles for o in (A, B) if isinstance(o, ConvexRegion)]
    if grids:
        angles = grids[0]
        if m is not None and m != angles.shape[0]:
            raise GridMismatch(f"grid {m} does not match region grid {angles.shape[0]}")
    else:
        angles = uniform_angles(m if m is not None else DEFAULT_GRID)
    hA = _support_on(A, angles)
    hB = _support_on(B, angles)
    return float(np.abs(hA - hB).max())
