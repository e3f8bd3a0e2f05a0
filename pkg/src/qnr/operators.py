"""Finite-section generators and closed-form norm predictors for concrete
operator families.

Families: composition operators f -> f(phi(z)) on the Hardy space for the
disc involution phi(z) = (p - z)/(1 - conj(p) z); Hankel matrices of a
power-type circle symbol; the Cauchy singular integral operator on the circle
(diagonal +-1 in the Fourier basis); plus predictors for circle-bundle bounds,
the two-arc curve, the Dirichlet-space composition norm, and weighted
composition norms. All the generators produce leading N x N truncations in
the monomial / Fourier basis; all the predictors return exact closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .geometry import EllipseDisc

ABS_P_LIMIT = 1 - 1e-9
GOLDEN_XI_TOL = 1e-10
UNBOUNDED_GUARD = 1e15
WEIGHTED_GRID_DEFAULT = 4096


class InvalidParameter(ValueError):
    """Family parameter outside its admissible domain."""


class WeightNotAdmissible(ValueError):
    """Hankel norm bound h >= 1: the norm chain breaks down."""


class UnboundedModel(ValueError):
    """Weight ratio exceeds the overflow guard: the operator is unbounded."""


@dataclass(frozen=True)
class CompositionModel:
    """Composition family parameters: symbol point p, function space, size."""

    p: complex
    space: str = "hardy"
    N: int = 64

    def __post_init__(self):
        if abs(complex(self.p)) > ABS_P_LIMIT:
            raise InvalidParameter(f"|p| = {abs(complex(self.p))} too close to 1")
        if self.space not in ("hardy", "dirichlet"):
            raise InvalidParameter(f"unknown space {self.space!r}")
        if self.N < 1:
            raise InvalidParameter("N must be positive")

    def matrix(self) -> np.ndarray:
        if self.space != "hardy":
            raise InvalidParameter("matrix models exist for the Hardy space only")
        return composition_matrix(self.p, self.N)


@dataclass(frozen=True)
class HankelModel:
    """Hankel family parameters plus the symbol coefficients c_1 .. c_{2N-1}."""

    beta: float
    N: int
    coeffs: np.ndarray

    def matrix(self) -> np.ndarray:
        """N x N Hankel matrix H[m][n] = c_{m+n+1}."""
        idx = np.arange(self.N)
        return np.asarray(self.coeffs)[idx[:, None] + idx[None, :]].astype(complex)


@dataclass(frozen=True)
class PredictorResult:
    """Closed-form prediction bundle for one operator family.

    norm is None when the available formulas pin only the essential norm.
    Ellipse axes always satisfy major = v + 1/v for the corresponding norm v.
    """

    norm: float | None
    ess_norm: float
    ellipse_W: EllipseDisc | None
    ellipse_Wess: EllipseDisc
    attained: str          # "yes" | "no" | "unknown"
    provenance: str


def _involution_ellipse(v: float, boundary: str) -> EllipseDisc:
    # foci +-1, major v + 1/v: the range of an involution scaled by its norm
    return EllipseDisc(-1.0 + 0j, 1.0 + 0j, v + 1.0 / v, boundary)


def composition_matrix(p: complex, N: int) -> np.ndarray:
    """Leading N x N matrix of the composition operator in the monomial basis.

    Column n holds the Taylor coefficients of phi(z)^n for the involution
    phi(z) = p - (1 - |p|^2) sum_{k>=1} conj(p)^{k-1} z^k; columns are built
    by truncated power-series multiplication.
    """
    p = complex(p)
    if abs(p) > ABS_P_LIMIT:
        raise InvalidParameter(f"|p| = {abs(p)} too close to 1")
    if N < 1:
        raise InvalidParameter("N must be positive")
    phi = np.zeros(N, dtype=complex)
    phi[0] = p
    if N > 1:
        k = np.arange(1, N)
        phi[1:] = -(1 - abs(p) ** 2) * np.conj(p) ** (k - 1)
    M = np.zeros((N, N), dtype=complex)
    col = np.zeros(N, dtype=complex)
    col[0] = 1.0
    M[:, 0] = col
    for n in range(1, N):
        col = np.convolve(col, phi)[:N]
        M[:, n] = col
    return M


def composition_norm(p: complex) -> float:
    """Hardy-space composition norm sqrt((1 + |p|) / (1 - |p|))."""
    r = abs(complex(p))
    if r > ABS_P_LIMIT:
        raise InvalidParameter(f"|p| = {r} too close to 1")
    return math.sqrt((1 + r) / (1 - r))


def composition_predict(p: complex) -> PredictorResult:
    """Closed forms for the Hardy-space composition involution.

    Norm and essential norm coincide at sqrt((1+|p|)/(1-|p|)); the range is
    the open elliptical disc with foci +-1 and major axis 2/sqrt(1-|p|^2)
    (norm not attained) unless p = 0, where it degenerates to the closed
    segment [-1, 1]. The essential range is the closure.
    """
    v = composition_norm(p)
    at_zero = abs(complex(p)) == 0
    return PredictorResult(
        norm=v,
        ess_norm=v,
        ellipse_W=_involution_ellipse(v, "closed" if at_zero else "open"),
        ellipse_Wess=_involution_ellipse(v, "closed"),
        attained="yes" if at_zero else "no",
        provenance="inner_composition_norm",
    )


def power_weight_hankel(beta: float, N: int) -> HankelModel:
    """Hankel model of the unimodular power symbol with exponent beta.

    Coefficients c_n = (-1)^n sin(pi beta) / (pi (beta - n)) for
    n = 1 .. 2N-1 (branch cut rotated so the symbol jump sits at -1); the
    matrix entries are H[m][n] = c_{m+n+1}.
    """
    beta = float(beta)
    if not 0 < abs(beta) < 1:
        raise InvalidParameter(f"beta must satisfy 0 < |beta| < 1, got {beta}")
    if N < 1:
        raise InvalidParameter("N must be positive")
    n = np.arange(1, 2 * N)
    coeffs = (-1.0) ** n * math.sin(math.pi * beta) / (math.pi * (beta - n))
    return HankelModel(beta=beta, N=int(N), coeffs=coeffs)


def singular_norm_from_hankel(h: float) -> float:
    """Norm of the weighted circle singular operator from its Hankel norm h.

    ||S|| = sqrt((1 + h) / (1 - h)); requires 0 <= h < 1 (h >= 1 means the
    weight is not admissible and S is unbounded).
    """
    h = float(h)
    if h < 0:
        raise InvalidParameter("Hankel norm must be nonnegative")
    if h >= 1:
        raise WeightNotAdmissible(f"Hankel norm {h} >= 1")
    return math.sqrt((1 + h) / (1 - h))


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def _dominant_node(betas: np.ndarray) -> bool:
    # one exponent differs in sign from all others and |it| >= sum of the rest
    if betas.size == 1:
        return True
    for j in range(betas.size):
        others = np.delete(betas, j)
        if np.all(np.sign(others) == -np.sign(betas[j])) and abs(betas[j]) >= np.abs(others).sum():
            return True
    return False


def power_weight_predict(
    betas: Sequence[float], one_node_dominant: bool | None = None
) -> PredictorResult:
    """Closed forms for the circle singular operator with power weights.

    The essential norm is cot(pi (1 - 2 beta_max) / 4) with
    beta_max = max |beta_j|, independent of where the nodes sit. The operator
    norm equals it when a single node dominates (differs in sign from all
    others and matches or exceeds their absolute sum); otherwise the norm is
    not pinned by a closed form and is reported as None. The range is open in
    the dominant branch (norm not attained).
    """
    b = np.asarray(list(betas), dtype=float)
    if b.size == 0:
        raise InvalidParameter("need at least one exponent")
    if np.any(np.abs(b) >= 0.5):
        raise InvalidParameter("all |beta_j| must be < 1/2 for the norm pipeline")
    bmax = float(np.abs(b).max())
    ess = _cot(math.pi * (1 - 2 * bmax) / 4)
    dominant = _dominant_node(b) if one_node_dominant is None else bool(one_node_dominant)
    if dominant:
        return PredictorResult(
            norm=ess,
            ess_norm=ess,
            ellipse_W=_involution_ellipse(ess, "open"),
            ellipse_Wess=_involution_ellipse(ess, "closed"),
            attained="no",
            provenance="power_weight_singular_norm",
        )
    return PredictorResult(
        norm=None,
        ess_norm=ess,
        ellipse_W=None,
        ellipse_Wess=_involution_ellipse(ess, "closed"),
        attained="unknown",
        provenance="power_weight_singular_norm",
    )


def cauchy_circle(N: int) -> np.ndarray:
    """Cauchy singular operator on the circle over a symmetric index window.

    Diagonal +1 on analytic Fourier modes (index >= 0) and -1 on
    anti-analytic ones; window indices -floor(N/2) .. ceil(N/2)-1 in
    ascending order. An exact involution.
    """
    if N < 2:
        raise InvalidParameter("window must contain at least 2 modes")
    k = np.arange(-(N // 2), N - N // 2)
    return np.diag(np.where(k >= 0, 1.0, -1.0)).astype(complex)


class BundleBound(NamedTuple):
    norm_lower: float
    major_axis_lower: float


def bundle_predict(m: int) -> BundleBound:
    """Lower bounds for the m-fold circle bundle: (cot(pi/4m), 2 csc(pi/2m)).

    Known to be equalities for m = 1, 2, 3 (see bundle_equality_known). The
    cotangent is evaluated through the half-angle form (1 + cos 2t)/sin 2t,
    which is exact at m = 1.
    """
    if m < 1 or int(m) != m:
        raise InvalidParameter("m must be a positive integer")
    t2 = math.pi / (2 * m)
    return BundleBound((1 + math.cos(t2)) / math.sin(t2), 2 / math.sin(t2))


def bundle_equality_known(m: int) -> bool:
    """True when the bundle lower bounds are known to be attained."""
    return m in (1, 2, 3)


def _log_arc_objective(xi: float, phi: float) -> float:
    # log of sinh(pi phi xi) / cosh(pi xi), stable for large xi
    if xi <= 0:
        return -math.inf
    a = math.pi * phi * xi
    b = math.pi * xi
    return a - b + math.log1p(-math.exp(-2 * a)) - math.log1p(math.exp(-2 * b))


def arcs_predict(phi: float) -> PredictorResult:
    """Closed forms for the two-arc curve with opening parameter phi in (0,1).

    D = sup over xi >= 0 of sinh(pi phi xi)/cosh(pi xi) is found by
    golden-section search on [0, 10/(pi (1-phi))] (the objective decays like
    exp(-pi (1-phi) xi) beyond); norm = essential norm = D + sqrt(D^2 + 1).
    """
    phi = float(phi)
    if not 0 < phi < 1:
        raise InvalidParameter(f"phi must lie in (0, 1), got {phi}")
    lo, hi = 0.0, 10 / (math.pi * (1 - phi))
    invgold = (math.sqrt(5) - 1) / 2
    x1 = hi - (hi - lo) * invgold
    x2 = lo + (hi - lo) * invgold
    f1 = _log_arc_objective(x1, phi)
    f2 = _log_arc_objective(x2, phi)
    while hi - lo > GOLDEN_XI_TOL:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + (hi - lo) * invgold
            f2 = _log_arc_objective(x2, phi)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - (hi - lo) * invgold
            f1 = _log_arc_objective(x1, phi)
    D = math.exp(_log_arc_objective((lo + hi) / 2, phi))
    v = D + math.sqrt(D * D + 1)
    return PredictorResult(
        norm=v,
        ess_norm=v,
        ellipse_W=_involution_ellipse(v, "unknown"),
        ellipse_Wess=_involution_ellipse(v, "closed"),
        attained="unknown",
        provenance="two_arc_supremum",
    )


def dirichlet_predict(p: complex) -> PredictorResult:
    """Closed forms for the Dirichlet-space composition involution.

    With L = -log(1 - |p|^2): norm = (sqrt(L) + sqrt(4 + L))/2, attained, so
    the range is the closed elliptical disc with foci +-1 and major axis
    norm + 1/norm (= sqrt(4 + L)); the essential norm is 1 and the essential
    range is the segment [-1, 1]. Matrix models are not generated for this
    space; the predictor is the deliverable.
    """
    r = abs(complex(p))
    if r > ABS_P_LIMIT:
        raise InvalidParameter(f"|p| = {r} too close to 1")
    L = -math.log1p(-(r * r))
    v = (math.sqrt(L) + math.sqrt(4 + L)) / 2
    return PredictorResult(
        norm=v,
        ess_norm=1.0,
        ellipse_W=_involution_ellipse(v, "closed"),
        ellipse_Wess=_involution_ellipse(1.0, "closed"),
        attained="yes",
        provenance="dirichlet_composition_norm",
    )


def weighted_composition_norm(
    p: complex,
    rho: Callable[[np.ndarray], np.ndarray] | np.ndarray,
    grid: int | None = None,
) -> tuple[float, str]:
    """Norm of the composition operator on the rho-weighted Hardy space.

    M = sqrt(1 - |p|^2) * sup over |t| = 1 of rho(phi(t)) / (|p - t| rho(t)),
    maximized over a uniform angle grid (default 4096). When rho is callable
    two bisection refinement passes sharpen the maximizer; a precomputed
    sample array is used as-is (nothing new can be evaluated), making the
    result a lower-bound-biased estimate either way.

    Returns (M, attained) where attained is "yes" iff the objective is
    constant over the grid within 1e-8 relative. Raises UnboundedModel when
    sup rho(phi(t))/rho(t) exceeds the overflow guard.
    """
    p = complex(p)
    if abs(p) > ABS_P_LIMIT:
        raise InvalidParameter(f"|p| = {abs(p)} too close to 1")

    def phi_angle(theta):
        t = np.exp(1j * np.asarray(theta))
        return np.angle((p - t) / (1 - np.conj(p) * t))

    if callable(rho):
        m = int(grid) if grid is not None else WEIGHTED_GRID_DEFAULT
        theta = 2 * np.pi * np.arange(m) / m
        rho_t = np.asarray(rho(theta), dtype=float)
        rho_phi = np.asarray(rho(phi_angle(theta)), dtype=float)
    else:
        rho_t = np.asarray(rho, dtype=float)
        m = rho_t.shape[0]
        if grid is not None and int(grid) != m:
            raise InvalidParameter("grid size does not match the rho sample length")
        theta = 2 * np.pi * np.arange(m) / m
        # nearest-sample lookup of rho at the composed angles
        idx = np.rint(np.mod(phi_angle(theta), 2 * np.pi) / (2 * np.pi / m)).astype(int) % m
        rho_phi = rho_t[idx]
    if np.any(rho_t <= 0) or np.any(rho_phi <= 0):
        raise InvalidParameter("rho must be strictly positive on the circle")

    ratio = rho_phi / rho_t
    if ratio.max() > UNBOUNDED_GUARD:
        raise UnboundedModel("weight ratio exceeds the overflow guard")
    t = np.exp(1j * theta)
    objective = ratio / np.abs(p - t)
    attained = "yes" if objective.max() - objective.min() <= 1e-8 * objective.max() else "no"
    best = float(objective.max())

    if callable(rho):
        theta_star = theta[int(np.argmax(objective))]
        step = 2 * np.pi / m
        for _ in range(2):
            step /= 2
            cand = np.array([theta_star - step, theta_star, theta_star + step])
            vals = np.asarray(rho(phi_angle(cand)), dtype=float) / (
                np.abs(p - np.exp(1j * cand)) * np.asarray(rho(cand), dtype=float)
            )
            j = int(np.argmax(vals))
            theta_star = cand[j]
            best = max(best, float(vals[j]))

    return math.sqrt(1 - abs(p) ** 2) * best, attained
