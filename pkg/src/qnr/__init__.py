"""Numerical ranges of quadratic matrices.

Computes classical, c-, and finite-section-estimated essential numerical
ranges; recognizes quadratic matrices (A^2 = 2 mu A + nu I) and verifies the
elliptical-disc shape of their ranges; ships generators and closed-form norm
predictors for composition, Hankel, and Cauchy singular operator families.
"""
__version__ = "0.1.0"

from .cnumrange import Coefficients, compute_wc, frame_oracle, kyfan_support, sandwich_check
from .geometry import ConvexRegion, EllipseDisc, ellipse_support, hausdorff_support
from .linalg import hermitian_eig, spectral_norm
from .numrange import compute_range, sample_oracle, support_value
from .quadratic import (
    CanonicalForm,
    EllipsePrediction,
    QuadraticSignature,
    assemble_canonical,
    canonical_decompose,
    classify_closed,
    estimate_ess_norm,
    fit_quadratic,
    predict_W,
    predict_Wess,
)

__all__ = [
    "__version__",
    "Coefficients",
    "ConvexRegion",
    "CanonicalForm",
    "EllipseDisc",
    "EllipsePrediction",
    "QuadraticSignature",
    "assemble_canonical",
    "canonical_decompose",
    "classify_closed",
    "compute_range",
    "compute_wc",
    "ellipse_support",
    "estimate_ess_norm",
    "fit_quadratic",
    "frame_oracle",
    "hausdorff_support",
    "hermitian_eig",
    "kyfan_support",
    "predict_W",
    "predict_Wess",
    "sample_oracle",
    "sandwich_check",
    "spectral_norm",
    "support_value",
]
