"""Hermite expansions, the Bargmann transform and coefficient-based space classification."""

from .bargmann import (
    BoxFunction,
    ClosedForm,
    SampledEntire,
    SeriesFunction,
    TruncationWarning,
    bargmann_kernel,
    bargmann_quadrature,
    bargmann_series,
    bridge_point,
    groechenig_lift,
    pi_a_box_closed_form,
    reproducing_project,
    stft_direct,
    stft_gaussian,
    uv_apply,
)
from .classify import (
    ClassificationReport,
    DecayFit,
    SpaceLabel,
    classify,
    equiv_backward_check,
    equiv_forward_check,
    fit_decay,
    gaussian_membership,
)
from .fracft import fractional_ft, verify_commutes_with_H, verify_isometry
from .hermite import (
    HermiteExpansion,
    analyze,
    apply_H,
    hermite_eval,
    l2_inner,
    synthesize,
)
from .norms import (
    GridSpec,
    PlaneGrid,
    a2_weighted_norm_quadrature,
    a2_weighted_norm_series,
    mixed_norm,
    modulation_norm,
    pi_a_weighted_l1_check,
    pilipovic_seminorm,
)
from .specs import CoefficientRule, Gaussian, HermiteCombo, Sampled, phi
from .weights import (
    GS,
    FlatExp,
    Poly,
    Quadratic,
    Radial,
    SequenceWeight,
    check_gauss_sandwich,
    check_moderate,
    dirichlet_simplex_identity,
    theta_closed_exponential,
    theta_closed_linear_exponential,
    theta_from_radial,
    theta_from_separable,
    weight_eval,
)

__version__ = "0.1.0"

__all__ = [
    "fractional_ft",
    "verify_commutes_with_H",
    "verify_isometry",
    "CoefficientRule",
    "Gaussian",
    "HermiteCombo",
    "Sampled",
    "phi",
    "BoxFunction",
    "ClosedForm",
    "SampledEntire",
    "SeriesFunction",
    "TruncationWarning",
    "bargmann_kernel",
    "bargmann_quadrature",
    "bargmann_series",
    "bridge_point",
    "groechenig_lift",
    "pi_a_box_closed_form",
    "reproducing_project",
    "stft_direct",
    "stft_gaussian",
    "uv_apply",
    "ClassificationReport",
    "DecayFit",
    "SpaceLabel",
    "classify",
    "equiv_backward_check",
    "equiv_forward_check",
    "fit_decay",
    "gaussian_membership",
    "HermiteExpansion",
    "analyze",
    "apply_H",
    "hermite_eval",
    "l2_inner",
    "synthesize",
    "GridSpec",
    "PlaneGrid",
    "a2_weighted_norm_quadrature",
    "a2_weighted_norm_series",
    "mixed_norm",
    "modulation_norm",
    "pi_a_weighted_l1_check",
    "pilipovic_seminorm",
    "GS",
    "FlatExp",
    "Poly",
    "Quadratic",
    "Radial",
    "SequenceWeight",
    "check_gauss_sandwich",
    "check_moderate",
    "dirichlet_simplex_identity",
    "theta_closed_exponential",
    "theta_closed_linear_exponential",
    "theta_from_radial",
    "theta_from_separable",
    "weight_eval",
]
