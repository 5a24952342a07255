"""Exact enumeration and verification toolkit for simple random walks on
the integer lattice: closed-walk counts, first-return counts, endpoint
distributions, their P-recurrences/ODEs, asymptotic expansions, and the
return-probability constants.
"""

from .asymptotics import (
    AsymValue,
    LeadingConstant,
    a_coeff,
    correction_factor,
    eval_A_asym,
    eval_B_asym,
    eval_X_asym,
    g_coeff,
    leading_constant_a,
    r_coeff,
)
from .constants import (
    ConstantsBundle,
    Estimate,
    PolyaResult,
    b_constants,
    build_bundle,
    empirical_b1,
    estimate_m,
    estimate_m_tilde,
    normalized_a_series,
    normalized_b_series,
    polya_probability,
)
from .errors import (
    CapacityError,
    DependencyError,
    DivergenceError,
    InvertibilityError,
    UnsupportedOrderError,
)
from .holonomy import (
    LinearODE,
    PRecurrence,
    TruncatedSeries,
    VerificationReport,
    apply_ode,
    check_ode,
    check_p_recurrence,
    hadamard,
    legendre_series_identity,
    lucas_check,
    ode_singularities,
    ode_to_recurrence,
    reciprocal_series,
    series_from_sequence,
)
from .kernel import (
    UniPoly,
    binomial,
    binomial_row,
    legendre_poly,
    poly_eval,
)
from .walks import (
    LatticeDistribution,
    Layer,
    SequenceTable,
    closed_walks,
    closed_walks_fast,
    distribution_formula,
    endpoint_count_2d,
    first_return_closed_form_1d,
    first_returns,
    first_returns_dp,
    first_returns_fast,
    full_distribution_dp,
    layer,
    tau_entry,
    x_sequence,
    x_sequence_fast,
)

__version__ = "0.1.0"

__all__ = [
    "AsymValue",
    "CapacityError",
    "ConstantsBundle",
    "DependencyError",
    "DivergenceError",
    "Estimate",
    "InvertibilityError",
    "LatticeDistribution",
    "Layer",
    "LeadingConstant",
    "LinearODE",
    "PolyaResult",
    "PRecurrence",
    "SequenceTable",
    "TruncatedSeries",
    "UniPoly",
    "UnsupportedOrderError",
    "VerificationReport",
    "a_coeff",
    "apply_ode",
    "b_constants",
    "binomial",
    "binomial_row",
    "build_bundle",
    "check_ode",
    "check_p_recurrence",
    "closed_walks",
    "closed_walks_fast",
    "correction_factor",
    "distribution_formula",
    "empirical_b1",
    "endpoint_count_2d",
    "estimate_m",
    "estimate_m_tilde",
    "eval_A_asym",
    "eval_B_asym",
    "eval_X_asym",
    "first_return_closed_form_1d",
    "first_returns",
    "first_returns_dp",
    "first_returns_fast",
    "full_distribution_dp",
    "g_coeff",
    "hadamard",
    "layer",
    "leading_constant_a",
    "legendre_poly",
    "legendre_series_identity",
    "lucas_check",
    "normalized_a_series",
    "normalized_b_series",
    "ode_singularities",
    "ode_to_recurrence",
    "polya_probability",
    "poly_eval",
    "r_coeff",
    "reciprocal_series",
    "series_from_sequence",
    "tau_entry",
    "x_sequence",
    "x_sequence_fast",
]
