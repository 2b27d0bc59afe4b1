"""Regularization-parameter choice rules on spectral solution forms."""

from src.paramsel.rules import (
    discrepancy_select,
    discrepancy_truncation,
    gcv_select,
    lcurve_select,
)
from src.paramsel.spectrum import (
    FilterSpectrum,
    filter_factors,
    gcv_value,
    mu_grid,
    residual_norm,
    solution_norm,
    spectrum_from_gsvd,
    spectrum_from_svd,
)

__all__ = [
    "FilterSpectrum",
    "filter_factors",
    "gcv_value",
    "mu_grid",
    "residual_norm",
    "solution_norm",
    "spectrum_from_gsvd",
    "spectrum_from_svd",
    "gcv_select",
    "discrepancy_select",
    "discrepancy_truncation",
    "lcurve_select",
]
