"""Spectral side: Maass form data, integral transforms, and variance sums."""

from .data import (
    SpectralDatum,
    SpectralDataset,
    load_spectral_data,
    bundled_dataset,
    maass_value,
    normalize_l2,
    amplitude,
    Amplitude,
    eisenstein_value,
)
from .transforms import shc_direct, h_r_closed, htilde, shc_frac, r_alpha, ShcFracResult, HrResult
from .terms import (
    main_term,
    main_term_alpha,
    MainTermAlpha,
    spectral_variance,
    VarianceSum,
    f_alpha_sum,
)

__all__ = [
    "SpectralDatum",
    "SpectralDataset",
    "load_spectral_data",
    "bundled_dataset",
    "maass_value",
    "normalize_l2",
    "amplitude",
    "Amplitude",
    "eisenstein_value",
    "shc_direct",
    "h_r_closed",
    "htilde",
    "shc_frac",
    "r_alpha",
    "ShcFracResult",
    "HrResult",
    "main_term",
    "main_term_alpha",
    "MainTermAlpha",
    "spectral_variance",
    "VarianceSum",
    "f_alpha_sum",
]
