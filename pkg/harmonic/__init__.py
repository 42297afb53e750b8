"""
Harmonic analysis: translation, convolution, Fourier transform and density.
"""
from .functional import (
    CertificateSource,
    ExpTypeCertificate,
    MomentFunctional,
    fit_envelope,
    functional_from_series,
)
from .translation import (
    translate_delsarte,
    translate_addition,
    addition_power,
    addition_power_hypergeometric,
    product_formula_residual,
)
from .fourier import (
    pair,
    pairing_report,
    pairing_terms,
    pairing_bound_check,
    fourier,
    inverse_fourier,
    exp_type_fit,
    pa_norm_estimate,
)
from .convolution import convolve, moment_convolution
from .density import density_residual, solve_least_squares, write_density_csv

__all__ = [
    'CertificateSource',
    'ExpTypeCertificate',
    'MomentFunctional',
    'fit_envelope',
    'functional_from_series',
    'translate_delsarte',
    'translate_addition',
    'addition_power',
    'addition_power_hypergeometric',
    'product_formula_residual',
    'pair',
    'pairing_report',
    'pairing_terms',
    'pairing_bound_check',
    'fourier',
    'inverse_fourier',
    'exp_type_fit',
    'pa_norm_estimate',
    'convolve',
    'moment_convolution',
    'density_residual',
    'solve_least_squares',
    'write_density_csv',
]
