"""
Exact constants, truncated r-even series and the hyper-Bessel operator.
"""
from .errors import (
    HyperBesselError,
    InvalidIndexError,
    IndexMismatchError,
    ModeError,
    SeriesOverflowError,
    PrecisionError,
    IncompletePairingError,
    NotExponentialTypeError,
    GridExhaustedError,
    ScalarOperatorError,
    WitnessFailure,
)
from .scalars import Mode, GaussianRational
from .index import (
    VectorIndex,
    AlphaTable,
    BrCoefficients,
    alpha,
    alpha_ratio,
    alpha_table,
    derive_br_coefficients,
    generalized_binomial,
    make_index,
)
from .series import REvenSeries, add, scalar_mul, multiply
from .operator import apply_br, apply_br_power, apply_br_raw, apply_br_integral, QuadratureResult
from .norms import norm_majorant, norm_grid, br_power_norm_check, NormCheckReport

__all__ = [
    'HyperBesselError',
    'InvalidIndexError',
    'IndexMismatchError',
    'ModeError',
    'SeriesOverflowError',
    'PrecisionError',
    'IncompletePairingError',
    'NotExponentialTypeError',
    'GridExhaustedError',
    'ScalarOperatorError',
    'WitnessFailure',
    'Mode',
    'GaussianRational',
    'VectorIndex',
    'AlphaTable',
    'BrCoefficients',
    'alpha',
    'alpha_ratio',
    'alpha_table',
    'derive_br_coefficients',
    'generalized_binomial',
    'make_index',
    'REvenSeries',
    'add',
    'scalar_mul',
    'multiply',
    'apply_br',
    'apply_br_power',
    'apply_br_raw',
    'apply_br_integral',
    'QuadratureResult',
    'norm_majorant',
    'norm_grid',
    'br_power_norm_check',
    'NormCheckReport',
]
