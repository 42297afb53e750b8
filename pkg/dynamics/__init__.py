"""
Linear dynamics of convolution operators.
"""
from .operator import ConvolutionOperator, apply, apply_power
from .symbol import GsScan, symbol_eigenvalue, symbol_derivative, symbol_values, gs_scan, write_symbol_csv
from .periodic import PeriodicPoint, periodic_point_find, verify_periodic, period_of
from .witness import TransitivityWitness, transitivity_witness
from .certificate import CertifyConfig, ChaosCertificate, certify

__all__ = [
    'ConvolutionOperator',
    'apply',
    'apply_power',
    'GsScan',
    'symbol_eigenvalue',
    'symbol_derivative',
    'symbol_values',
    'gs_scan',
    'write_symbol_csv',
    'PeriodicPoint',
    'periodic_point_find',
    'verify_periodic',
    'period_of',
    'TransitivityWitness',
    'transitivity_witness',
    'CertifyConfig',
    'ChaosCertificate',
    'certify',
]
