"""
Special functions of the hyper-Bessel calculus.
"""
from .bessel import j_series, j_series_from_power, j_eval, G_eval

__all__ = ['j_series', 'j_series_from_power', 'j_eval', 'G_eval']
