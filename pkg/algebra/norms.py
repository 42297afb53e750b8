"""
Two-sided estimates of the semi-norm ||u||_R = max_{|z| <= R} |u(z)|.

The grid maximum on |z| = R is a lower bound, the coefficient majorant an
upper bound. Inequalities are tested with the lower bound on the left and
the upper bound on the right.
"""
import math
from dataclasses import dataclass

import numpy as np

from .index import derive_br_coefficients
from .operator import apply_br_power
from .scalars import to_complex
from .series import REvenSeries, basis_weights

DEFAULT_GRID = 256


def norm_majorant(u: REvenSeries, R: float) -> float:
    """sum_n |u_n| R^{rn} / alpha_{rn}, an upper bound on ||u||_R."""
    if R <= 0:
        raise ValueError(f"radius must be positive, got {R}")
    weights = basis_weights(u.vi, np.array([R]), u.N)[0].real
    return math.fsum(abs(to_complex(c)) * w for c, w in zip(u.coeffs, weights))


def norm_grid(u: REvenSeries, R: float, m: int = DEFAULT_GRID) -> float:
    """
    Maximum of |u| over the dyadic grid of the circle |z| = R.

    The grid has 2^k equispaced points, 2^k the largest power of two <= m.
    Dyadic grids are nested, so the value is nondecreasing in m.
    """
    if R <= 0:
        raise ValueError(f"radius must be positive, got {R}")
    if m < 1:
        raise ValueError(f"grid size must be positive, got {m}")
    size = 1 << (int(m).bit_length() - 1)
    theta = 2 * np.pi * np.arange(size) / size
    return float(np.max(np.abs(u.evaluate_grid(R * np.exp(1j * theta)))))


@dataclass(frozen=True)
class NormCheckReport:
    """
    Outcome of the power estimate ||B_r^n u||_R <= M^n (nr)! / R^{nr} ||u||_{2R}.

    Args:
        lhs: Grid lower bound of the left side
        rhs: Majorant upper bound of the right side
        passed: lhs <= rhs
    """
    lhs: float
    rhs: float
    passed: bool


def br_power_norm_check(u: REvenSeries, R: float, n: int, m: int = DEFAULT_GRID) -> NormCheckReport:
    u = u.to_float()
    r = u.vi.r
    M = float(derive_br_coefficients(u.vi).M)
    lhs = norm_grid(apply_br_power(u, n), R, m)
    rhs = M ** n * math.factorial(n * r) / R ** (n * r) * norm_majorant(u, 2 * R)
    return NormCheckReport(lhs, rhs, lhs <= rhs * (1 + 1e-12))
