"""
Periodic points j_gamma(lam .) with Psi(lam) a root of unity.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

import numpy as np

from algebra.errors import ScalarOperatorError
from algebra.norms import norm_grid
from algebra.parallel import parallel_map
from algebra.scalars import Mode, parse_rational
from algebra.series import DEFAULT_TRUNCATION
from special.bessel import j_series

from .operator import ConvolutionOperator, apply_power
from .symbol import canonical, polar_sector_grid, symbol_derivative, symbol_eigenvalue

logger = logging.getLogger(__name__)

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12
DEDUPE_TOL = 1e-8
SEED_RADIUS = 4.0
SEED_RADII = 8
SEED_ANGLES = 16


@dataclass(frozen=True)
class PeriodicPoint:
    """
    Root of Psi(lam) = e^{i pi alpha}, giving a periodic point j_gamma(lam .).

    Args:
        lam: Canonical root, arg in [0, 2 pi / r)
        period: Smallest n with e^{i pi alpha n} = 1
        residual: |Psi(lam) - e^{i pi alpha}|
        alpha: The rational alpha
    """
    lam: complex
    period: int
    residual: float
    alpha: Fraction


def period_of(alpha) -> int:
    """Smallest n >= 1 with (e^{i pi alpha})^n = 1."""
    alpha = parse_rational(alpha)
    if alpha == 0:
        return 1
    p, q = alpha.numerator, alpha.denominator
    return 2 * q // math.gcd(p, 2 * q)


def newton_root(L: ConvolutionOperator, target: complex, seed: complex,
                max_iter: int = NEWTON_MAX_ITER, tol: float = NEWTON_TOL) -> Optional[complex]:
    """Newton iteration on Psi(lam) - target; None when it fails to converge."""
    lam = complex(seed)
    for _ in range(max_iter):
        value = symbol_eigenvalue(L, lam) - target
        if not cmath.isfinite(value):
            return None
        if abs(value) <= tol:
            return lam
        slope = symbol_derivative(L, lam)
        if slope == 0 or not cmath.isfinite(slope):
            return None
        lam = lam - value / slope
    value = symbol_eigenvalue(L, lam) - target
    return lam if cmath.isfinite(value) and abs(value) <= tol else None


def periodic_point_find(L: ConvolutionOperator, alpha, seeds: Optional[Iterable[complex]] = None,
                        threads: Optional[int] = None) -> List[PeriodicPoint]:
    """
    Solve Psi(lam) = e^{i pi alpha} by Newton from grid seeds.

    Roots are rotated into the sector arg lam in [0, 2 pi / r) and deduplicated
    at distance 1e-8.

    Args:
        L: Non-scalar convolution operator
        alpha: Rational alpha (string, int or Fraction)
        seeds: Starting points; a polar grid of radius 4 by default
        threads: Worker cap for the seed sweep

    Returns:
        Periodic points sorted by modulus then argument
    """
    if L.is_scalar:
        raise ScalarOperatorError("a scalar multiple of the identity has no periodic-point search")
    alpha = parse_rational(alpha)
    target = cmath.exp(1j * math.pi * float(alpha))
    if seeds is None:
        seeds = polar_sector_grid(L.vi.r, SEED_RADIUS, SEED_RADII, SEED_ANGLES)
    roots = parallel_map(lambda s: newton_root(L, target, s), list(seeds), threads)

    found: List[complex] = []
    for lam in roots:
        if lam is None:
            continue
        lam = canonical(lam, L.vi.r)
        if all(abs(lam - other) > DEDUPE_TOL for other in found):
            found.append(lam)
    if not found:
        logger.warning("Newton did not converge from any seed for alpha=%s", alpha)
        return []
    period = period_of(alpha)
    found.sort(key=lambda lam: (round(abs(lam), 10), round(cmath.phase(lam) % (2 * math.pi), 10)))
    return [PeriodicPoint(lam, period, abs(symbol_eigenvalue(L, lam) - target), alpha) for lam in found]


def verify_periodic(L: ConvolutionOperator, lam, n: int, N: int = DEFAULT_TRUNCATION,
                    R: float = 1.0, m: int = 64) -> float:
    """
    Grid norm of L^n j_gamma(lam .) - j_gamma(lam .) on |z| <= R.

    The eigenfunction is built with enough extra coefficients that the first
    N + 1 survive n applications.
    """
    if n < 1:
        raise ValueError(f"period must be at least 1, got {n}")
    u = j_series(L.vi, complex(lam), N + L.K * n, Mode.FLOAT)
    image = apply_power(L, u, n)
    diff = image.resized(N) - u.resized(N)
    return norm_grid(diff, R, m)
