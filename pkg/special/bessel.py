"""
Normalized Bessel function j_gamma of a vector index and its majorant G_gamma.

    j_gamma(z) = sum_n (-1)^n z^{rn} / alpha_{rn}
    G_gamma(x) = sum_n x^{rn} / alpha_{rn} = j_gamma(e^{i pi / r} x)

j_gamma(lam z) is the eigenfunction of B_r with eigenvalue -lam^r and value 1
at the origin. Tail bounds use alpha_{rn} >= (rn)! so they hold for every gamma.
"""
import logging
import math
import sys
from typing import Optional, Tuple

from algebra.bounds import exp_tail_bound, terms_for_tolerance
from algebra.errors import PrecisionError, SeriesOverflowError
from algebra.index import VectorIndex, alpha_ratio
from algebra.scalars import Mode, is_exact, to_complex, to_exact
from algebra.series import DEFAULT_TRUNCATION, REvenSeries

logger = logging.getLogger(__name__)

EPS = sys.float_info.epsilon


def _infer_mode(value, mode: Optional[Mode]) -> Mode:
    if mode is not None:
        return mode
    return Mode.EXACT if is_exact(value) else Mode.FLOAT


def j_series_from_power(vi: VectorIndex, lam_r, N: int = DEFAULT_TRUNCATION,
                        mode: Optional[Mode] = None) -> REvenSeries:
    """
    j_gamma(lam .) truncated at N, given lam^r instead of lam.

    Exact mode only needs lam^r to be rational, so the eigen-relation can be
    checked exactly for irrational lam.
    """
    mode = _infer_mode(lam_r, mode)
    if mode is Mode.EXACT:
        x = -to_exact(lam_r)
        power = to_exact(1)
    else:
        x = -to_complex(lam_r)
        power = 1 + 0j
    coeffs = []
    for _ in range(N + 1):
        coeffs.append(power)
        power = power * x
    radius = abs(to_complex(lam_r)) ** (1.0 / vi.r)
    return REvenSeries(vi, tuple(coeffs), mode, envelope=(1.0, radius))


def j_series(vi: VectorIndex, lam=1, N: int = DEFAULT_TRUNCATION,
             mode: Optional[Mode] = None) -> REvenSeries:
    """
    Series of z -> j_gamma(lam z) with normalized coefficients (-1)^n lam^{rn}.

    Args:
        vi: Vector index
        lam: Spectral parameter; exact values give an exact series
        N: Truncation order
        mode: Force the arithmetic mode

    Returns:
        REvenSeries carrying the envelope (1, |lam|)
    """
    mode = _infer_mode(lam, mode)
    lam_r = to_exact(lam) ** vi.r if mode is Mode.EXACT else to_complex(lam) ** vi.r
    series = j_series_from_power(vi, lam_r, N, mode)
    return REvenSeries(vi, series.coeffs, mode, envelope=(1.0, abs(to_complex(lam))))


def G_eval(vi: VectorIndex, x: float) -> float:
    """
    G_gamma(x) for x >= 0, summed until the remaining terms are below double resolution.

    Raises:
        SeriesOverflowError: when a term leaves double range
    """
    if x < 0:
        raise ValueError(f"G_gamma is evaluated at x >= 0, got {x}")
    if x == 0:
        return 1.0
    xr = float(x) ** vi.r
    terms = [1.0]
    weight = 1.0
    n = 0
    while True:
        n += 1
        step = xr / float(alpha_ratio(vi, n))
        weight *= step
        if not math.isfinite(weight):
            raise SeriesOverflowError(f"G_gamma({x}) overflows at term {n}", index=n)
        terms.append(weight)
        if step < 0.5 and weight < EPS * 1e-2 * terms[0]:
            break
    return math.fsum(terms)


def j_eval(vi: VectorIndex, z, tol: float = 1e-12) -> Tuple[complex, float, int]:
    """
    Certified value of j_gamma(z).

    Picks the smallest N with sum_{n>N} |z|^{rn} / (rn)! <= tol.

    Args:
        vi: Vector index
        z: Evaluation point
        tol: Target truncation error

    Returns:
        (value, tail bound, N used)

    Raises:
        PrecisionError: when tol is below the rounding floor of the compensated sum
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    z = to_complex(z)
    if z == 0:
        return 1 + 0j, 0.0, 0
    x = abs(z)
    floor = 8 * EPS * G_eval(vi, x)
    if tol < floor:
        raise PrecisionError(f"tolerance {tol:.3e} is below the floating floor {floor:.3e} at |z|={x}")
    N = terms_for_tolerance(x, vi.r, tol)
    value = j_series(vi, 1, N, Mode.FLOAT).evaluate(z)
    return value, exp_tail_bound(x, vi.r, N), N
