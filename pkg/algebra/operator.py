"""
Three realizations of the hyper-Bessel operator B_r on truncated series.

- ``apply_br``: backward shift of normalized coefficients
- ``apply_br_raw``: d^r + sum_k a_k z^{-k} d^{r-k} on monomial coefficients
- ``apply_br_integral``: integral form evaluated by Gauss-Legendre quadrature
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ModeError
from .index import alpha, derive_br_coefficients, falling_factorial, float_ratios
from .scalars import Mode
from .series import REvenSeries

logger = logging.getLogger(__name__)

GAUSS_ORDER = 32
QUADRATURE_TOL = 1e-10


def apply_br(u: REvenSeries) -> REvenSeries:
    """
    Apply B_r as the backward shift result_n = u_{n+1}.

    Args:
        u: Series of order N

    Returns:
        Series of order N - 1 (the zero series of order 0 when N = 0)
    """
    if u.N == 0:
        return REvenSeries.zeros(u.vi, 0, u.mode)
    envelope = None
    if u.envelope is not None:
        C, a = u.envelope
        envelope = (C * a ** u.vi.r, a)
    return REvenSeries(u.vi, u.coeffs[1:], u.mode, envelope)


def apply_br_power(u: REvenSeries, n: int) -> REvenSeries:
    """B_r^n u; drops exactly n normalized coefficients."""
    if n < 0:
        raise ValueError(f"power must be nonnegative, got {n}")
    for _ in range(n):
        u = apply_br(u)
    return u


def apply_br_raw(u: REvenSeries) -> REvenSeries:
    """
    Apply B_r through its coefficient form on monomial coefficients.

    Every term z^{-k} d^{r-k} z^{rm} = (rm)_{r-k} z^{r(m-1)} is accumulated in
    exact arithmetic; float inputs are converted exactly and converted back.
    """
    if u.N == 0:
        return REvenSeries.zeros(u.vi, 0, u.mode)
    vi = u.vi
    r = vi.r
    br = derive_br_coefficients(vi)
    raw = u.to_exact().raw_coefficients()
    coeffs = []
    for m in range(1, u.N + 1):
        factor = sum((br.coefficient(k) * falling_factorial(r * m, r - k) for k in range(r)),
                     Fraction(0))
        coeffs.append(raw[m] * factor * alpha(vi, m - 1))
    result = REvenSeries(vi, tuple(coeffs), Mode.EXACT)
    return result if u.mode is Mode.EXACT else result.to_float()


def derivative_r(u: REvenSeries) -> REvenSeries:
    """
    The plain r-th derivative u^{(r)} in the normalized basis (float mode).

    Coefficient m - 1 is u_m (rm)_r / rho_m.
    """
    if u.mode is not Mode.FLOAT:
        raise ModeError("derivative_r works on float series")
    if u.N == 0:
        return REvenSeries.zeros(u.vi, 0, Mode.FLOAT)
    r = u.vi.r
    ratios = float_ratios(u.vi, u.N)
    coeffs = tuple(u.coeffs[m] * falling_factorial(r * m, r) / ratios[m]
                   for m in range(1, u.N + 1))
    return REvenSeries(u.vi, coeffs, Mode.FLOAT)


@dataclass(frozen=True)
class QuadratureResult:
    """
    Value of the integral form at one point.

    Args:
        value: B_r u(z) at the higher quadrature order
        error_estimate: Difference between the two orders
        converged: Whether the orders agree within tolerance
        order: Higher quadrature order used
    """
    value: complex
    error_estimate: float
    converged: bool
    order: int


def _integral_terms(d: REvenSeries, z: complex, a, order: int) -> complex:
    nodes, weights = leggauss(order)
    t = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    values = d.evaluate_grid(t * z)
    total = d.evaluate(z)
    for k, a_k in enumerate(a, start=1):
        if a_k == 0:
            continue
        kernel = (1.0 - t) ** (k - 1) / math.factorial(k - 1)
        total += float(a_k) * complex(np.sum(w * kernel * values))
    return total


def apply_br_integral(u: REvenSeries, z, order: int = GAUSS_ORDER,
                      tol: float = QUADRATURE_TOL) -> QuadratureResult:
    """
    Evaluate B_r u(z) = u^{(r)}(z) + sum_k a_k/(k-1)! int_0^1 (1-t)^{k-1} u^{(r)}(tz) dt.

    The integrand is entire in t, so Gauss-Legendre at ``order`` and
    ``2 * order`` nodes is compared as a convergence check.

    Args:
        u: Float series
        z: Evaluation point
        order: Base quadrature order (at least 32)
        tol: Relative agreement required between the two orders

    Returns:
        QuadratureResult with the value at the higher order
    """
    if u.mode is not Mode.FLOAT:
        raise ModeError("the integral form is evaluated in float mode")
    if order < GAUSS_ORDER:
        raise ValueError(f"quadrature order must be at least {GAUSS_ORDER}, got {order}")
    z = complex(z)
    d = derivative_r(u)
    a = derive_br_coefficients(u.vi).a
    coarse = _integral_terms(d, z, a, order)
    fine = _integral_terms(d, z, a, 2 * order)
    error = abs(fine - coarse)
    converged = error <= tol * max(1.0, abs(fine))
    if not converged:
        logger.warning("Quadrature orders %d and %d disagree by %.3e at z=%s",
                       order, 2 * order, error, z)
    return QuadratureResult(fine, error, converged, 2 * order)
