"""
Delsarte generalized translation and the generalized addition formula.

    T_z u(w) = sum_n z^{rn} / alpha_{rn} (B_r^n u)(w) = u(z (+) w)

Two independent paths compute the translated series: the shift form of
B_r^n and the expansion of (z (+) w)^{rn} through generalized binomials.
Both keep the input truncation N; coefficients that would need u_{m+n} with
m + n > N are dropped and counted.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from algebra.bounds import exp_tail_bound
from algebra.index import VectorIndex, alpha, binomial_row, float_ratios, generalized_binomial
from algebra.scalars import Mode, is_exact, to_complex, to_exact
from algebra.series import REvenSeries
from special.bessel import j_series

logger = logging.getLogger(__name__)


def _translation_weights(vi: VectorIndex, z, N: int, mode: Mode):
    """z^{rn} / alpha_{rn} for n = 0..N."""
    if mode is Mode.EXACT:
        x = to_exact(z) ** vi.r
        weights, power = [], to_exact(1)
        for n in range(N + 1):
            weights.append(power / alpha(vi, n))
            power = power * x
        return weights
    x = to_complex(z) ** vi.r
    ratios = float_ratios(vi, N)
    weights, weight = [], 1 + 0j
    for n in range(N + 1):
        if n:
            weight = weight * x / ratios[n]
        weights.append(weight)
    return weights


def _result_mode(u: REvenSeries, z) -> Tuple[REvenSeries, Mode]:
    if u.mode is Mode.EXACT and is_exact(z):
        return u, Mode.EXACT
    return u.to_float(), Mode.FLOAT


def dropped_terms(N: int) -> int:
    """Number of pairs (m, n) with m, n <= N and m + n > N left out by truncation."""
    return N * (N + 1) // 2


def translate_delsarte(u: REvenSeries, z) -> REvenSeries:
    """
    Translate u by z through the shift form of B_r^n.

    result_m = sum_{n=0}^{N-m} z^{rn} / alpha_{rn} * u_{m+n}

    Args:
        u: Series of order N
        z: Translation parameter; exact z keeps an exact series exact

    Returns:
        Series of order N in the variable w
    """
    u, mode = _result_mode(u, z)
    N = u.N
    weights = _translation_weights(u.vi, z, N, mode)
    zero = 0 if mode is Mode.EXACT else 0j
    coeffs = []
    for m in range(N + 1):
        total = zero
        for n in range(N - m + 1):
            total = total + weights[n] * u.coeffs[m + n]
        coeffs.append(total)
    logger.debug("Delsarte translation at order %d dropped %d tail pairs", N, dropped_terms(N))
    return REvenSeries(u.vi, tuple(coeffs), mode)


def addition_power(vi: VectorIndex, n: int, z, w):
    """
    (z (+) w)^{rn} = sum_k binom_gamma(n, k) w^{rk} z^{r(n-k)}.

    Exact when z and w are exact.
    """
    if n < 0:
        raise ValueError(f"power must be nonnegative, got {n}")
    row = binomial_row(vi, n)
    if is_exact(z) and is_exact(w):
        zr, wr = to_exact(z) ** vi.r, to_exact(w) ** vi.r
        return sum((row[k] * wr ** k * zr ** (n - k) for k in range(n + 1)), 0)
    zr, wr = to_complex(z) ** vi.r, to_complex(w) ** vi.r
    terms = [float(row[k]) * wr ** k * zr ** (n - k) for k in range(n + 1)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def addition_power_hypergeometric(vi: VectorIndex, n: int, z, w) -> complex:
    """
    (z (+) w)^{rn} as z^{rn} times a terminating hypergeometric sum.

    The summand ratio is
    (k - n) prod_i (k - n - gamma_i) / ((k + 1) prod_i (gamma_i + 1 + k)) * (-w/z)^r.
    """
    if n < 0:
        raise ValueError(f"power must be nonnegative, got {n}")
    z, w = to_complex(z), to_complex(w)
    if z == 0:
        raise ValueError("the hypergeometric form needs z != 0; use addition_power")
    x = (-w / z) ** vi.r
    gamma = [float(g) for g in vi.gamma]
    term = 1 + 0j
    terms = [term]
    for k in range(n):
        num = k - n
        den = k + 1
        for g in gamma:
            num *= k - n - g
            den *= g + 1 + k
        term = term * num / den * x
        terms.append(term)
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return z ** (vi.r * n) * total


def translate_addition(u: REvenSeries, z) -> REvenSeries:
    """
    Translate u by expanding u(z (+) w) = sum_n c_n (z (+) w)^{rn} in powers of w.

    The coefficient of w^{rk} in c_n (z (+) w)^{rn} is
    c_n binom_gamma(n, k) z^{r(n-k)}; normalizing by alpha_{rk} gives the
    same determined coefficients as the shift form.
    """
    u, mode = _result_mode(u, z)
    vi, N = u.vi, u.N
    if mode is Mode.EXACT:
        raw = u.raw_coefficients()
        zr = to_exact(z) ** vi.r
        coeffs = []
        for k in range(N + 1):
            total = 0
            for n in range(k, N + 1):
                total = total + raw[n] * generalized_binomial(vi, n, k) * zr ** (n - k)
            coeffs.append(total * alpha(vi, k))
        return REvenSeries(vi, tuple(coeffs), Mode.EXACT)
    # alpha_{rk} / alpha_{rn} = 1 / (rho_{k+1} ... rho_n) keeps alpha out of double range
    zr = to_complex(z) ** vi.r
    ratios = float_ratios(vi, N)
    terms = [[] for _ in range(N + 1)]
    for n in range(N + 1):
        row = binomial_row(vi, n)
        scale, power = 1.0, 1 + 0j
        for k in range(n, -1, -1):
            terms[k].append(u.coeffs[n] * float(row[k]) * power * scale)
            scale /= ratios[k]
            power *= zr
    coeffs = [complex(math.fsum(t.real for t in ts), math.fsum(t.imag for t in ts)) for ts in terms]
    return REvenSeries(vi, tuple(coeffs), Mode.FLOAT)


@dataclass(frozen=True)
class ProductFormulaCheck:
    """
    Residual of T_z j_lam (w) = j_gamma(lam z) j_gamma(lam w).

    Args:
        residual: |translated value - product|
        bound: Combined truncation tail bound
        passed: residual <= bound + rounding allowance
    """
    residual: float
    bound: float
    passed: bool


def product_formula_residual(vi: VectorIndex, lam, z, w, N: int = 64) -> ProductFormulaCheck:
    """Compare the translated Bessel series against the product of two Bessel values."""
    lam, z, w = to_complex(lam), to_complex(z), to_complex(w)
    u = j_series(vi, lam, N, Mode.FLOAT)
    translated = translate_delsarte(u, z).evaluate(w)
    jz = j_series(vi, lam, N, Mode.FLOAT).evaluate(z)
    jw = j_series(vi, lam, N, Mode.FLOAT).evaluate(w)
    residual = abs(translated - jz * jw)
    r = vi.r
    az, aw = abs(lam * z), abs(lam * w)
    # tails of j(lam z), j(lam w) and the dropped triangle of the double sum
    bound = (exp_tail_bound(az, r, N) * math.exp(aw) + exp_tail_bound(aw, r, N) * math.exp(az)
             + exp_tail_bound(az + aw, r, N))
    allowance = 1e-13 * math.exp(az + aw)
    return ProductFormulaCheck(residual, bound, residual <= bound + allowance)
