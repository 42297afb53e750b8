"""
Generalized convolution of functionals with series and with each other.
"""
import logging
import math

from algebra.errors import IndexMismatchError
from algebra.index import alpha, binomial_row
from algebra.scalars import Mode, log_abs, to_complex
from algebra.series import REvenSeries

from .fourier import pairing_report
from .functional import FIT_SLACK, CertificateSource, ExpTypeCertificate, MomentFunctional

logger = logging.getLogger(__name__)


def convolve(T: MomentFunctional, u: REvenSeries) -> REvenSeries:
    """
    (T * u)(z) = <T, T_z u> in the normalized basis.

    (T * u)_n = sum_{m=0}^{N-n} t_m / alpha_{rm} * u_{n+m}, exact when both
    operands are exact. Moments past the stored range contribute nothing;
    the pairing diagnostics bound what they would add.

    Args:
        T: Moment functional
        u: Series of order N

    Returns:
        Series of order N - v, v the index of the first nonzero moment
    """
    report = pairing_report(T, u)
    if not report.absolutely_convergent:
        logger.warning("Convolution pairing is not absolutely convergent at order %d", u.N)
    exact = T.mode is Mode.EXACT and u.mode is Mode.EXACT
    if not exact:
        u = u.to_float()
    K = min(T.N, u.N)
    if exact:
        weights = [T.moments[m] / alpha(u.vi, m) for m in range(K + 1)]
        zero = 0
    else:
        weights = [to_complex(T.moments[m]) * float(1 / alpha(u.vi, m)) for m in range(K + 1)]
        zero = 0j
    mode = Mode.EXACT if exact else Mode.FLOAT
    # the first nonzero moment v leaves coefficients past N - v undetermined
    valuation = next((m for m, t in enumerate(T.moments) if t != 0), 0)
    if valuation > u.N:
        return REvenSeries.zeros(u.vi, 0, mode)
    coeffs = []
    for n in range(u.N - valuation + 1):
        total = zero
        for m in range(min(K, u.N - n) + 1):
            total = total + weights[m] * u.coeffs[n + m]
        coeffs.append(total)
    return REvenSeries(u.vi, tuple(coeffs), mode)


def _compose_certificate(T: MomentFunctional, S: MomentFunctional, moments, mode: Mode):
    if T.certificate is None or S.certificate is None:
        return None
    r = T.vi.r
    a = T.certificate.a + S.certificate.a
    certificate = ExpTypeCertificate(T.certificate.C * S.certificate.C, a, CertificateSource.HEURISTIC)
    if certificate.holds(moments, r, mode):
        return certificate
    # refit C upward for the composed type a
    log_a = math.log(a)
    logs = [log_abs(t) - r * n * log_a for n, t in enumerate(moments) if t != 0]
    C = max(certificate.C, math.exp(max(logs)) * FIT_SLACK)
    logger.debug("Composed certificate refitted: C %.3e -> %.3e", certificate.C, C)
    return ExpTypeCertificate(C, a, CertificateSource.HEURISTIC)


def moment_convolution(T: MomentFunctional, S: MomentFunctional) -> MomentFunctional:
    """
    T * S defined by <T * S, u> = <T, S * u>.

    On monomials the addition formula gives
    (T * S)_n = sum_k binom_gamma(n, k) s_k t_{n-k}, for n up to the shorter
    stored range. The certificate (C_T C_S, a_T + a_S) is flagged heuristic.
    """
    if T.vi != S.vi:
        raise IndexMismatchError(f"functionals over {T.vi.label()} and {S.vi.label()} cannot be convolved")
    exact = T.mode is Mode.EXACT and S.mode is Mode.EXACT
    if not exact:
        T, S = T.to_float(), S.to_float()
    N = min(T.N, S.N)
    zero = 0 if exact else 0j
    moments = []
    for n in range(N + 1):
        row = binomial_row(T.vi, n)
        total = zero
        for k in range(n + 1):
            b = row[k] if exact else float(row[k])
            total = total + b * S.moments[k] * T.moments[n - k]
        moments.append(total)
    mode = Mode.EXACT if exact else Mode.FLOAT
    return MomentFunctional(T.vi, tuple(moments), mode, _compose_certificate(T, S, moments, mode))
