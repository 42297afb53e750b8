"""
Generalized Fourier transform between moment functionals and series of exponential type.

    F(T)(z) = <T(w), j_gamma(wz)> = sum_n (-1)^n t_n z^{rn} / alpha_{rn}

so on normalized coefficients the transform is the sign involution
b_n = (-1)^n t_n, and growth certificates carry over unchanged.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from algebra.bounds import envelope_tail
from algebra.errors import IncompletePairingError, IndexMismatchError, NotExponentialTypeError
from algebra.index import alpha
from algebra.norms import norm_majorant
from algebra.scalars import Mode, log_abs, to_complex
from algebra.series import REvenSeries

from .functional import (
    CertificateSource,
    ExpTypeCertificate,
    MomentFunctional,
    fit_envelope,
)

logger = logging.getLogger(__name__)

MIN_FIT_ORDER = 8
SUPEREXP_THRESHOLD = 0.5
PA_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class PairingReport:
    """
    Pairing <T, u> with its convergence diagnostics.

    Args:
        value: Sum over the stored moments
        terms: Absolute terms |c_n t_n|
        missing_bound: Bound on the contribution of moments beyond the stored range
        tail_bound: Bound on the truncation tail of u paired with T, or None
        absolutely_convergent: Whether every term and bound is finite
    """
    value: complex
    terms: np.ndarray
    missing_bound: float
    tail_bound: object
    absolutely_convergent: bool


def _check_index(T: MomentFunctional, u: REvenSeries):
    if T.vi != u.vi:
        raise IndexMismatchError(
            f"functional over {T.vi.label()} cannot pair with series over {u.vi.label()}"
        )


def pairing_terms(T: MomentFunctional, u: REvenSeries) -> np.ndarray:
    """|c_n t_n| for every n covered by both operands."""
    _check_index(T, u)
    K = min(T.N, u.N)
    raw = u.raw_coefficients()
    return np.array([abs(to_complex(raw[n])) * abs(to_complex(T.moments[n])) for n in range(K + 1)])


def pairing_report(T: MomentFunctional, u: REvenSeries) -> PairingReport:
    """
    <T, u> = sum_n c_n t_n over raw coefficients c_n = u_n / alpha_{rn}.

    Raises:
        IncompletePairingError: u has nonzero coefficients past the stored
            moments and T carries no certificate
    """
    _check_index(T, u)
    raw = u.raw_coefficients()
    missing = [n for n in range(T.N + 1, u.N + 1) if u.coeffs[n] != 0]
    missing_bound = 0.0
    if missing:
        if T.certificate is None:
            raise IncompletePairingError(
                f"series needs moments up to {missing[-1]} but only {T.N} are stored"
            )
        C, a = T.certificate.C, T.certificate.a
        missing_bound = math.fsum(abs(to_complex(raw[n])) * C * a ** (u.vi.r * n) for n in missing)
        logger.debug("Pairing uses certified bound %.3e for %d missing moments",
                     missing_bound, len(missing))

    K = min(T.N, u.N)
    if T.mode is Mode.EXACT and u.mode is Mode.EXACT:
        value = sum((raw[n] * T.moments[n] for n in range(K + 1)), 0)
    else:
        products = [to_complex(raw[n]) * to_complex(T.moments[n]) for n in range(K + 1)]
        value = complex(math.fsum(p.real for p in products), math.fsum(p.imag for p in products))

    terms = pairing_terms(T, u)
    tail_bound = None
    if T.certificate is not None and u.envelope is not None:
        C_u, a_u = u.envelope
        tail_bound = envelope_tail(C_u * T.certificate.C, a_u * T.certificate.a, 1.0, u.vi.r, u.N)
    convergent = bool(np.all(np.isfinite(terms))) and math.isfinite(missing_bound) and (
        tail_bound is None or math.isfinite(tail_bound)
    )
    if not convergent:
        logger.warning("Pairing over %s fails the absolute-convergence test", u.vi.label())
    return PairingReport(value, terms, missing_bound, tail_bound, convergent)


def pair(T: MomentFunctional, u: REvenSeries):
    """<T, u>; exact when both operands are exact."""
    return pairing_report(T, u).value


def pairing_bound_check(T: MomentFunctional, u: REvenSeries) -> Tuple[float, float, bool]:
    """
    Check the continuity estimate |<T, u>| <= 2C ||u||_{2a}.

    The right side uses the majorant, an upper bound on ||u||_{2a}.

    Returns:
        (|<T, u>|, 2C * majorant, passed)
    """
    if T.certificate is None:
        raise IncompletePairingError("the continuity estimate needs a certified functional")
    lhs = abs(to_complex(pair(T, u)))
    rhs = 2 * T.certificate.C * norm_majorant(u, 2 * T.certificate.a)
    return lhs, rhs, lhs <= rhs * (1 + 1e-12)


def fourier(T: MomentFunctional) -> REvenSeries:
    """
    F(T) with normalized coefficients (-1)^n t_n.

    The moment certificate becomes the growth envelope of the transform; an
    uncertified functional gets one fitted on its stored moments.
    """
    coeffs = tuple(t if n % 2 == 0 else -t for n, t in enumerate(T.moments))
    certificate = T.certificate or fit_envelope(T.moments, T.vi.r)
    return REvenSeries(T.vi, coeffs, T.mode, envelope=(certificate.C, certificate.a))


def _check_exponential_type(v: REvenSeries):
    """Reject coefficients growing like (rn)^{K rn} with K bounded away from 0."""
    r = v.vi.r
    points = [(r * n, log_abs(b)) for n, b in enumerate(v.coeffs)
              if n >= max(1, v.N // 2) and b != 0]
    if len(points) < 6:
        return
    m = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    design = np.column_stack([np.ones_like(m), m, m * np.log(m)])
    solution, *_ = np.linalg.lstsq(design, y, rcond=None)
    if solution[2] > SUPEREXP_THRESHOLD:
        raise NotExponentialTypeError(
            f"coefficients grow like (rn)^({solution[2]:.2f} rn); the series is not of exponential type"
        )


def exp_type_fit(v: REvenSeries) -> ExpTypeCertificate:
    """
    Fit (C, a) with |b_n| <= C a^{rn} on the stored range.

    Args:
        v: Series with N >= 8

    Returns:
        Fitted certificate; sound on the stored range by construction

    Raises:
        NotExponentialTypeError: coefficients grow superexponentially
    """
    if v.N < MIN_FIT_ORDER:
        raise ValueError(f"exponential-type fit needs N >= {MIN_FIT_ORDER}, got {v.N}")
    _check_exponential_type(v)
    return fit_envelope(v.coeffs, v.vi.r, CertificateSource.FITTED)


def inverse_fourier(v: REvenSeries) -> MomentFunctional:
    """
    Preimage of v: moments t_n = (-1)^n b_n.

    A declared envelope of v that holds on its coefficients is kept as the
    moment certificate; otherwise one is fitted.
    """
    moments = tuple(b if n % 2 == 0 else -b for n, b in enumerate(v.coeffs))
    certificate = None
    if v.envelope is not None and v.envelope[0] > 0 and v.envelope[1] > 0:
        candidate = ExpTypeCertificate(*v.envelope, CertificateSource.DECLARED)
        if candidate.holds(v.coeffs, v.vi.r, v.mode):
            certificate = candidate
    if certificate is None:
        if v.N >= MIN_FIT_ORDER:
            certificate = exp_type_fit(v)
        else:
            certificate = fit_envelope(v.coeffs, v.vi.r)
    return MomentFunctional(v.vi, moments, v.mode, certificate)


@dataclass(frozen=True)
class PaNormEstimate:
    """
    Grid lower bound of P_a(v) = sup_z |v(z)| e^{-a|z|}.

    Args:
        value: Largest sampled value
        radius: Radius of the sampled disk
        at: Sample point attaining the value
    """
    value: float
    radius: float
    at: complex


def _certified_radius(v: REvenSeries, C: float, a: float, tol: float) -> float:
    """Largest radius (to bisection accuracy) where the envelope tail stays below tol."""
    tail = lambda rho: envelope_tail(C, a, rho, v.vi.r, v.N)
    if tail(1e-3) > tol:
        return 0.0
    hi = 1.0
    while tail(hi) <= tol and hi < 1e4:
        hi *= 2
    lo = hi / 2 if hi > 1.0 else 1e-3
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if tail(mid) <= tol:
            lo = mid
        else:
            hi = mid
    return lo


def pa_norm_estimate(v: REvenSeries, a: float, n_radii: int = 64,
                     n_angles: int = 64) -> PaNormEstimate:
    """
    Sample |v(z)| e^{-a|z|} over the disk where the truncation is certified.

    Only the sector arg z in [0, 2 pi / r) is sampled since |v(wz)| = |v(z)|.
    """
    if a <= 0:
        raise ValueError(f"exponential weight must be positive, got {a}")
    if v.envelope is not None:
        C, a_v = v.envelope
    else:
        certificate = fit_envelope(v.coeffs, v.vi.r)
        C, a_v = certificate.C, certificate.a
    radius = _certified_radius(v, C, a_v, PA_TAIL_TOL)
    radii = np.linspace(0.0, radius, n_radii)
    angles = np.linspace(0.0, 2 * np.pi / v.vi.r, n_angles, endpoint=False)
    points = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    weighted = np.abs(v.to_float().evaluate_grid(points)) * np.exp(-a * np.abs(points))
    best = int(np.argmax(weighted))
    return PaNormEstimate(float(weighted[best]), radius, complex(points[best]))
