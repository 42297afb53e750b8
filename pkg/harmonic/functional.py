"""
Moment functionals: elements of the dual of the r-even entire functions.

A functional T is stored through its moments t_n = <T, w^{rn}> together with an
optional growth certificate |t_n| <= C a^{rn}.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from algebra.index import VectorIndex, alpha_ratio
from algebra.scalars import Mode, abs_squared, is_exact, log_abs, to_complex, to_exact
from algebra.series import DEFAULT_TRUNCATION, REvenSeries

logger = logging.getLogger(__name__)

# Fitted constants are widened by this factor so float rounding never breaks them
FIT_SLACK = 1 + 1e-9
RADIUS_SLACK = 1 + 4 * 2.0 ** -52


class CertificateSource(Enum):
    """Where a growth certificate came from."""
    DECLARED = "declared"
    FITTED = "fitted"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class ExpTypeCertificate:
    """
    Growth constants (C, a) with |b_n| <= C a^{rn}.

    Args:
        C: Positive constant
        a: Positive exponential type
        source: Declared by the caller, fitted on stored data or composed heuristically
        zero_series: Set when the fitted data was identically zero
    """
    C: float
    a: float
    source: CertificateSource = CertificateSource.DECLARED
    zero_series: bool = False

    def __post_init__(self):
        if not (self.C > 0 and self.a > 0):
            raise ValueError(f"certificate needs C > 0 and a > 0, got C={self.C}, a={self.a}")

    def bound(self, n: int, r: int) -> float:
        return self.C * self.a ** (r * n)

    def holds(self, values: Sequence, r: int, mode: Mode) -> bool:
        """Check |v_n| <= C a^{rn} on every stored value; exact comparison in exact mode."""
        if mode is Mode.EXACT:
            C, a = Fraction(self.C), Fraction(self.a)
            return all(abs_squared(v) <= (C * a ** (r * n)) ** 2 for n, v in enumerate(values))
        log_C, log_a = math.log(self.C), math.log(self.a)
        for n, v in enumerate(values):
            if v == 0:
                continue
            if log_abs(v) > log_C + r * n * log_a + 1e-12:
                return False
        return True


def fit_envelope(values: Sequence, r: int,
                 source: CertificateSource = CertificateSource.FITTED) -> ExpTypeCertificate:
    """
    Smallest geometric envelope of the stored values.

    a = max_{n >= 1} |v_n|^{1/(rn)} (clamped to 1 when no v_n with n >= 1 is
    nonzero) and C = max_n |v_n| / a^{rn}. An all-zero sequence yields (1, 1)
    with ``zero_series`` set.
    """
    logs = [(n, log_abs(v)) for n, v in enumerate(values) if v != 0]
    if not logs:
        return ExpTypeCertificate(1.0, 1.0, source, zero_series=True)
    higher = [lv / (r * n) for n, lv in logs if n >= 1]
    log_a = max(higher) if higher else 0.0
    a = math.exp(log_a)
    if a == 0.0 or not math.isfinite(a):
        raise OverflowError(f"fitted exponential type exp({log_a}) is outside double range")
    log_C = max(lv - r * n * math.log(a) for n, lv in logs)
    return ExpTypeCertificate(math.exp(log_C) * FIT_SLACK, a, source)


def _coerce(value, mode: Mode):
    if mode is Mode.EXACT:
        if not is_exact(value):
            raise TypeError(f"exact functional cannot hold {type(value).__name__} moments")
        return to_exact(value)
    return to_complex(value)


@dataclass(frozen=True)
class MomentFunctional:
    """
    Functional T represented by moments t_0..t_M.

    Args:
        vi: Vector index
        moments: t_n = <T, w^{rn}>
        mode: Exact rational or floating arithmetic
        certificate: Optional growth certificate checked on the stored range
    """
    vi: VectorIndex
    moments: Tuple
    mode: Mode = Mode.EXACT
    certificate: Optional[ExpTypeCertificate] = field(default=None, compare=False)

    def __post_init__(self):
        moments = tuple(_coerce(t, self.mode) for t in self.moments)
        if not moments:
            raise ValueError("a functional needs at least one moment")
        object.__setattr__(self, 'moments', moments)
        if self.certificate is not None and not self.certificate.holds(moments, self.vi.r, self.mode):
            raise ValueError(
                f"certificate (C={self.certificate.C}, a={self.certificate.a}) "
                f"is violated on the stored moments"
            )

    @classmethod
    def delta(cls, vi: VectorIndex, N: int = DEFAULT_TRUNCATION,
              mode: Mode = Mode.EXACT) -> 'MomentFunctional':
        """Dirac functional at 0: t_0 = 1, t_n = 0 otherwise."""
        one, zero = (1, 0) if mode is Mode.EXACT else (1 + 0j, 0j)
        return cls(vi, (one,) + (zero,) * N, mode, ExpTypeCertificate(1.0, 1.0))

    @classmethod
    def delta_at(cls, vi: VectorIndex, a, N: int = DEFAULT_TRUNCATION,
                 mode: Optional[Mode] = None) -> 'MomentFunctional':
        """Point evaluation at a: t_n = a^{rn}."""
        if mode is None:
            mode = Mode.EXACT if is_exact(a) else Mode.FLOAT
        a = to_exact(a) if mode is Mode.EXACT else to_complex(a)
        x = a ** vi.r
        moments = []
        power = to_exact(1) if mode is Mode.EXACT else 1 + 0j
        for _ in range(N + 1):
            moments.append(power)
            power = power * x
        radius = abs(to_complex(a)) * RADIUS_SLACK
        certificate = ExpTypeCertificate(FIT_SLACK, radius if radius > 0 else 1.0)
        return cls(vi, tuple(moments), mode, certificate)

    @property
    def N(self) -> int:
        return len(self.moments) - 1

    def to_float(self) -> 'MomentFunctional':
        if self.mode is Mode.FLOAT:
            return self
        return MomentFunctional(self.vi, tuple(to_complex(t) for t in self.moments),
                                Mode.FLOAT, self.certificate)

    def resized(self, N: int) -> 'MomentFunctional':
        """Truncate or zero-pad to N + 1 moments."""
        zero = 0 if self.mode is Mode.EXACT else 0j
        moments = self.moments[:N + 1] + (zero,) * max(0, N - self.N)
        return MomentFunctional(self.vi, moments, self.mode, self.certificate)

    def apply_br(self) -> 'MomentFunctional':
        """
        B_r acting by transposition, <B_r T, u> = <T, B_r u>.

        (B_r T)_0 = 0 and (B_r T)_n = alpha_{rn} / alpha_{r(n-1)} * t_{n-1}; the
        stored range is kept. The certificate is refitted on the new range.
        """
        zero = 0 if self.mode is Mode.EXACT else 0j
        moments = [zero]
        for n in range(1, self.N + 1):
            ratio = alpha_ratio(self.vi, n)
            moments.append((ratio if self.mode is Mode.EXACT else float(ratio)) * self.moments[n - 1])
        certificate = None
        if self.certificate is not None:
            certificate = fit_envelope(moments, self.vi.r, CertificateSource.HEURISTIC)
        return MomentFunctional(self.vi, tuple(moments), self.mode, certificate)


def functional_from_series(v: REvenSeries) -> MomentFunctional:
    """
    The functional T_v whose moments are the normalized coefficients of v.

    A declared envelope of v becomes the certificate; otherwise one is fitted.
    """
    certificate = None
    if v.envelope is not None and v.envelope[0] > 0 and v.envelope[1] > 0:
        C, a = v.envelope
        certificate = ExpTypeCertificate(C * FIT_SLACK, a * RADIUS_SLACK)
        if not certificate.holds(v.coeffs, v.vi.r, v.mode):
            logger.debug("Declared envelope of the series fails on its coefficients, refitting")
            certificate = None
    if certificate is None:
        certificate = fit_envelope(v.coeffs, v.vi.r)
    return MomentFunctional(v.vi, v.coeffs, v.mode, certificate)
