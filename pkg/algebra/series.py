"""
Truncated r-even entire functions in the normalized basis e_n = z^{rn} / alpha_{rn}.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .bounds import envelope_tail
from .errors import IndexMismatchError, ModeError, SeriesOverflowError
from .index import VectorIndex, alpha, binomial_row, float_ratios
from .scalars import Mode, is_exact, to_complex, to_exact

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 64
MULTIPLY_CAP = 128


def _coerce(value, mode: Mode):
    if mode is Mode.EXACT:
        if not is_exact(value):
            raise ModeError(f"exact series cannot hold {type(value).__name__} coefficients")
        return to_exact(value)
    return to_complex(value)


@dataclass(frozen=True)
class REvenSeries:
    """
    Truncated r-even entire function u(z) = sum_{n<=N} u_n z^{rn} / alpha_{rn}.

    Args:
        vi: Vector index
        coeffs: Normalized coefficients u_0..u_N
        mode: Exact rational or floating arithmetic
        envelope: Optional (C, a) with |u_n| <= C a^{rn} for the untruncated function
    """
    vi: VectorIndex
    coeffs: Tuple
    mode: Mode = Mode.FLOAT
    envelope: Optional[Tuple[float, float]] = field(default=None, compare=False)

    def __post_init__(self):
        coeffs = tuple(_coerce(c, self.mode) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        object.__setattr__(self, 'coeffs', coeffs)

    # Construction

    @classmethod
    def zeros(cls, vi: VectorIndex, N: int = 0, mode: Mode = Mode.EXACT) -> 'REvenSeries':
        return cls(vi, (0,) * (N + 1) if mode is Mode.EXACT else (0j,) * (N + 1), mode,
                   envelope=(0.0, 1.0))

    @classmethod
    def constant(cls, vi: VectorIndex, value=1, N: int = 0,
                 mode: Mode = Mode.EXACT) -> 'REvenSeries':
        zero = 0 if mode is Mode.EXACT else 0j
        return cls(vi, (value,) + (zero,) * N, mode, envelope=(abs(to_complex(value)), 1.0))

    @classmethod
    def basis(cls, vi: VectorIndex, n: int, N: Optional[int] = None,
              mode: Mode = Mode.EXACT) -> 'REvenSeries':
        """The basis element e_n = z^{rn} / alpha_{rn}."""
        N = n if N is None else N
        if N < n:
            raise ValueError(f"truncation {N} cannot hold e_{n}")
        one, zero = (1, 0) if mode is Mode.EXACT else (1 + 0j, 0j)
        return cls(vi, tuple(one if m == n else zero for m in range(N + 1)), mode,
                   envelope=(1.0, 1.0))

    @classmethod
    def from_raw(cls, vi: VectorIndex, raw: Sequence, mode: Mode = Mode.EXACT) -> 'REvenSeries':
        """Build from monomial coefficients c_n of z^{rn}."""
        if mode is Mode.EXACT:
            return cls(vi, tuple(to_exact(c) * alpha(vi, n) for n, c in enumerate(raw)), mode)
        return cls(vi, tuple(to_complex(c) * float(alpha(vi, n)) for n, c in enumerate(raw)), mode)

    # Views

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def raw_coefficients(self) -> Tuple:
        """Monomial coefficients c_n = u_n / alpha_{rn}; exact in exact mode."""
        if self.mode is Mode.EXACT:
            return tuple(u / alpha(self.vi, n) for n, u in enumerate(self.coeffs))
        return tuple(u * float(1 / alpha(self.vi, n)) for n, u in enumerate(self.coeffs))

    def as_array(self) -> np.ndarray:
        return np.array([to_complex(c) for c in self.coeffs], dtype=complex)

    def to_float(self) -> 'REvenSeries':
        if self.mode is Mode.FLOAT:
            return self
        return REvenSeries(self.vi, tuple(to_complex(c) for c in self.coeffs), Mode.FLOAT,
                           self.envelope)

    def to_exact(self) -> 'REvenSeries':
        if self.mode is Mode.EXACT:
            return self
        return REvenSeries(self.vi, tuple(to_exact(c) for c in self.coeffs), Mode.EXACT,
                           self.envelope)

    def resized(self, N: int) -> 'REvenSeries':
        """Truncate or zero-pad to order N."""
        zero = 0 if self.mode is Mode.EXACT else 0j
        coeffs = self.coeffs[:N + 1] + (zero,) * max(0, N - self.N)
        return REvenSeries(self.vi, coeffs, self.mode, self.envelope)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # Evaluation

    def _terms(self, z: complex):
        try:
            x = to_complex(z) ** self.vi.r
        except OverflowError as e:
            raise SeriesOverflowError(f"z^r overflows at z={z}", index=0) from e
        ratios = float_ratios(self.vi, self.N)
        weight = 1 + 0j
        terms = []
        for n, u in enumerate(self.coeffs):
            if n:
                weight = weight * x / ratios[n]
            if u == 0:
                terms.append(0j)
                continue
            try:
                term = to_complex(u) * weight
            except OverflowError as e:
                raise SeriesOverflowError(f"coefficient {n} exceeds double range", index=n) from e
            if not (math.isfinite(term.real) and math.isfinite(term.imag)):
                raise SeriesOverflowError(f"term {n} of the series overflows at z={z}", index=n)
            terms.append(term)
        return terms

    def evaluate(self, z) -> complex:
        """
        Compensated floating evaluation of the truncated series at z.

        Exact-mode series are evaluated exactly when z is exact, see
        ``evaluate_exact``; here the result is always a Python complex.
        """
        terms = self._terms(z)
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    def evaluate_exact(self, z):
        """Exact value at an exact point z (exact mode only)."""
        if self.mode is not Mode.EXACT or not is_exact(z):
            raise ModeError("exact evaluation needs an exact series and an exact point")
        x = to_exact(z) ** self.vi.r
        total = 0
        power = 1
        for n, u in enumerate(self.coeffs):
            total = total + u * power / alpha(self.vi, n)
            power = power * x
        return total

    def tail_bound(self, z) -> Optional[float]:
        """Bound on |u_full(z) - u_N(z)|, or None when the series declares no envelope."""
        if self.envelope is None:
            return None
        C, a = self.envelope
        return envelope_tail(C, a, abs(complex(z)), self.vi.r, self.N)

    def evaluate_with_tail(self, z) -> Tuple[complex, Optional[float]]:
        return self.evaluate(z), self.tail_bound(z)

    def evaluate_grid(self, points) -> np.ndarray:
        """Vectorized evaluation at an array of points."""
        points = np.asarray(points, dtype=complex)
        coeffs = self.as_array()
        nonzero = np.flatnonzero(coeffs)
        # trailing zero coefficients must not contribute overflowing weights
        coeffs = coeffs[:int(nonzero[-1]) + 1] if nonzero.size else coeffs[:1]
        weights = basis_weights(self.vi, points.ravel(), coeffs.size - 1)
        values = weights @ coeffs
        if not np.all(np.isfinite(values)):
            bad = np.argwhere(~np.isfinite(weights * coeffs[None, :]))
            index = int(bad[0, 1]) if bad.size else None
            raise SeriesOverflowError("grid evaluation overflowed", index=index)
        return values.reshape(points.shape)

    # Arithmetic

    def __add__(self, other: 'REvenSeries') -> 'REvenSeries':
        return add(self, other)

    def __sub__(self, other: 'REvenSeries') -> 'REvenSeries':
        return add(self, scalar_mul(-1, other))

    def __neg__(self) -> 'REvenSeries':
        return scalar_mul(-1, self)

    def __mul__(self, other: 'REvenSeries') -> 'REvenSeries':
        return multiply(self, other)


def basis_weights(vi: VectorIndex, points: np.ndarray, N: int) -> np.ndarray:
    """
    Matrix of z_j^{rn} / alpha_{rn}, shape (len(points), N + 1).

    Built by the ratio recursion so alpha_{rn} is never formed in floating point.
    """
    points = np.asarray(points, dtype=complex)
    x = points ** vi.r
    ratios = float_ratios(vi, N)
    weights = np.ones((points.size, N + 1), dtype=complex)
    if N:
        with np.errstate(over='ignore', invalid='ignore'):
            weights[:, 1:] = np.cumprod(x[:, None] / ratios[None, 1:], axis=1)
    return weights


def _common_mode(u: REvenSeries, v: REvenSeries) -> Mode:
    if u.vi != v.vi:
        raise IndexMismatchError(f"series over {u.vi.label()} and {v.vi.label()} cannot be combined")
    return Mode.EXACT if u.mode is Mode.EXACT and v.mode is Mode.EXACT else Mode.FLOAT


def _in_mode(u: REvenSeries, mode: Mode) -> REvenSeries:
    return u if u.mode is mode else u.to_float()


def add(u: REvenSeries, v: REvenSeries) -> REvenSeries:
    """Coefficientwise sum; the shorter operand is zero-padded."""
    mode = _common_mode(u, v)
    N = max(u.N, v.N)
    u, v = _in_mode(u, mode).resized(N), _in_mode(v, mode).resized(N)
    envelope = None
    if u.envelope is not None and v.envelope is not None:
        envelope = (u.envelope[0] + v.envelope[0], max(u.envelope[1], v.envelope[1]))
    return REvenSeries(u.vi, tuple(a + b for a, b in zip(u.coeffs, v.coeffs)), mode, envelope)


def scalar_mul(lam, u: REvenSeries) -> REvenSeries:
    """lam * u; an inexact scalar moves the result to float mode."""
    if u.mode is Mode.EXACT and is_exact(lam):
        lam = to_exact(lam)
        coeffs, mode = tuple(lam * c for c in u.coeffs), Mode.EXACT
    else:
        lam = to_complex(lam)
        coeffs, mode = tuple(lam * to_complex(c) for c in u.coeffs), Mode.FLOAT
    envelope = None if u.envelope is None else (abs(to_complex(lam)) * u.envelope[0], u.envelope[1])
    return REvenSeries(u.vi, coeffs, mode, envelope)


def multiply(u: REvenSeries, v: REvenSeries, cap: int = MULTIPLY_CAP) -> REvenSeries:
    """
    Truncated Cauchy product.

    On raw coefficients this is the ordinary product; re-normalized it reads
    (uv)_n = sum_k binom_gamma(n, k) u_k v_{n-k}.
    """
    mode = _common_mode(u, v)
    u, v = _in_mode(u, mode), _in_mode(v, mode)
    N = min(u.N + v.N, cap)
    zero = 0 if mode is Mode.EXACT else 0j
    coeffs = []
    for n in range(N + 1):
        row = binomial_row(u.vi, n)
        total = zero
        for k in range(max(0, n - v.N), min(n, u.N) + 1):
            b = row[k] if mode is Mode.EXACT else float(row[k])
            total = total + b * u.coeffs[k] * v.coeffs[n - k]
        coeffs.append(total)
    return REvenSeries(u.vi, tuple(coeffs), mode)


def linear_combination(terms: Iterable[Tuple[object, REvenSeries]]) -> REvenSeries:
    """sum_i lam_i u_i over a non-empty iterable of (lam_i, u_i)."""
    result = None
    for lam, u in terms:
        scaled = scalar_mul(lam, u)
        result = scaled if result is None else add(result, scaled)
    if result is None:
        raise ValueError("empty linear combination")
    return result
