"""
Convolution operators L = Phi(B_r) = sum_n b_n B_r^n / alpha_{rn}.

The symbol Phi(z) = sum_n b_n z^{rn} / alpha_{rn} is stored by its normalized
coefficients b_0..b_K. Every continuous operator commuting with B_r has this
form, and b_n = <T, w^{rn}> for the functional T with L u = T * u.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from algebra.errors import IndexMismatchError
from algebra.index import VectorIndex, alpha
from algebra.scalars import Mode, is_exact, to_complex, to_exact
from algebra.series import DEFAULT_TRUNCATION, REvenSeries
from harmonic.convolution import convolve
from harmonic.functional import ExpTypeCertificate, MomentFunctional, fit_envelope

logger = logging.getLogger(__name__)

DEFAULT_SYMBOL_ORDER = 20


def _coerce(value, mode: Mode):
    return to_exact(value) if mode is Mode.EXACT else to_complex(value)


@dataclass(frozen=True)
class ConvolutionOperator:
    """
    Convolution operator given by its symbol.

    Args:
        vi: Vector index
        symbol: Normalized symbol coefficients b_0..b_K
        mode: Exact rational or floating arithmetic
        certificate: Growth certificate of the symbol on its stored range
    """
    vi: VectorIndex
    symbol: Tuple
    mode: Mode = Mode.EXACT
    certificate: Optional[ExpTypeCertificate] = field(default=None, compare=False)

    def __post_init__(self):
        symbol = tuple(_coerce(b, self.mode) for b in self.symbol)
        if not symbol:
            raise ValueError("a convolution operator needs at least one symbol coefficient")
        object.__setattr__(self, 'symbol', symbol)
        if self.certificate is None:
            object.__setattr__(self, 'certificate', fit_envelope(symbol, self.vi.r))

    @classmethod
    def from_symbol(cls, vi: VectorIndex, symbol: Sequence, mode: Optional[Mode] = None):
        if mode is None:
            mode = Mode.EXACT if all(is_exact(b) for b in symbol) else Mode.FLOAT
        return cls(vi, tuple(symbol), mode)

    @classmethod
    def identity(cls, vi: VectorIndex, scale=1) -> 'ConvolutionOperator':
        """scale times the identity, Phi = scale."""
        return cls.from_symbol(vi, (scale,))

    @classmethod
    def hyper_bessel(cls, vi: VectorIndex) -> 'ConvolutionOperator':
        """B_r itself, Phi(z) = z^r, i.e. b_1 = alpha_r."""
        return cls(vi, (0, alpha(vi, 1)), Mode.EXACT)

    @classmethod
    def translation(cls, vi: VectorIndex, a, K: int = DEFAULT_SYMBOL_ORDER) -> 'ConvolutionOperator':
        """Delsarte translation T_a, Phi = G_gamma(a .), truncated at symbol order K."""
        mode = Mode.EXACT if is_exact(a) else Mode.FLOAT
        x = _coerce(a, mode) ** vi.r
        return cls(vi, tuple(x ** n for n in range(K + 1)), mode)

    @classmethod
    def from_functional(cls, T: MomentFunctional) -> 'ConvolutionOperator':
        """b_n = t_n."""
        return cls(T.vi, T.moments, T.mode, T.certificate)

    def to_functional(self) -> MomentFunctional:
        return MomentFunctional(self.vi, self.symbol, self.mode, self.certificate)

    @property
    def K(self) -> int:
        return len(self.symbol) - 1

    @property
    def valuation(self) -> int:
        """Index of the first nonzero symbol coefficient (0 for the zero operator)."""
        return next((n for n, b in enumerate(self.symbol) if b != 0), 0)

    @property
    def is_scalar(self) -> bool:
        """True when L is a scalar multiple of the identity."""
        return all(b == 0 for b in self.symbol[1:])

    def symbol_series(self) -> REvenSeries:
        """Phi as a series."""
        return REvenSeries(self.vi, self.symbol, self.mode,
                           envelope=(self.certificate.C, self.certificate.a))

    def to_float(self) -> 'ConvolutionOperator':
        if self.mode is Mode.FLOAT:
            return self
        return ConvolutionOperator(self.vi, tuple(to_complex(b) for b in self.symbol),
                                   Mode.FLOAT, self.certificate)

    def apply(self, u: REvenSeries) -> REvenSeries:
        return apply(self, u)

    def __call__(self, u: REvenSeries) -> REvenSeries:
        return apply(self, u)


def apply(L: ConvolutionOperator, u: REvenSeries) -> REvenSeries:
    """
    L u through the shift form, result_m = sum_n b_n / alpha_{rn} * u_{m+n}.

    Exact when both operands are exact.

    Args:
        L: Convolution operator with symbol order K
        u: Series of order N

    Returns:
        Series of order N - v, v the valuation of the symbol
    """
    if L.vi != u.vi:
        raise IndexMismatchError(f"operator over {L.vi.label()} cannot act on series over {u.vi.label()}")
    # symbol coefficients past K are zero, not unknown
    zero = 0 if L.mode is Mode.EXACT else 0j
    padded = L.symbol + (zero,) * max(0, u.N - L.K)
    return convolve(MomentFunctional(L.vi, padded, L.mode), u)


def apply_power(L: ConvolutionOperator, u: REvenSeries, n: int) -> REvenSeries:
    """L^n u by repeated application; drops n times the valuation."""
    if n < 0:
        raise ValueError(f"power must be nonnegative, got {n}")
    for _ in range(n):
        u = apply(L, u)
    return u


def window_order(L: ConvolutionOperator, n: int, N: int = DEFAULT_TRUNCATION) -> int:
    """Input order whose first N + 1 coefficients survive n applications fully determined."""
    return N + L.K * n
