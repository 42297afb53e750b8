"""
Vector index and the exact constants of the hyper-Bessel operator.

All constants are exact rationals: alpha_{rn}(gamma), the coefficients a_k of
the expanded operator, the constant M of the power estimate and the
generalized binomials.
"""
import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvalidIndexError
from .scalars import parse_rational


@dataclass(frozen=True)
class VectorIndex:
    """
    The pair (r, gamma) parametrizing the calculus.

    Args:
        r: Order of the operator (r >= 2)
        gamma: r - 1 rationals with gamma_k >= -1 + k/r
    """
    r: int
    gamma: Tuple[Fraction, ...]

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, int) or self.r < 2:
            raise InvalidIndexError(f"r must be an integer >= 2, got {self.r!r}")
        try:
            gamma = tuple(parse_rational(g) for g in self.gamma)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidIndexError(f"gamma entries must be rationals: {e}") from e
        if len(gamma) != self.r - 1:
            raise InvalidIndexError(
                f"gamma must have r - 1 = {self.r - 1} components, got {len(gamma)}"
            )
        for k, g in enumerate(gamma, start=1):
            bound = Fraction(k - self.r, self.r)
            if g < bound:
                raise InvalidIndexError(f"gamma_{k} = {g} is below -1 + {k}/{self.r} = {bound}")
        object.__setattr__(self, 'gamma', gamma)

    @classmethod
    def derivative(cls, r: int) -> 'VectorIndex':
        """Index with gamma_k = -1 + k/r, for which B_r = d^r/dz^r."""
        return cls(r, tuple(Fraction(k - r, r) for k in range(1, r)))

    @property
    def root_of_unity(self) -> complex:
        """w = exp(2 i pi / r)."""
        return cmath.exp(2j * cmath.pi / self.r)

    @property
    def eigen_rotation(self) -> complex:
        """exp(i pi / r), mapping the eigen-symbol onto the symbol."""
        return cmath.exp(1j * cmath.pi / self.r)

    def label(self) -> str:
        return f"r={self.r}, gamma=({', '.join(str(g) for g in self.gamma)})"


_ALPHA_CACHE: Dict[VectorIndex, List[Fraction]] = {}
_ALPHA_LOCK = threading.Lock()


@lru_cache(maxsize=4096)
def alpha_ratio(vi: VectorIndex, n: int) -> Fraction:
    """alpha_{rn} / alpha_{r(n-1)} = r^r * n * prod_i (gamma_i + n)."""
    if n < 1:
        raise ValueError(f"alpha_ratio needs n >= 1, got {n}")
    value = Fraction(vi.r ** vi.r * n)
    for g in vi.gamma:
        value *= g + n
    return value


def _alpha_prefix(vi: VectorIndex, n: int) -> List[Fraction]:
    with _ALPHA_LOCK:
        values = _ALPHA_CACHE.setdefault(vi, [Fraction(1)])
        while len(values) <= n:
            values.append(values[-1] * alpha_ratio(vi, len(values)))
        return values[:n + 1]


def alpha(vi: VectorIndex, n: int) -> Fraction:
    """
    Normalization constant alpha_{rn}(gamma).

    Args:
        vi: Vector index
        n: Nonnegative index

    Returns:
        r^{rn} n! prod_i prod_{j=1..n} (gamma_i + j) as an exact rational
    """
    if n < 0:
        raise ValueError(f"alpha needs n >= 0, got {n}")
    return _alpha_prefix(vi, n)[n]


def alpha_direct(vi: VectorIndex, n: int) -> Fraction:
    """alpha_{rn} from the closed product, without the shared cache."""
    value = Fraction(vi.r) ** (vi.r * n) * math.factorial(n)
    for g in vi.gamma:
        for j in range(1, n + 1):
            value *= g + j
    return value


@lru_cache(maxsize=256)
def _float_ratios(vi: VectorIndex, n: int) -> Tuple[float, ...]:
    return (1.0,) + tuple(float(alpha_ratio(vi, m)) for m in range(1, n + 1))


def float_ratios(vi: VectorIndex, n: int) -> np.ndarray:
    """Float ratios rho_0..rho_n with rho_0 = 1 and rho_m = alpha_ratio(m)."""
    return np.array(_float_ratios(vi, n), dtype=float)


@dataclass(frozen=True)
class AlphaTable:
    """
    Exact table alpha_{r*0} .. alpha_{r*N}.

    Args:
        vi: Vector index
        values: Exact constants
    """
    vi: VectorIndex
    values: Tuple[Fraction, ...]

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def violations(self) -> List[str]:
        """List every broken invariant; empty when the table is sound."""
        problems = []
        r = self.vi.r
        if self.values[0] != 1:
            problems.append("alpha_0 != 1")
        for n, value in enumerate(self.values):
            if value <= 0:
                problems.append(f"alpha_{r * n} <= 0")
            if value < math.factorial(r * n):
                problems.append(f"alpha_{r * n} < ({r * n})!")
            if n >= 1 and value != self.values[n - 1] * alpha_ratio(self.vi, n):
                problems.append(f"ratio law broken at n={n}")
        return problems


def alpha_table(vi: VectorIndex, N: int) -> AlphaTable:
    return AlphaTable(vi, tuple(_alpha_prefix(vi, N)))


def falling_factorial(m: int, j: int) -> int:
    """(m)_j = m (m-1) ... (m-j+1)."""
    value = 1
    for i in range(j):
        value *= m - i
    return value


def product_form(vi: VectorIndex, m: int) -> Fraction:
    """Eigenvalue of z^m under the product form: B_r z^m = m prod_i (m + r gamma_i) z^{m-r}."""
    value = Fraction(m)
    for g in vi.gamma:
        value *= m + vi.r * g
    return value


@dataclass(frozen=True)
class BrCoefficients:
    """
    Coefficients a_1..a_{r-1} of B_r = d^r + sum_k a_k z^{-k} d^{r-k}.

    Args:
        vi: Vector index
        a: a_1..a_{r-1}, solved from the product form
        M: 1 + sum_k |a_k| / k!
        literal: Closed form with binom(j-1, k-1), as printed
        transposed: Closed form with binom(k-1, j-1)
    """
    vi: VectorIndex
    a: Tuple[Fraction, ...]
    M: Fraction
    literal: Tuple[Fraction, ...]
    transposed: Tuple[Fraction, ...]

    def coefficient(self, k: int) -> Fraction:
        """a_k with a_0 = 1."""
        return Fraction(1) if k == 0 else self.a[k - 1]

    def identity_holds(self, m: int) -> bool:
        """Check m prod_i (m + r gamma_i) = sum_k a_k (m)_{r-k} at one integer m."""
        r = self.vi.r
        rhs = sum(self.coefficient(k) * falling_factorial(m, r - k) for k in range(r))
        return rhs == product_form(self.vi, m)

    @property
    def literal_agrees(self) -> Tuple[bool, ...]:
        return tuple(x == y for x, y in zip(self.a, self.literal))

    @property
    def transposed_agrees(self) -> Tuple[bool, ...]:
        return tuple(x == y for x, y in zip(self.a, self.transposed))


def _closed_form(vi: VectorIndex, transposed: bool) -> Tuple[Fraction, ...]:
    r = vi.r
    result = [Fraction(0)] * (r - 1)
    for k in range(1, r):
        total = Fraction(0)
        for j in range(1, k + 1):
            binom = math.comb(k - 1, j - 1) if transposed else math.comb(j - 1, k - 1)
            prod = Fraction(1)
            for g in vi.gamma:
                prod *= r * g + j
            total += (-1) ** (k - j) * binom * prod
        # a_{r-k} sits at position r-k-1
        result[r - k - 1] = total / math.factorial(k - 1)
    return tuple(result)


@lru_cache(maxsize=None)
def derive_br_coefficients(vi: VectorIndex) -> BrCoefficients:
    """
    Solve the falling-factorial system for a_1..a_{r-1}.

    The system m prod_i (m + r gamma_i) = sum_k a_k (m)_{r-k} is triangular at
    m = 1..r-1, so each a_{r-m} is obtained by forward substitution.
    """
    r = vi.r
    a = {0: Fraction(1)}
    for m in range(1, r):
        known = sum((a[r - j] * falling_factorial(m, j) for j in range(1, m)), Fraction(0))
        a[r - m] = (product_form(vi, m) - known) / math.factorial(m)
    coeffs = tuple(a[k] for k in range(1, r))
    M = 1 + sum((abs(c) / math.factorial(k) for k, c in enumerate(coeffs, start=1)), Fraction(0))
    result = BrCoefficients(vi, coeffs, M, _closed_form(vi, False), _closed_form(vi, True))
    assert all(result.identity_holds(m) for m in range(r)), "falling-factorial system is singular"
    return result


def generalized_binomial(vi: VectorIndex, n: int, k: int) -> Fraction:
    """alpha_{rn} / (alpha_{rk} alpha_{r(n-k)})."""
    if not 0 <= k <= n:
        raise ValueError(f"generalized binomial needs 0 <= k <= n, got n={n}, k={k}")
    values = _alpha_prefix(vi, n)
    return values[n] / (values[k] * values[n - k])


def binomial_row(vi: VectorIndex, n: int) -> Tuple[Fraction, ...]:
    """Generalized binomials for k = 0..n."""
    values = _alpha_prefix(vi, n)
    return tuple(values[n] / (values[k] * values[n - k]) for k in range(n + 1))


def make_index(r: int, gamma: Sequence) -> VectorIndex:
    """Build a VectorIndex from rational strings or numbers."""
    return VectorIndex(int(r), tuple(gamma))
