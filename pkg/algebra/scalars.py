"""
Scalar arithmetic for the two coefficient modes.

Exact mode keeps coefficients as ``Fraction`` (real rationals) or
``GaussianRational`` (complex rationals); float mode uses Python ``complex``.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union


class Mode(Enum):
    """Arithmetic mode of a series or functional."""
    EXACT = "exact"
    FLOAT = "float"


def _parts(value) -> Optional[Tuple[Fraction, Fraction]]:
    """Split an exact scalar into (real, imaginary) Fractions."""
    if isinstance(value, GaussianRational):
        return value.re, value.im
    if isinstance(value, (int, Fraction)):
        return Fraction(value), Fraction(0)
    return None


@dataclass(frozen=True)
class GaussianRational:
    """
    Complex number with rational real and imaginary parts.

    Args:
        re: Real part
        im: Imaginary part
    """
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    def __add__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_exact(self.re + parts[0], self.im + parts[1])

    __radd__ = __add__

    def __sub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_exact(self.re - parts[0], self.im - parts[1])

    def __rsub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_exact(parts[0] - self.re, parts[1] - self.im)

    def __mul__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        return make_exact(self.re * c - self.im * d, self.re * d + self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return make_exact((self.re * c + self.im * d) / den,
                          (self.im * c - self.re * d) / den)

    def __rtruediv__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return GaussianRational(*parts) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1 / (self ** -exponent)
        result = Fraction(1)
        base = self
        while exponent:
            if exponent & 1:
                result = base * result
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self):
        return make_exact(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return self.re == parts[0] and self.im == parts[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


ExactScalar = Union[Fraction, GaussianRational]
Scalar = Union[Fraction, GaussianRational, complex]


def make_exact(re: Fraction, im: Fraction) -> ExactScalar:
    """Build an exact scalar, collapsing to ``Fraction`` when the imaginary part vanishes."""
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, GaussianRational))


def to_exact(value) -> ExactScalar:
    """
    Convert a number to an exact scalar.

    Floats are converted by their exact binary value; strings are parsed as
    rationals (``"3/4"``, ``"-0.5"``).
    """
    if isinstance(value, GaussianRational):
        return make_exact(value.re, value.im)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, complex):
        return make_exact(Fraction(value.real), Fraction(value.imag))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def to_complex(value) -> complex:
    """Convert any supported scalar to a Python complex."""
    if isinstance(value, Fraction):
        return complex(float(value))
    return complex(value)


def abs_squared(value):
    """Squared modulus, exact for exact scalars."""
    if isinstance(value, GaussianRational):
        return value.abs2()
    if isinstance(value, (int, Fraction)):
        return Fraction(value) * Fraction(value)
    return abs(value) ** 2


def log_abs(value) -> float:
    """
    Natural logarithm of |value| without overflowing on huge rationals.

    Returns ``-inf`` for zero.
    """
    if value == 0:
        return float('-inf')
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return math.log(abs(value.numerator)) - math.log(value.denominator)
    if isinstance(value, GaussianRational):
        sq = value.abs2()
        return 0.5 * (math.log(sq.numerator) - math.log(sq.denominator))
    return math.log(abs(value))


def parse_rational(text) -> Fraction:
    """Parse a rational given as string, int or Fraction."""
    if isinstance(text, float):
        raise TypeError("rationals must be given as strings, not floats")
    return Fraction(text) if not isinstance(text, str) else Fraction(text.strip())


def parse_complex_pair(pair, mode: Mode) -> Scalar:
    """Parse a JSON ``[re, im]`` pair in the requested mode."""
    re, im = pair
    if mode is Mode.EXACT:
        re, im = to_exact(re), to_exact(im)
        return make_exact(re, im)
    return complex(float(Fraction(re)) if isinstance(re, str) else float(re),
                   float(Fraction(im)) if isinstance(im, str) else float(im))


def format_pair(value, mode: Mode):
    """Serialize a scalar to a JSON ``[re, im]`` pair; exact mode uses strings."""
    if mode is Mode.EXACT:
        parts = _parts(to_exact(value))
        return [str(parts[0]), str(parts[1])]
    value = to_complex(value)
    return [value.real, value.imag]
