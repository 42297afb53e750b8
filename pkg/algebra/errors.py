"""
Exception hierarchy shared by every package.
"""
from typing import Optional


class HyperBesselError(Exception):
    """Base class for all errors raised by the toolkit."""


class InvalidIndexError(HyperBesselError, ValueError):
    """Vector index violates r >= 2 or gamma_k >= -1 + k/r."""


class IndexMismatchError(HyperBesselError, ValueError):
    """Operands of a binary operation carry different vector indices."""


class ModeError(HyperBesselError, ValueError):
    """Operation is not available in the arithmetic mode of its operand."""


class SeriesOverflowError(HyperBesselError, OverflowError):
    """
    Floating evaluation produced a non-finite term.

    Args:
        message: Human readable description
        index: Offending term index
    """

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class PrecisionError(HyperBesselError, ArithmeticError):
    """Requested tolerance is below what double precision can certify."""


class IncompletePairingError(HyperBesselError):
    """Pairing needs moments that are neither stored nor certified."""


class NotExponentialTypeError(HyperBesselError):
    """Normalized coefficients grow faster than any geometric sequence."""


class GridExhaustedError(HyperBesselError):
    """Eigen-symbol scan did not find both contracting and expanding samples."""


class ScalarOperatorError(HyperBesselError):
    """Operation needs a convolution operator that is not a scalar multiple of the identity."""


class WitnessFailure(HyperBesselError):
    """
    Transitivity witness did not reach the requested tolerance.

    Args:
        message: Human readable description
        residual_start: Best residual of ||u - h||
        residual_end: Best residual of ||L^N u - g||
        nodes: Node count per set at the best attempt
    """

    def __init__(self, message: str, residual_start: float, residual_end: float,
                 nodes: int):
        super().__init__(message)
        self.residual_start = residual_start
        self.residual_end = residual_end
        self.nodes = nodes
