"""
Least-squares approximation by Bessel dictionaries {j_gamma(lam .) : lam in nodes}.

A numerical instance of the density of such dictionaries: the residual of the
best combination is measured on the circle |z| = R, which bounds the disk by
the maximum modulus principle.
"""
import csv
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from algebra.bounds import terms_for_tolerance
from algebra.errors import IndexMismatchError
from algebra.index import VectorIndex
from algebra.parallel import parallel_map
from algebra.scalars import Mode
from algebra.series import REvenSeries
from special.bessel import j_series

logger = logging.getLogger(__name__)

RIDGE = 1e-12
DEFAULT_GRID = 256


@dataclass(frozen=True)
class LeastSquaresSolution:
    """
    Solution of min ||A c - b||.

    Args:
        coefficients: Minimizer
        residual: Sup norm of A c - b
        rms: Root mean square of A c - b
        rank: Numerical rank reported by the SVD solver
        regularized: Whether the system was rank deficient and the ridge system was tried
    """
    coefficients: np.ndarray
    residual: float
    rms: float
    rank: int
    regularized: bool


def _residuals(A: np.ndarray, b: np.ndarray, c: np.ndarray):
    diff = A @ c - b
    squares = np.abs(diff) ** 2
    rms = math.sqrt(math.fsum(squares.tolist()) / max(1, diff.size))
    return float(np.max(np.abs(diff))) if diff.size else 0.0, rms


def solve_least_squares(A: np.ndarray, b: np.ndarray, ridge: float = RIDGE) -> LeastSquaresSolution:
    """
    Column-equilibrated SVD least squares with a ridge fallback.

    When the SVD reports a rank below the column count, the augmented system
    [A; sqrt(ridge) I] c = [b; 0] is solved as well and the smaller residual wins.
    Residuals are recomputed with compensated summation.
    """
    A = np.asarray(A, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if A.shape[1] == 0:
        return LeastSquaresSolution(np.zeros(0, dtype=complex), *_residuals(A, b, np.zeros(0)), 0, False)
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    scaled = A / scale
    solution, _, rank, _ = np.linalg.lstsq(scaled, b, rcond=None)
    c = solution / scale
    residual, rms = _residuals(A, b, c)
    regularized = rank < A.shape[1]
    if regularized:
        n = A.shape[1]
        augmented = np.vstack([scaled, math.sqrt(ridge) * np.eye(n)])
        rhs = np.concatenate([b, np.zeros(n, dtype=complex)])
        ridge_solution = np.linalg.lstsq(augmented, rhs, rcond=None)[0] / scale
        ridge_residual, ridge_rms = _residuals(A, b, ridge_solution)
        logger.debug("Rank %d < %d, ridge fallback rms %.3e vs SVD rms %.3e", rank, n, ridge_rms, rms)
        if ridge_rms < rms:
            c, residual, rms = ridge_solution, ridge_residual, ridge_rms
    return LeastSquaresSolution(c, residual, rms, int(rank), bool(regularized))


def circle_grid(R: float, m: int = DEFAULT_GRID) -> np.ndarray:
    """m equispaced points on |z| = R."""
    if R <= 0:
        raise ValueError(f"radius must be positive, got {R}")
    return R * np.exp(2j * np.pi * np.arange(m) / m)


def bessel_columns(vi: VectorIndex, nodes: Sequence[complex], points: np.ndarray,
                   threads: Optional[int] = None) -> np.ndarray:
    """Matrix with columns j_gamma(lam_i z_j), truncated below double resolution."""
    radius = float(np.max(np.abs(points))) if len(points) else 0.0

    def column(lam):
        N = terms_for_tolerance(abs(lam) * radius, vi.r, 1e-17)
        return j_series(vi, complex(lam), max(N, 1), Mode.FLOAT).evaluate_grid(points)

    columns = parallel_map(column, list(nodes), threads)
    if not columns:
        return np.zeros((len(points), 0), dtype=complex)
    return np.column_stack(columns)


@dataclass(frozen=True)
class DensityResult:
    """
    Best approximation of a target by a Bessel dictionary.

    Args:
        nodes: Dictionary parameters lam_i
        coefficients: Witness coefficients c_i
        residual: Sup of the error on the grid
        rms: Root mean square of the error on the grid
        regularized: Whether the ridge fallback was triggered
    """
    nodes: tuple
    coefficients: np.ndarray
    residual: float
    rms: float
    regularized: bool


def density_residual(vi: VectorIndex, nodes: Sequence[complex], target: REvenSeries,
                     R: float, m: int = DEFAULT_GRID,
                     threads: Optional[int] = None) -> DensityResult:
    """
    Least-squares fit of target by sum_i c_i j_gamma(lam_i .) on |z| = R.

    Args:
        vi: Vector index
        nodes: At least one parameter lam_i
        target: Series to approximate
        R: Radius of the disk
        m: Number of grid points on the circle
        threads: Worker cap for column assembly

    Returns:
        DensityResult with sup and rms residuals
    """
    if len(nodes) == 0:
        raise ValueError("density_residual needs at least one node")
    if target.vi != vi:
        raise IndexMismatchError(f"target is over {target.vi.label()}, nodes over {vi.label()}")
    points = circle_grid(R, m)
    A = bessel_columns(vi, nodes, points, threads)
    b = target.to_float().evaluate_grid(points)
    solution = solve_least_squares(A, b)
    return DensityResult(tuple(complex(lam) for lam in nodes), solution.coefficients,
                         solution.residual, solution.rms, solution.regularized)


def write_density_csv(result: DensityResult, stream: TextIO):
    """CSV rows lambda_re, lambda_im, c_re, c_im followed by a residual line."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["lambda_re", "lambda_im", "c_re", "c_im"])
    for lam, c in zip(result.nodes, result.coefficients):
        writer.writerow([repr(lam.real), repr(lam.imag), repr(float(c.real)), repr(float(c.imag))])
    writer.writerow(["residual", repr(result.residual), "rms", repr(result.rms)])
