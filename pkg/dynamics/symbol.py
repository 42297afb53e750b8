"""
Eigen-symbol Psi(lam) = Phi(e^{i pi / r} lam) and the contracting/expanding scan.

L j_gamma(lam .) = Psi(lam) j_gamma(lam .), and Psi(w lam) = Psi(lam) for the
r-th root of unity w, so scans only cover the sector arg lam in [0, 2 pi / r).
"""
import csv
import logging
from dataclasses import dataclass, field
from typing import List, Optional, TextIO

import numpy as np

from algebra.errors import GridExhaustedError
from algebra.index import float_ratios
from algebra.parallel import parallel_map
from algebra.scalars import to_complex
from algebra.series import basis_weights

from .operator import ConvolutionOperator

logger = logging.getLogger(__name__)

SCAN_RADIUS = 4.0
SCAN_RADII = 32
SCAN_ANGLES = 64
MAX_ENLARGEMENTS = 3
# |Psi| within this distance of 1 is neither contracting nor expanding
BOUNDARY_TOL = 1e-9


def symbol_values(L: ConvolutionOperator, lams) -> np.ndarray:
    """Vectorized Psi(lam) = sum_n b_n (-lam^r)^n / alpha_{rn}."""
    lams = np.asarray(lams, dtype=complex)
    b = np.array([to_complex(c) for c in L.symbol], dtype=complex)
    weights = basis_weights(L.vi, lams.ravel() * L.vi.eigen_rotation, L.K)
    return (weights @ b).reshape(lams.shape)


def symbol_eigenvalue(L: ConvolutionOperator, lam) -> complex:
    """Eigenvalue of L on j_gamma(lam .)."""
    return complex(symbol_values(L, np.array([to_complex(lam)]))[0])


def symbol_derivative(L: ConvolutionOperator, lam) -> complex:
    """Psi'(lam) = sum_n b_n / alpha_{rn} * n (-1)^n r lam^{rn - 1}, by termwise differentiation."""
    lam = to_complex(lam)
    if lam == 0:
        return 0j
    r = L.vi.r
    x = -lam ** r
    ratios = float_ratios(L.vi, L.K)
    weight, total = 1 + 0j, 0j
    for n in range(1, L.K + 1):
        weight = weight * x / ratios[n]
        total += to_complex(L.symbol[n]) * n * weight
    return r * total / lam


def canonical(lam: complex, r: int) -> complex:
    """Rotate lam by a power of the root of unity into arg in [0, 2 pi / r)."""
    if lam == 0:
        return 0j
    sector = 2 * np.pi / r
    phase = float(np.angle(lam))
    k = int(np.floor(phase / sector + 1e-12))
    return complex(lam * np.exp(-1j * sector * k))


@dataclass
class GsScan:
    """
    Samples of the eigen-symbol split into contracting and expanding parameters.

    Args:
        A_samples: lam with |Psi(lam)| < 1 - tol, largest margin first
        B_samples: lam with |Psi(lam)| > 1 + tol, largest margin first
        is_scalar: The operator is a scalar multiple of the identity
        radius: Radius of the final grid
        points: Every sampled lam
        values: Psi at every sampled lam
        boundary_samples: lam with ||Psi(lam)| - 1| <= tol, in neither set
    """
    A_samples: List[complex]
    B_samples: List[complex]
    is_scalar: bool
    radius: float = 0.0
    points: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    values: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    boundary_samples: List[complex] = field(default_factory=list)


def polar_sector_grid(r: int, radius: float, n_radii: int, n_angles: int) -> np.ndarray:
    radii = radius * np.arange(1, n_radii + 1) / n_radii
    angles = 2 * np.pi / r * np.arange(n_angles) / n_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def _order_by_margin(points: np.ndarray, values: np.ndarray) -> List[complex]:
    margin = np.round(np.abs(1.0 - np.abs(values)), 12)
    order = np.lexsort((np.abs(points), -margin))
    return [complex(points[i]) for i in order]


def gs_scan(L: ConvolutionOperator, radius: float = SCAN_RADIUS, n_radii: int = SCAN_RADII,
            n_angles: int = SCAN_ANGLES, max_enlargements: int = MAX_ENLARGEMENTS,
            threads: Optional[int] = None, tol: float = BOUNDARY_TOL) -> GsScan:
    """
    Sample Psi on a polar grid and collect A = {|Psi| < 1} and B = {|Psi| > 1}.

    Samples with ||Psi| - 1| <= tol are reported as boundary samples and kept
    out of both sets. The grid radius is doubled until both sets are nonempty.

    Raises:
        GridExhaustedError: if A or B is still empty after the last enlargement
    """
    if L.is_scalar:
        return GsScan([], [], True)
    for attempt in range(max_enlargements + 1):
        points = polar_sector_grid(L.vi.r, radius, n_radii, n_angles)
        rows = parallel_map(lambda row: symbol_values(L, row), np.split(points, n_radii), threads)
        values = np.concatenate(rows)
        finite = np.isfinite(values)
        moduli = np.abs(values)
        inside = finite & (moduli < 1 - tol)
        outside = finite & (moduli > 1 + tol)
        if inside.any() and outside.any():
            boundary = finite & ~inside & ~outside
            return GsScan(_order_by_margin(points[inside], values[inside]),
                          _order_by_margin(points[outside], values[outside]),
                          False, radius, points, values,
                          [complex(lam) for lam in points[boundary]])
        logger.info("Symbol scan at radius %.3g found %d contracting and %d expanding samples",
                    radius, int(inside.sum()), int(outside.sum()))
        radius *= 2
    raise GridExhaustedError(
        f"no grid up to radius {radius / 2:.3g} separates |Psi| < 1 from |Psi| > 1"
    )


def write_symbol_csv(scan: GsScan, stream: TextIO):
    """CSV of the scanned grid: lambda_re, lambda_im, psi_re, psi_im, abs_psi."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["lambda_re", "lambda_im", "psi_re", "psi_im", "abs_psi"])
    for lam, psi in zip(scan.points, scan.values):
        writer.writerow([repr(float(lam.real)), repr(float(lam.imag)),
                         repr(float(psi.real)), repr(float(psi.imag)), repr(float(abs(psi)))])
