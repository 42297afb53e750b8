"""
Transitivity witnesses: a series u close to h whose N-th image is close to g.

Contracting eigenfunctions (|Psi| < 1) carry u towards h while their images
fade; expanding eigenfunctions pre-scaled by Psi^{-N} carry the images
towards g while fading in u itself. One joint least-squares problem on the
circle |z| = R picks both coefficient sets.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from algebra.errors import ScalarOperatorError, SeriesOverflowError, WitnessFailure
from algebra.scalars import Mode
from algebra.series import DEFAULT_TRUNCATION, REvenSeries, linear_combination
from harmonic.density import bessel_columns, circle_grid, solve_least_squares
from special.bessel import j_series

from .operator import ConvolutionOperator, apply_power, window_order
from .symbol import GsScan, gs_scan, symbol_values

logger = logging.getLogger(__name__)

DEFAULT_NODES = 16
MAX_NODES = 128
MIN_SEPARATION = 0.05
WITNESS_GRID = 128


@dataclass
class TransitivityWitness:
    """
    One transitivity step realized at truncated scale.

    Args:
        h: Start target
        g: End target
        eps: Requested tolerance
        R: Radius of the disk
        N: Iterate count
        witness: The series u
        residual_start: Grid norm of u - h
        residual_end: Grid norm of L^N u - g
        nodes: Node count per set
        A_nodes: Contracting parameters used
        B_nodes: Expanding parameters used
        verified: Whether L^N u was computed by repeated application
    """
    h: REvenSeries
    g: REvenSeries
    eps: float
    R: float
    N: int
    witness: REvenSeries
    residual_start: float
    residual_end: float
    nodes: int
    A_nodes: List[complex]
    B_nodes: List[complex]
    verified: bool

    @property
    def passed(self) -> bool:
        return self.residual_start < self.eps and self.residual_end < self.eps


def select_nodes(samples: Sequence[complex], count: int,
                 min_separation: float = MIN_SEPARATION) -> List[complex]:
    """Greedy pick in the given order, skipping samples too close to an earlier pick."""
    chosen: List[complex] = []
    for lam in samples:
        if all(abs(lam - other) >= min_separation for other in chosen):
            chosen.append(lam)
            if len(chosen) == count:
                break
    return chosen


def _witness_series(L: ConvolutionOperator, coeffs: np.ndarray, A_nodes, B_nodes,
                    scale_B: np.ndarray, order: int) -> REvenSeries:
    terms = []
    for c, lam in zip(coeffs[:len(A_nodes)], A_nodes):
        terms.append((complex(c), j_series(L.vi, lam, order, Mode.FLOAT)))
    for d, s, mu in zip(coeffs[len(A_nodes):], scale_B, B_nodes):
        terms.append((complex(d * s), j_series(L.vi, mu, order, Mode.FLOAT)))
    return linear_combination(terms)


def _attempt(L, h, g, N, R, count, scan, m, eval_order, threads):
    A_nodes = select_nodes(scan.A_samples, count)
    B_nodes = select_nodes(scan.B_samples, count)
    points = circle_grid(R, m)
    psi_A = symbol_values(L, np.array(A_nodes, dtype=complex))
    psi_B = symbol_values(L, np.array(B_nodes, dtype=complex))
    scale_B = psi_B ** (-N)

    J_A = bessel_columns(L.vi, A_nodes, points, threads)
    J_B = bessel_columns(L.vi, B_nodes, points, threads)
    top = np.hstack([J_A, J_B * scale_B[None, :]])
    bottom = np.hstack([J_A * (psi_A ** N)[None, :], J_B])
    h_values = h.to_float().evaluate_grid(points)
    g_values = g.to_float().evaluate_grid(points)
    solution = solve_least_squares(np.vstack([top, bottom]), np.concatenate([h_values, g_values]))
    c = solution.coefficients
    residual_start = float(np.max(np.abs(top @ c - h_values)))
    residual_end = float(np.max(np.abs(bottom @ c - g_values)))

    order = window_order(L, N, eval_order)
    witness = _witness_series(L, c, A_nodes, B_nodes, scale_B, order)
    verified = True
    try:
        image = apply_power(L, witness, N)
        residual_end = float(np.max(np.abs(image.evaluate_grid(points) - g_values)))
        residual_start = float(np.max(np.abs(witness.evaluate_grid(points) - h_values)))
    except (SeriesOverflowError, OverflowError) as e:
        logger.info("Explicit L^%d evaluation overflowed (%s), keeping eigen-relation residuals", N, e)
        verified = False
    if not (np.isfinite(residual_start) and np.isfinite(residual_end)):
        raise SeriesOverflowError("witness residuals are not finite")
    return TransitivityWitness(h, g, 0.0, R, N, witness.resized(eval_order), residual_start,
                               residual_end, count, A_nodes, B_nodes, verified)


def transitivity_witness(L: ConvolutionOperator, h: REvenSeries, g: REvenSeries, eps: float,
                         R: float, N: int, nodes: int = DEFAULT_NODES, max_nodes: int = MAX_NODES,
                         scan: Optional[GsScan] = None, m: int = WITNESS_GRID,
                         eval_order: int = DEFAULT_TRUNCATION,
                         threads: Optional[int] = None) -> TransitivityWitness:
    """
    Find u with ||u - h||_R < eps and ||L^N u - g||_R < eps.

    The node count per set starts at ``nodes`` and doubles up to ``max_nodes``.

    Args:
        L: Non-scalar convolution operator
        h: Start target
        g: End target
        eps: Tolerance for both residuals
        R: Radius of the disk
        N: Iterate count
        nodes: Initial node count per set
        max_nodes: Escalation cap
        scan: Precomputed symbol scan
        m: Grid size on |z| = R
        eval_order: Order of the reported witness series
        threads: Worker cap

    Returns:
        TransitivityWitness with both residuals below eps

    Raises:
        ScalarOperatorError: for scalar multiples of the identity
        WitnessFailure: when the cap is reached without meeting eps
    """
    if h.is_zero() and g.is_zero():
        zero = REvenSeries.zeros(L.vi, eval_order, Mode.FLOAT)
        return TransitivityWitness(h, g, eps, R, N, zero, 0.0, 0.0, 0, [], [], True)
    if L.is_scalar:
        raise ScalarOperatorError("scalar multiples of the identity admit no transitivity witness")
    if scan is None:
        scan = gs_scan(L, threads=threads)

    levels = []
    count = nodes
    while count <= max_nodes:
        levels.append(count)
        count *= 2

    best: Optional[TransitivityWitness] = None
    for count in tqdm(levels, desc="Witness nodes", disable=None):
        result = _attempt(L, h, g, N, R, count, scan, m, eval_order, threads)
        result.eps = eps
        worst = max(result.residual_start, result.residual_end)
        if best is None or worst < max(best.residual_start, best.residual_end):
            best = result
        logger.debug("Witness with %d nodes: start %.3e, end %.3e",
                     count, result.residual_start, result.residual_end)
        if result.passed:
            return result
    raise WitnessFailure(
        f"no witness below {eps:g} with up to {max_nodes} nodes per set",
        best.residual_start, best.residual_end, best.nodes,
    )
