"""
Chaos certificates for convolution operators.

A certificate bundles the three ingredients of the eigenvector criterion at
truncated scale: contracting and expanding eigen-symbol samples, periodic
points, and a transitivity witness. Scalar multiples of the identity are
refused.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from algebra.errors import SeriesOverflowError, WitnessFailure
from algebra.scalars import Mode
from algebra.series import REvenSeries

from .operator import ConvolutionOperator
from .periodic import PeriodicPoint, periodic_point_find, verify_periodic
from .symbol import GsScan, gs_scan
from .witness import DEFAULT_NODES, MAX_NODES, TransitivityWitness, transitivity_witness

logger = logging.getLogger(__name__)

PERIODIC_TOL = 1e-8
DEFAULT_ALPHAS = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3))


@dataclass
class CertifyConfig:
    """
    Parameters of a certification run.

    Args:
        alphas: Rationals alpha for Psi(lam) = e^{i pi alpha}
        h: Start target (constant 1 by default)
        g: End target (e_1 by default)
        eps: Witness tolerance
        R: Witness radius
        N: Witness iterate count
        nodes: Initial witness node count
        max_nodes: Witness node cap
        periodic_tol: Largest accepted periodic residual
        threads: Worker cap
    """
    alphas: Sequence[Fraction] = DEFAULT_ALPHAS
    h: Optional[REvenSeries] = None
    g: Optional[REvenSeries] = None
    eps: float = 1e-3
    R: float = 1.0
    N: int = 12
    nodes: int = DEFAULT_NODES
    max_nodes: int = MAX_NODES
    periodic_tol: float = PERIODIC_TOL
    threads: Optional[int] = None


@dataclass
class CertifiedPoint:
    """A periodic point together with its orbit residual."""
    point: PeriodicPoint
    orbit_residual: float


@dataclass
class ChaosCertificate:
    """
    Numerical evidence that a convolution operator is chaotic.

    Args:
        operator: The certified operator
        is_scalar: Set for refusals
        refusal: Reason for a refusal
        scan: Eigen-symbol samples
        periodic_points: Periodic points with residuals within tolerance
        transitivity: Transitivity witness, or None when it failed
        failure: Best residuals of a failed witness
    """
    operator: ConvolutionOperator
    is_scalar: bool = False
    refusal: Optional[str] = None
    scan: Optional[GsScan] = None
    periodic_points: List[CertifiedPoint] = field(default_factory=list)
    transitivity: Optional[TransitivityWitness] = None
    failure: Optional[WitnessFailure] = None

    @property
    def passed(self) -> bool:
        """Both scan samples, at least one verified periodic point and a passing witness."""
        return (not self.is_scalar and self.transitivity is not None and self.transitivity.passed
                and bool(self.scan and self.scan.A_samples and self.scan.B_samples)
                and bool(self.periodic_points))


def certify(L: ConvolutionOperator, config: Optional[CertifyConfig] = None) -> ChaosCertificate:
    """
    Scan the eigen-symbol, collect periodic points and build a transitivity witness.

    Args:
        L: Convolution operator
        config: Run parameters

    Returns:
        ChaosCertificate; a refusal record when L is a scalar multiple of the identity
    """
    config = config or CertifyConfig()
    if L.is_scalar:
        logger.info("Refusing to certify a scalar multiple of the identity")
        return ChaosCertificate(L, is_scalar=True,
                                refusal="operator is a scalar multiple of the identity")

    scan = gs_scan(L, threads=config.threads)
    points: List[CertifiedPoint] = []
    for alpha in config.alphas:
        for point in periodic_point_find(L, alpha, threads=config.threads):
            try:
                residual = verify_periodic(L, point.lam, point.period)
            except SeriesOverflowError:
                logger.debug("Orbit of %s overflows, dropping it", point.lam)
                continue
            if point.residual <= 1e-12 and residual <= config.periodic_tol:
                points.append(CertifiedPoint(point, residual))
            else:
                logger.debug("Dropping periodic point %s: Newton %.2e, orbit %.2e",
                             point.lam, point.residual, residual)

    h = config.h if config.h is not None else REvenSeries.constant(L.vi, 1, 0, Mode.FLOAT)
    g = config.g if config.g is not None else REvenSeries.basis(L.vi, 1, mode=Mode.FLOAT)
    certificate = ChaosCertificate(L, scan=scan, periodic_points=points)
    try:
        certificate.transitivity = transitivity_witness(
            L, h, g, config.eps, config.R, config.N, nodes=config.nodes,
            max_nodes=config.max_nodes, scan=scan, threads=config.threads,
        )
    except WitnessFailure as e:
        logger.warning("Transitivity witness failed: %s", e)
        certificate.failure = e
    return certificate
