"""
JSON forms of series, functionals and chaos certificates.

Exact coefficients are written as rational strings, float coefficients as numbers.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from algebra.index import VectorIndex, make_index
from algebra.scalars import Mode, format_pair, parse_complex_pair, to_complex
from algebra.series import REvenSeries
from dynamics.certificate import ChaosCertificate
from dynamics.operator import ConvolutionOperator
from harmonic.functional import CertificateSource, ExpTypeCertificate, MomentFunctional

Number = Union[str, float, int]


class CertificateModel(BaseModel):
    """Growth certificate (C, a)."""
    C: float
    a: float
    source: str = CertificateSource.DECLARED.value


class SeriesModel(BaseModel):
    """Series in the normalized basis."""
    r: int
    gamma: List[List[str]]
    basis: str = "normalized"
    coeffs: List[List[Number]]
    envelope: Optional[List[float]] = None


class FunctionalModel(BaseModel):
    """Moment functional."""
    r: int
    gamma: List[List[str]]
    moments: List[List[Number]]
    certificate: Optional[CertificateModel] = None


class PeriodicPointModel(BaseModel):
    """lambda as [re, im] with its period and residuals."""
    lam: List[float] = Field(alias="lambda")
    period: int
    alpha: str
    residual: float
    orbit_residual: float

    model_config = {"populate_by_name": True}


class WitnessModel(BaseModel):
    """Transitivity witness."""
    h: SeriesModel
    g: SeriesModel
    eps: float
    R: float
    N: int
    witness: SeriesModel
    residual_start: float
    residual_end: float
    nodes: int
    verified: bool


class ChaosCertificateModel(BaseModel):
    """Chaos certificate or refusal record."""
    operator: SeriesModel
    is_scalar: bool
    refusal: Optional[str] = None
    passed: bool
    A_samples: List[List[float]] = Field(default_factory=list)
    B_samples: List[List[float]] = Field(default_factory=list)
    periodic_points: List[PeriodicPointModel] = Field(default_factory=list)
    transitivity: Optional[WitnessModel] = None
    failure: Optional[Dict[str, Any]] = None


def gamma_pairs(vi: VectorIndex) -> List[List[str]]:
    return [[str(g.numerator), str(g.denominator)] for g in vi.gamma]


def index_from_pairs(r: int, gamma: List) -> VectorIndex:
    parts = []
    for g in gamma:
        if isinstance(g, (list, tuple)):
            parts.append(Fraction(int(g[0]), int(g[1])))
        else:
            parts.append(str(g))
    return make_index(r, parts)


def _infer_mode(pairs: List[List[Number]]) -> Mode:
    if all(isinstance(x, str) for pair in pairs for x in pair):
        return Mode.EXACT
    return Mode.FLOAT


def series_to_model(u: REvenSeries) -> SeriesModel:
    return SeriesModel(
        r=u.vi.r,
        gamma=gamma_pairs(u.vi),
        coeffs=[format_pair(c, u.mode) for c in u.coeffs],
        envelope=list(u.envelope) if u.envelope is not None else None,
    )


def series_from_model(data: Union[SeriesModel, Dict[str, Any]], mode: Optional[Mode] = None) -> REvenSeries:
    """Parse a series; string coefficients select exact mode unless ``mode`` is given."""
    model = data if isinstance(data, SeriesModel) else SeriesModel.model_validate(data)
    if model.basis != "normalized":
        raise ValueError(f"unsupported basis {model.basis!r}, expected 'normalized'")
    vi = index_from_pairs(model.r, model.gamma)
    mode = mode or _infer_mode(model.coeffs)
    coeffs = tuple(parse_complex_pair(pair, mode) for pair in model.coeffs)
    envelope = tuple(model.envelope) if model.envelope else None
    return REvenSeries(vi, coeffs, mode, envelope)


def functional_to_model(T: MomentFunctional) -> FunctionalModel:
    certificate = None
    if T.certificate is not None:
        certificate = CertificateModel(C=T.certificate.C, a=T.certificate.a,
                                       source=T.certificate.source.value)
    return FunctionalModel(
        r=T.vi.r,
        gamma=gamma_pairs(T.vi),
        moments=[format_pair(t, T.mode) for t in T.moments],
        certificate=certificate,
    )


def functional_from_model(data: Union[FunctionalModel, Dict[str, Any]],
                          mode: Optional[Mode] = None) -> MomentFunctional:
    model = data if isinstance(data, FunctionalModel) else FunctionalModel.model_validate(data)
    vi = index_from_pairs(model.r, model.gamma)
    mode = mode or _infer_mode(model.moments)
    moments = tuple(parse_complex_pair(pair, mode) for pair in model.moments)
    certificate = None
    if model.certificate is not None:
        certificate = ExpTypeCertificate(model.certificate.C, model.certificate.a,
                                         CertificateSource(model.certificate.source))
    return MomentFunctional(vi, moments, mode, certificate)


def _pair(value) -> List[float]:
    value = to_complex(value)
    return [value.real, value.imag]


def operator_to_model(L: ConvolutionOperator) -> SeriesModel:
    return series_to_model(L.symbol_series())


def certificate_to_model(cert: ChaosCertificate) -> ChaosCertificateModel:
    model = ChaosCertificateModel(
        operator=operator_to_model(cert.operator),
        is_scalar=cert.is_scalar,
        refusal=cert.refusal,
        passed=cert.passed,
    )
    if cert.scan is not None:
        model.A_samples = [_pair(lam) for lam in cert.scan.A_samples]
        model.B_samples = [_pair(lam) for lam in cert.scan.B_samples]
    model.periodic_points = [
        PeriodicPointModel(
            lam=_pair(p.point.lam),
            period=p.point.period,
            alpha=str(p.point.alpha),
            residual=p.point.residual,
            orbit_residual=p.orbit_residual,
        )
        for p in cert.periodic_points
    ]
    if cert.transitivity is not None:
        w = cert.transitivity
        model.transitivity = WitnessModel(
            h=series_to_model(w.h),
            g=series_to_model(w.g),
            eps=w.eps,
            R=w.R,
            N=w.N,
            witness=series_to_model(w.witness),
            residual_start=w.residual_start,
            residual_end=w.residual_end,
            nodes=w.nodes,
            verified=w.verified,
        )
    if cert.failure is not None:
        model.failure = {
            "message": str(cert.failure),
            "residual_start": cert.failure.residual_start,
            "residual_end": cert.failure.residual_end,
            "nodes": cert.failure.nodes,
        }
    return model
