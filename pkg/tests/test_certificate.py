from fractions import Fraction

import pytest

from algebra.index import VectorIndex
from algebra.scalars import Mode
from algebra.series import REvenSeries
from dynamics.certificate import CertifiedPoint, ChaosCertificate, CertifyConfig, certify
from dynamics.operator import ConvolutionOperator
from dynamics.periodic import PeriodicPoint
from dynamics.symbol import GsScan
from dynamics.witness import TransitivityWitness


def test_identity_is_refused(cos_index):
    certificate = certify(ConvolutionOperator.identity(cos_index, 5))
    assert certificate.is_scalar
    assert "scalar multiple" in certificate.refusal
    assert not certificate.passed
    assert certificate.scan is None and certificate.transitivity is None


@pytest.mark.slow
def test_hyper_bessel_certificate(cos_index):
    L = ConvolutionOperator.hyper_bessel(cos_index)
    certificate = certify(L, CertifyConfig(max_nodes=64))
    assert certificate.passed
    assert certificate.scan.A_samples and certificate.scan.B_samples
    lams = [p.point.lam for p in certificate.periodic_points]
    assert any(abs(lam - 1j) < 1e-10 for lam in lams)
    assert any(abs(lam - 1) < 1e-10 for lam in lams)
    for p in certificate.periodic_points:
        assert p.point.residual <= 1e-12
        assert p.orbit_residual <= 1e-8
    assert certificate.failure is None


@pytest.mark.slow
def test_translation_certificate():
    vi = VectorIndex(2, (Fraction(1, 2),))
    certificate = certify(ConvolutionOperator.translation(vi, 1),
                          CertifyConfig(alphas=(Fraction(1, 2),), eps=1e-2, N=8, max_nodes=64))
    assert certificate.passed
    assert certificate.transitivity.residual_end < 1e-2


def test_failed_witness_is_recorded(cos_index):
    L = ConvolutionOperator.hyper_bessel(cos_index)
    config = CertifyConfig(alphas=(Fraction(0),), eps=1e-300, N=4, nodes=4, max_nodes=4)
    certificate = certify(L, config)
    assert not certificate.passed
    assert certificate.transitivity is None
    assert certificate.failure.nodes == 4
    assert len(certificate.periodic_points) == 1


def _passing_witness(vi):
    h = REvenSeries.constant(vi, 1, 0, Mode.FLOAT)
    g = REvenSeries.basis(vi, 1, mode=Mode.FLOAT)
    return TransitivityWitness(h, g, 1e-3, 1.0, 4, h, 0.0, 0.0, 4, [0.5], [2.0], True)


def test_certificate_needs_periodic_points(cos_index):
    L = ConvolutionOperator.hyper_bessel(cos_index)
    scan = GsScan([0.5], [2.0], False, 4.0)
    certificate = ChaosCertificate(L, scan=scan, transitivity=_passing_witness(cos_index))
    assert not certificate.passed
    certificate.periodic_points.append(CertifiedPoint(PeriodicPoint(1j, 1, 0.0, Fraction(0)), 0.0))
    assert certificate.passed
