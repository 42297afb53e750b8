from fractions import Fraction

import pytest
from hypothesis import given, settings

from algebra.errors import IncompletePairingError, IndexMismatchError
from algebra.index import VectorIndex
from algebra.operator import apply_br
from algebra.scalars import Mode
from algebra.series import REvenSeries
from harmonic.fourier import pair, pairing_bound_check, pairing_report
from harmonic.functional import (
    CertificateSource,
    ExpTypeCertificate,
    MomentFunctional,
    fit_envelope,
    functional_from_series,
)
from special.bessel import j_series

from strategies import small_rationals, vector_indices


def test_delta_pairs_to_value_at_origin(any_index):
    u = REvenSeries(any_index, (Fraction(3, 2), 5, -7), Mode.EXACT)
    assert pair(MomentFunctional.delta(any_index, 4), u) == Fraction(3, 2)


def test_delta_at_moments(cubic_index):
    T = MomentFunctional.delta_at(cubic_index, Fraction(1, 2), 3)
    assert T.moments == (1, Fraction(1, 8), Fraction(1, 64), Fraction(1, 512))
    assert T.certificate.holds(T.moments, 3, Mode.EXACT)


@settings(max_examples=30, deadline=None)
@given(a=small_rationals, b=small_rationals)
def test_delta_at_is_point_evaluation(a, b):
    cos_index = VectorIndex(2, (Fraction(-1, 2),))
    u = REvenSeries(cos_index, (1, b, Fraction(1, 3), -2), Mode.EXACT)
    assert pair(MomentFunctional.delta_at(cos_index, a, 6), u) == u.evaluate_exact(a)


def test_certificate_validation(cos_index):
    with pytest.raises(ValueError):
        ExpTypeCertificate(0.0, 1.0)
    with pytest.raises(ValueError):
        ExpTypeCertificate(1.0, -2.0)
    with pytest.raises(ValueError):
        MomentFunctional(cos_index, (1, 10), Mode.EXACT, ExpTypeCertificate(1.0, 1.0))


def test_certificate_holds_in_float_mode():
    certificate = ExpTypeCertificate(2.0, 1.5)
    assert certificate.holds([2.0, 2.0 * 1.5 ** 2, 0.0], 2, Mode.FLOAT)
    assert not certificate.holds([2.0, 10.0], 2, Mode.FLOAT)
    assert certificate.bound(2, 2) == pytest.approx(2.0 * 1.5 ** 4)


def test_fit_envelope():
    fit = fit_envelope([1, 4, 16, 64], 2)
    assert fit.a == pytest.approx(2.0)
    assert fit.C == pytest.approx(1.0)
    assert fit.source is CertificateSource.FITTED
    assert fit.holds([1, 4, 16, 64], 2, Mode.EXACT)


def test_fit_envelope_degenerate_cases():
    zero = fit_envelope([0, 0, 0], 3)
    assert zero.zero_series and (zero.C, zero.a) == (1.0, 1.0)
    constant = fit_envelope([5, 0, 0], 3)
    assert constant.a == 1.0
    assert constant.C == pytest.approx(5.0)
    assert not constant.zero_series


@settings(max_examples=40, deadline=None)
@given(vi=vector_indices(), a=small_rationals)
def test_transposed_br_on_delta_at(vi, a):
    T = MomentFunctional.delta_at(vi, a, 8)
    u = j_series(vi, Fraction(1, 2), 8)
    assert pair(T.apply_br(), u) == pair(T, apply_br(u))


def test_transposed_br(any_index):
    T = MomentFunctional(any_index, tuple(Fraction(n + 1, n + 2) for n in range(9)), Mode.EXACT)
    u = REvenSeries(any_index, tuple(Fraction((-1) ** n, n + 1) for n in range(9)), Mode.EXACT)
    BT = T.apply_br()
    assert BT.moments[0] == 0
    assert BT.N == T.N
    assert pair(BT, u) == pair(T, apply_br(u))


def test_transposed_br_refits_certificate(cos_index):
    T = MomentFunctional.delta_at(cos_index, 2, 6)
    BT = T.apply_br()
    assert BT.certificate.source is CertificateSource.HEURISTIC
    assert BT.certificate.holds(BT.moments, 2, Mode.EXACT)


def test_functional_from_series_keeps_envelope(cos_index):
    T = functional_from_series(j_series(cos_index, 2, 12))
    assert T.certificate.a == pytest.approx(2.0)
    assert T.moments == j_series(cos_index, 2, 12).coeffs


def test_functional_from_series_fits_without_envelope(cos_index):
    T = functional_from_series(REvenSeries(cos_index, (1, 9, 81), Mode.EXACT))
    assert T.certificate.a == pytest.approx(3.0)


def test_incomplete_pairing(cos_index):
    T = MomentFunctional(cos_index, (1, 1), Mode.EXACT)
    u = REvenSeries(cos_index, (1, 0, 0, 2), Mode.EXACT)
    with pytest.raises(IncompletePairingError):
        pair(T, u)
    # trailing zeros past the stored moments are harmless
    assert pair(T, REvenSeries(cos_index, (1, 2, 0, 0), Mode.EXACT)) == 2


def test_certified_pairing_bounds_missing_moments(cos_index):
    T = MomentFunctional.delta_at(cos_index, 1, 1)
    u = REvenSeries(cos_index, (1, 0, 0, 2), Mode.EXACT)
    report = pairing_report(T, u)
    assert report.value == 1
    assert report.missing_bound == pytest.approx(2 / 720 * T.certificate.C * T.certificate.a ** 6)
    assert report.absolutely_convergent


def test_pairing_index_mismatch(cos_index, sinc_index):
    with pytest.raises(IndexMismatchError):
        pair(MomentFunctional.delta(cos_index, 2), REvenSeries.constant(sinc_index))


def test_pairing_continuity_estimate(any_index):
    T = MomentFunctional.delta_at(any_index, Fraction(3, 2), 20)
    u = j_series(any_index, 1, 20)
    lhs, rhs, passed = pairing_bound_check(T, u)
    assert passed and lhs <= rhs
    with pytest.raises(IncompletePairingError):
        pairing_bound_check(MomentFunctional(any_index, (1,), Mode.EXACT), u)
