from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings

from algebra.errors import IndexMismatchError
from algebra.operator import apply_br
from algebra.scalars import Mode
from algebra.series import REvenSeries
from harmonic.convolution import convolve, moment_convolution
from harmonic.functional import CertificateSource, MomentFunctional
from harmonic.translation import addition_power, translate_delsarte
from special.bessel import j_series

from strategies import exact_functionals, exact_series, small_rationals, vector_indices


def test_delta_is_the_unit(any_index):
    u = REvenSeries(any_index, (1, Fraction(-2, 3), 4, Fraction(1, 7)), Mode.EXACT)
    assert convolve(MomentFunctional.delta(any_index, 8), u) == u


def test_point_evaluation_convolution_is_translation(cubic_index):
    u = j_series(cubic_index, Fraction(1, 2), 10)
    a = Fraction(-3, 4)
    assert convolve(MomentFunctional.delta_at(cubic_index, a, 10), u) == translate_delsarte(u, a)


def test_valuation_shortens_result(cos_index):
    u = REvenSeries(cos_index, (1, 2, 3, 4), Mode.EXACT)
    BT = MomentFunctional.delta(cos_index, 6).apply_br()
    result = convolve(BT, u)
    assert result.N == 2
    assert result == apply_br(u)


def test_valuation_past_the_series(cos_index):
    T = MomentFunctional(cos_index, (0, 0, 0, 1), Mode.EXACT)
    result = convolve(T, REvenSeries(cos_index, (1, 2), Mode.EXACT))
    assert result.N == 0 and result.is_zero()


def test_float_convolution(cos_index):
    u = j_series(cos_index, 1, 30, Mode.FLOAT)
    result = convolve(MomentFunctional.delta_at(cos_index, 0.5), u)
    assert result.mode is Mode.FLOAT
    # (delta_a * cos)(w) = cos(a) cos(w) for the cosine index
    assert result.evaluate(0.3) == pytest.approx(0.8775825618903728 * 0.955336489125606, abs=1e-13)


def test_point_evaluations_compose_through_addition(cubic_index):
    a, b = Fraction(1, 2), Fraction(-2, 3)
    product = moment_convolution(MomentFunctional.delta_at(cubic_index, a, 6),
                                 MomentFunctional.delta_at(cubic_index, b, 6))
    assert product.moments == tuple(addition_power(cubic_index, n, a, b) for n in range(7))
    assert product.certificate.source is CertificateSource.HEURISTIC
    assert product.certificate.a == pytest.approx(7 / 6)
    assert product.certificate.holds(product.moments, 3, Mode.EXACT)


def test_uncertified_operands_give_no_certificate(cos_index):
    T = MomentFunctional(cos_index, (1, 2, 3), Mode.EXACT)
    assert moment_convolution(T, MomentFunctional.delta(cos_index, 2)).certificate is None


def test_index_mismatch(cos_index, sinc_index):
    with pytest.raises(IndexMismatchError):
        moment_convolution(MomentFunctional.delta(cos_index, 2), MomentFunctional.delta(sinc_index, 2))
    with pytest.raises(IndexMismatchError):
        convolve(MomentFunctional.delta(cos_index, 2), REvenSeries.constant(sinc_index))


@pytest.mark.slow
@settings(max_examples=100, deadline=None,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example])
@given(data=vector_indices().flatmap(
    lambda vi: exact_functionals(vi, 16).flatmap(
        lambda T: exact_functionals(vi, 16).flatmap(
            lambda S: exact_functionals(vi, 16).map(lambda U: (T, S, U))))))
def test_algebra_properties(data):
    T, S, U = data
    delta = MomentFunctional.delta(T.vi, 16)
    assert moment_convolution(T, S) == moment_convolution(S, T)
    assert moment_convolution(moment_convolution(T, S), U) == moment_convolution(T, moment_convolution(S, U))
    assert moment_convolution(delta, S) == S
    lhs = moment_convolution(T, S).apply_br()
    assert lhs == moment_convolution(T.apply_br(), S)
    assert lhs == moment_convolution(T, S.apply_br())


@settings(max_examples=25, deadline=None)
@given(data=vector_indices(max_r=3).flatmap(
    lambda vi: exact_functionals(vi, 8).flatmap(
        lambda T: exact_series(vi, 8).map(lambda u: (T, u)))),
       z=small_rationals)
def test_convolution_commutes_with_translation_and_br(data, z):
    T, u = data
    assert convolve(T, translate_delsarte(u, z)) == translate_delsarte(convolve(T, u), z).resized(
        convolve(T, u).N)
    assert convolve(T, apply_br(u)) == apply_br(convolve(T, u)).resized(convolve(T, apply_br(u)).N)
