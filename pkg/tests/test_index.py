import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import poch

from algebra.errors import InvalidIndexError
from algebra.index import (
    VectorIndex,
    alpha,
    alpha_direct,
    alpha_ratio,
    alpha_table,
    binomial_row,
    derive_br_coefficients,
    float_ratios,
    generalized_binomial,
    make_index,
)

from strategies import vector_indices


def test_rejects_bad_indices():
    with pytest.raises(InvalidIndexError):
        VectorIndex(1, ())
    with pytest.raises(InvalidIndexError):
        VectorIndex(3, (Fraction(0),))
    with pytest.raises(InvalidIndexError):
        VectorIndex(2, (Fraction(-3, 4),))
    with pytest.raises(InvalidIndexError):
        make_index(2, ["x"])


def test_boundary_index_is_accepted():
    vi = VectorIndex.derivative(4)
    assert vi.gamma == (Fraction(-3, 4), Fraction(-1, 2), Fraction(-1, 4))


def test_alpha_examples():
    assert alpha(VectorIndex(2, (Fraction(1, 2),)), 1) == 6
    assert alpha(VectorIndex.derivative(3), 2) == 720
    assert alpha_ratio(VectorIndex(2, (Fraction(1, 2),)), 2) == 20
    assert alpha_ratio(VectorIndex(2, (Fraction(-1, 2),)), 1) == 2
    assert alpha(VectorIndex(2, (Fraction(-1, 2),)), 0) == 1


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_derivative_index_reduces_to_factorials(r):
    vi = VectorIndex.derivative(r)
    table = alpha_table(vi, 30)
    assert table.values == tuple(math.factorial(r * n) for n in range(31))
    assert all(a == 0 for a in derive_br_coefficients(vi).a)


@given(vector_indices(), st.integers(min_value=0, max_value=25))
@settings(max_examples=50, deadline=None)
def test_alpha_invariants(vi, n):
    assert alpha(vi, n) == alpha_direct(vi, n)
    assert alpha(vi, n) >= math.factorial(vi.r * n)
    if n >= 1:
        assert alpha(vi, n) / alpha(vi, n - 1) == alpha_ratio(vi, n)


def test_alpha_table_is_sound(any_index):
    assert alpha_table(any_index, 64).violations() == []


def test_alpha_ratio_cache_is_bounded(cubic_index):
    assert alpha_ratio.cache_info().maxsize == 4096
    for n in range(1, 5000):
        alpha_ratio(cubic_index, n)
    assert alpha_ratio.cache_info().currsize <= 4096
    assert alpha_ratio(cubic_index, 1) == 27 * 1 * math.prod(g + 1 for g in cubic_index.gamma)


def test_float_ratios_match(any_index):
    ratios = float_ratios(any_index, 10)
    assert ratios[0] == 1.0
    assert ratios[5] == float(alpha_ratio(any_index, 5))


def test_br_coefficients(any_index):
    br = derive_br_coefficients(any_index)
    r = any_index.r
    assert len(br.a) == r - 1
    assert all(br.identity_holds(m) for m in range(3 * r))
    assert br.M >= 1


def test_br_coefficients_closed_form_orientation(cubic_index):
    br = derive_br_coefficients(cubic_index)
    assert all(br.transposed_agrees)
    assert not all(br.literal_agrees)


def test_br_coefficient_for_bessel():
    # r = 2: B = d^2 + (2 gamma + 1) / z d
    br = derive_br_coefficients(VectorIndex(2, (Fraction(1, 2),)))
    assert br.a == (Fraction(2),)


def test_generalized_binomial():
    vi = VectorIndex.derivative(2)
    assert generalized_binomial(vi, 2, 1) == 6
    assert binomial_row(vi, 3) == (1, 15, 15, 1)
    with pytest.raises(ValueError):
        generalized_binomial(vi, 2, 3)


@given(vector_indices(), st.integers(min_value=0, max_value=20), st.data())
@settings(max_examples=50, deadline=None)
def test_generalized_binomial_symmetry(vi, n, data):
    k = data.draw(st.integers(min_value=0, max_value=n))
    assert generalized_binomial(vi, n, k) == generalized_binomial(vi, n, n - k)
    assert generalized_binomial(vi, n, 0) == 1


@pytest.mark.parametrize("nu", [Fraction(1, 3), Fraction(2), Fraction(5, 7)])
def test_br_coefficients_for_cubic_family(nu):
    br = derive_br_coefficients(VectorIndex(3, (Fraction(-2, 3), nu - Fraction(1, 3))))
    assert br.a == (3 * nu, -3 * nu)


@pytest.mark.parametrize("n", [0, 1, 5, 12])
def test_alpha_matches_pochhammer_form(any_index, n):
    r = any_index.r
    expected = r ** (r * n) * math.factorial(n)
    for g in any_index.gamma:
        expected *= poch(float(g) + 1, n)
    assert float(alpha(any_index, n)) == pytest.approx(expected, rel=1e-12)
