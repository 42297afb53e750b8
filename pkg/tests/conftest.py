"""
Shared fixtures.
"""
from fractions import Fraction

import pytest

from algebra.index import VectorIndex


@pytest.fixture
def cos_index():
    """r = 2, gamma = -1/2: j_gamma is the cosine."""
    return VectorIndex(2, (Fraction(-1, 2),))


@pytest.fixture
def sinc_index():
    """r = 2, gamma = 1/2: j_gamma(z) = sin(z) / z."""
    return VectorIndex(2, (Fraction(1, 2),))


@pytest.fixture
def cubic_index():
    """r = 3 with rational gamma away from the derivative case."""
    return VectorIndex(3, (Fraction(1, 3), Fraction(1, 2)))


@pytest.fixture(params=[
    (2, ("-1/2",)),
    (2, ("1/2",)),
    (3, ("-2/3", "-1/3")),
    (3, ("1/3", "1/2")),
    (4, ("0", "1/4", "2")),
], ids=lambda p: f"r{p[0]}")
def any_index(request):
    r, gamma = request.param
    return VectorIndex(r, tuple(Fraction(g) for g in gamma))
