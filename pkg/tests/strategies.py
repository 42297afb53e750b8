"""
Hypothesis strategies for exact series, moments and vector indices.
"""
from fractions import Fraction

from hypothesis import strategies as st

from algebra.index import VectorIndex
from algebra.scalars import Mode, make_exact
from algebra.series import REvenSeries
from harmonic.functional import MomentFunctional

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
small_rationals = st.fractions(min_value=-2, max_value=2, max_denominator=6)
gaussians = st.builds(make_exact, rationals, rationals)


@st.composite
def vector_indices(draw, max_r: int = 4):
    r = draw(st.integers(min_value=2, max_value=max_r))
    gamma = tuple(
        Fraction(k - r, r) + draw(st.fractions(min_value=0, max_value=3, max_denominator=6))
        for k in range(1, r)
    )
    return VectorIndex(r, gamma)


@st.composite
def exact_series(draw, vi, max_order: int = 12):
    N = draw(st.integers(min_value=0, max_value=max_order))
    coeffs = draw(st.lists(gaussians, min_size=N + 1, max_size=N + 1))
    return REvenSeries(vi, tuple(coeffs), Mode.EXACT)


@st.composite
def exact_functionals(draw, vi, order: int = 8):
    moments = draw(st.lists(gaussians, min_size=order + 1, max_size=order + 1))
    return MomentFunctional(vi, tuple(moments), Mode.EXACT)
