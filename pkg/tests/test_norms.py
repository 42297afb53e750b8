import math

import numpy as np
import pytest

from algebra.index import alpha
from algebra.norms import br_power_norm_check, norm_grid, norm_majorant
from algebra.scalars import Mode
from algebra.series import REvenSeries
from special.bessel import j_series


def test_constant_norms(cos_index):
    u = REvenSeries.constant(cos_index, 1, 0, Mode.FLOAT)
    assert norm_grid(u, 2.0) == pytest.approx(1.0)
    assert norm_majorant(u, 2.0) == pytest.approx(1.0)


def test_basis_norms(cubic_index):
    u = REvenSeries.basis(cubic_index, 1, mode=Mode.FLOAT)
    expected = float(1 / alpha(cubic_index, 1))
    assert norm_grid(u, 1.0) == pytest.approx(expected)
    assert norm_majorant(u, 1.0) == pytest.approx(expected)


def test_cosine_grid_norm(cos_index):
    u = j_series(cos_index, 1, 40, Mode.FLOAT)
    assert norm_grid(u, 1.0, 256) == pytest.approx(math.cosh(1.0), rel=1e-12)
    assert norm_grid(u, 1.0) <= norm_majorant(u, 1.0) * (1 + 1e-12)


def test_nested_grids_are_monotone(sinc_index):
    u = REvenSeries(sinc_index, (1, 2j, -3, 0.5 + 1j), Mode.FLOAT)
    values = [norm_grid(u, 1.5, m) for m in (16, 32, 64, 128, 256)]
    assert values == sorted(values)


def test_grid_norm_is_monotone_for_any_grid_size(cos_index, sinc_index):
    # 1 - z^2 peaks at z = +-i, which the 4-point grid already contains
    u = REvenSeries(cos_index, (1.0, -2.0), Mode.FLOAT)
    values = [norm_grid(u, 1.0, m) for m in range(4, 9)]
    assert values == sorted(values)
    assert values == pytest.approx([2.0] * 5, rel=1e-15)
    v = REvenSeries(sinc_index, (1, 2j, -3, 0.5 + 1j), Mode.FLOAT)
    values = [norm_grid(v, 1.5, m) for m in range(1, 300, 7)]
    assert values == sorted(values)
    assert values[-1] <= norm_majorant(v, 1.5) * (1 + 1e-12)


def test_grid_norm_uses_dyadic_grid(cubic_index):
    u = REvenSeries(cubic_index, (0.5, 1 - 1j, 0.25j), Mode.FLOAT)
    assert norm_grid(u, 1.2, 100) == norm_grid(u, 1.2, 64)
    assert norm_grid(u, 1.2, 127) == norm_grid(u, 1.2, 64)


def test_radius_must_be_positive(cos_index):
    u = REvenSeries.constant(cos_index, 1, 0, Mode.FLOAT)
    with pytest.raises(ValueError):
        norm_grid(u, 0.0)
    with pytest.raises(ValueError):
        norm_majorant(u, -1.0)


def test_power_estimate_examples(cos_index, sinc_index):
    assert br_power_norm_check(REvenSeries.constant(cos_index, 1), 1.0, 1).passed
    assert br_power_norm_check(REvenSeries.basis(cos_index, 1), 1.0, 1).passed
    assert br_power_norm_check(j_series(sinc_index, 1, 30, Mode.FLOAT), 1.0, 3).passed


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("n", [1, 3, 5])
def test_power_estimate_random(any_index, R, n):
    rng = np.random.default_rng(7)
    coeffs = tuple(complex(a, b) for a, b in rng.uniform(-1, 1, size=(8, 2)))
    report = br_power_norm_check(REvenSeries(any_index, coeffs, Mode.FLOAT), R, n)
    assert report.passed
    assert report.lhs <= report.rhs
