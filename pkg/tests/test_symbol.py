import cmath
import io
import math
from fractions import Fraction

import numpy as np
import pytest

from algebra.errors import GridExhaustedError
from dynamics.operator import ConvolutionOperator
from dynamics.symbol import (
    canonical,
    gs_scan,
    polar_sector_grid,
    symbol_derivative,
    symbol_eigenvalue,
    symbol_values,
    write_symbol_csv,
)


def test_hyper_bessel_symbol(any_index):
    L = ConvolutionOperator.hyper_bessel(any_index)
    for lam in (0.5, 1.0 + 0.5j, -2j):
        assert symbol_eigenvalue(L, lam) == pytest.approx(-lam ** any_index.r, rel=1e-14)


def test_translation_symbol_is_bessel(cos_index, sinc_index):
    for lam in (0.3, 1.7, 2j):
        psi = symbol_eigenvalue(ConvolutionOperator.translation(cos_index, 1), lam)
        assert psi == pytest.approx(cmath.cos(lam), abs=1e-13)
        psi = symbol_eigenvalue(ConvolutionOperator.translation(sinc_index, 1), lam)
        assert psi == pytest.approx(cmath.sin(lam) / lam, abs=1e-13)


def test_symbol_is_invariant_under_roots_of_unity(cubic_index):
    L = ConvolutionOperator.from_symbol(cubic_index, [1, Fraction(1, 2), 3])
    lam = 0.7 + 0.2j
    w = cubic_index.root_of_unity
    assert symbol_eigenvalue(L, w * lam) == pytest.approx(symbol_eigenvalue(L, lam), rel=1e-13)


def test_vectorized_values(cos_index):
    L = ConvolutionOperator.hyper_bessel(cos_index)
    lams = np.array([[0.5, 1.0], [2.0, 1j]])
    np.testing.assert_allclose(symbol_values(L, lams), -lams ** 2)


def test_symbol_derivative(cubic_index):
    L = ConvolutionOperator.from_symbol(cubic_index, [1, Fraction(-3, 2), Fraction(7, 3), 2])
    lam, h = 0.9 + 0.4j, 1e-6
    numeric = (symbol_eigenvalue(L, lam + h) - symbol_eigenvalue(L, lam - h)) / (2 * h)
    assert symbol_derivative(L, lam) == pytest.approx(numeric, rel=1e-7)
    assert symbol_derivative(L, 0) == 0


def test_canonical_sector():
    assert canonical(-1.0, 2) == pytest.approx(1.0)
    assert canonical(1j, 2) == pytest.approx(1j)
    lam = canonical(cmath.rect(2.0, 5.0), 3)
    assert 0 <= cmath.phase(lam) < 2 * math.pi / 3
    assert abs(lam) == pytest.approx(2.0)
    assert canonical(0, 4) == 0


def test_scan_of_hyper_bessel(cos_index):
    scan = gs_scan(ConvolutionOperator.hyper_bessel(cos_index))
    assert not scan.is_scalar
    assert 0.5 in scan.A_samples
    assert 2.0 in scan.B_samples
    assert all(abs(lam) < 1 for lam in scan.A_samples)
    assert all(abs(lam) > 1 for lam in scan.B_samples)
    assert scan.radius == 4.0
    assert len(scan.points) == 32 * 64


def test_unit_circle_samples_are_boundary(cos_index):
    # the ring |lam| = 1 of the default grid has |Psi| = 1 up to rounding
    scan = gs_scan(ConvolutionOperator.hyper_bessel(cos_index))
    assert len(scan.boundary_samples) == 64
    assert all(abs(abs(lam) - 1) < 1e-12 for lam in scan.boundary_samples)
    A, B = set(scan.A_samples), set(scan.B_samples)
    assert not A & set(scan.boundary_samples) and not B & set(scan.boundary_samples)
    assert len(A) + len(B) + 64 == len(scan.points)


def test_boundary_tolerance_is_configurable(cos_index):
    L = ConvolutionOperator.hyper_bessel(cos_index)
    scan = gs_scan(L, tol=0.3)
    assert all(abs(abs(lam) ** 2 - 1) <= 0.3 for lam in scan.boundary_samples)
    assert all(abs(lam) ** 2 < 0.7 for lam in scan.A_samples)
    assert all(abs(lam) ** 2 > 1.3 for lam in scan.B_samples)


def test_scan_orders_by_margin(cos_index):
    scan = gs_scan(ConvolutionOperator.hyper_bessel(cos_index))
    margins = [round(abs(1 - abs(lam) ** 2), 9) for lam in scan.B_samples]
    assert margins == sorted(margins, reverse=True)


def test_scan_of_cosine_translation(cos_index):
    scan = gs_scan(ConvolutionOperator.translation(cos_index, 1))
    assert any(abs(lam - math.pi / 2) < 0.15 for lam in scan.A_samples)
    assert any(abs(lam - 2j) < 1e-12 for lam in scan.B_samples)


def test_scalar_operator_scan(cos_index):
    scan = gs_scan(ConvolutionOperator.identity(cos_index, 2))
    assert scan.is_scalar
    assert scan.A_samples == [] and scan.B_samples == []


def test_scan_enlarges_then_gives_up(cos_index):
    L = ConvolutionOperator.from_symbol(cos_index, [Fraction(1, 2), Fraction(1, 10 ** 12)])
    with pytest.raises(GridExhaustedError):
        gs_scan(L)
    # |Psi| > 1 first appears beyond the default radius
    L = ConvolutionOperator.from_symbol(cos_index, [Fraction(1, 2), Fraction(1, 50)])
    scan = gs_scan(L)
    assert scan.radius > 4.0 and scan.B_samples


def test_polar_sector_grid():
    points = polar_sector_grid(4, 2.0, 4, 8)
    assert len(points) == 32
    assert np.max(np.abs(points)) == pytest.approx(2.0)
    assert np.all(np.angle(points) >= -1e-15)
    assert np.all(np.angle(points) < math.pi / 2)


def test_write_symbol_csv(cos_index):
    scan = gs_scan(ConvolutionOperator.hyper_bessel(cos_index), radius=2.0, n_radii=4, n_angles=4)
    stream = io.StringIO()
    write_symbol_csv(scan, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "lambda_re,lambda_im,psi_re,psi_im,abs_psi"
    assert len(lines) == 17
    lam_re, lam_im, psi_re, psi_im, abs_psi = map(float, lines[1].split(","))
    assert (lam_re, lam_im) == (0.5, 0.0)
    assert psi_re == pytest.approx(-0.25) and abs_psi == pytest.approx(0.25)
