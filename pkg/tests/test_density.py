import io

import numpy as np
import pytest

from algebra.errors import IndexMismatchError
from algebra.scalars import Mode
from algebra.series import REvenSeries
from harmonic.density import (
    bessel_columns,
    circle_grid,
    density_residual,
    solve_least_squares,
    write_density_csv,
)


def test_single_node_at_origin_fits_constants(any_index):
    result = density_residual(any_index, [0.0], REvenSeries.constant(any_index, 3), R=2.0, m=64)
    assert result.residual <= 1e-14
    assert result.coefficients[0] == pytest.approx(3.0)


def test_basis_element_from_twelve_nodes(sinc_index):
    nodes = np.linspace(0.1, 1.2, 12)
    result = density_residual(sinc_index, nodes, REvenSeries.basis(sinc_index, 1), R=1.0)
    assert result.residual < 1e-6
    assert result.rms <= result.residual
    assert len(result.coefficients) == 12


def test_more_nodes_do_not_hurt(cos_index):
    # each node set contains the previous one, so the fitted span only grows
    target = REvenSeries.basis(cos_index, 2)
    many = np.linspace(0.2, 1.0, 10)
    nested = [many[::3], many, np.append(many, [0.15, 1.1])]
    values = [density_residual(cos_index, nodes, target, R=1.0).rms for nodes in nested]
    for coarse, fine in zip(values, values[1:]):
        assert fine <= coarse + 1e-10


def test_twelve_node_refinement_of_basis_element(sinc_index):
    target = REvenSeries.basis(sinc_index, 1)
    nodes = np.linspace(0.1, 1.2, 12)
    coarse = density_residual(sinc_index, nodes[::2], target, R=1.0)
    fine = density_residual(sinc_index, nodes, target, R=1.0)
    assert fine.rms <= coarse.rms + 1e-10
    assert fine.residual < 1e-6


def test_threaded_columns_match_serial(cubic_index):
    points = circle_grid(1.5, 32)
    nodes = [0.3, 0.7 + 0.1j, 1.1]
    np.testing.assert_allclose(bessel_columns(cubic_index, nodes, points, threads=3),
                               bessel_columns(cubic_index, nodes, points, threads=1))


def test_validation(cos_index, sinc_index):
    with pytest.raises(ValueError):
        density_residual(cos_index, [], REvenSeries.constant(cos_index), R=1.0)
    with pytest.raises(IndexMismatchError):
        density_residual(cos_index, [0.5], REvenSeries.constant(sinc_index), R=1.0)
    with pytest.raises(ValueError):
        circle_grid(0.0)


def test_circle_grid():
    points = circle_grid(2.0, 8)
    np.testing.assert_allclose(np.abs(points), 2.0)
    assert points[0] == 2.0


def test_rank_deficient_system_falls_back_to_ridge():
    A = np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 2.0]])
    b = np.array([1.0, 1.0, 2.0])
    solution = solve_least_squares(A, b)
    assert solution.regularized
    assert solution.rank == 1
    assert solution.residual <= 1e-6


def test_full_rank_system():
    A = np.eye(3)
    b = np.array([1.0, -2.0, 3.0j])
    solution = solve_least_squares(A, b)
    assert not solution.regularized
    np.testing.assert_allclose(solution.coefficients, b)
    assert solution.residual == pytest.approx(0.0, abs=1e-15)


def test_write_density_csv(cos_index):
    result = density_residual(cos_index, [0.0, 0.5], REvenSeries.constant(cos_index, 1, 0, Mode.FLOAT),
                              R=1.0, m=16)
    stream = io.StringIO()
    write_density_csv(result, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "lambda_re,lambda_im,c_re,c_im"
    assert len(lines) == 4
    assert lines[-1].startswith("residual,")
