import pytest

from algebra.index import VectorIndex, alpha_table
from cli.identities import CheckResult, IdentitySuite, corrupted_alpha_table


def test_check_result_tracks_worst_residual():
    result = CheckResult("demo")
    result.record(True, 1e-14)
    result.record(False, 3e-9)
    result.record(True)
    assert result.to_dict() == {"name": "demo", "cases": 3, "failures": 1, "worst_residual": 3e-9}


def test_corrupted_table_is_detected(cos_index):
    clean = alpha_table(cos_index, 10)
    broken = corrupted_alpha_table(cos_index, 10)
    assert broken.values[3] == 2 * clean.values[3]
    assert broken.values[:3] == clean.values[:3]


def test_suite_passes(any_index):
    results, passed = IdentitySuite(any_index, seed=1, cases=3, N=8).run()
    failed = [r.to_dict() for r in results if r.failures]
    assert passed, failed
    assert all(r.cases > 0 for r in results)


def test_suite_is_deterministic(cubic_index):
    first, _ = IdentitySuite(cubic_index, seed=42, cases=3, N=6).run()
    second, _ = IdentitySuite(cubic_index, seed=42, cases=3, N=6).run()
    assert [r.to_dict() for r in first] == [r.to_dict() for r in second]


def test_alpha_fault_is_caught(cos_index):
    suite = IdentitySuite(cos_index, cases=2, N=6, alpha_source=corrupted_alpha_table)
    results, passed = suite.run()
    assert not passed
    by_name = {r.name: r for r in results}
    assert by_name["alpha_table"].failures > 0


def test_every_check_is_named_once(sinc_index):
    names = [check().name for check in IdentitySuite(sinc_index, cases=1, N=4).checks()]
    assert len(names) == len(set(names)) == 21


@pytest.mark.parametrize("check", [
    "check_special_bounds",
    "check_pairing_fourier",
    "check_density_refinement",
    "check_shift_law",
    "check_grid_norm",
    "check_symbol_eigen",
    "check_periodic_points",
])
def test_cross_module_checks_pass(any_index, check):
    result = getattr(IdentitySuite(any_index, seed=3, cases=3, N=6), check)()
    assert result.cases > 0
    assert result.failures == 0, result.to_dict()


def test_periodic_check_verifies_newton_points(cos_index):
    result = IdentitySuite(cos_index, seed=0, cases=4, N=8).check_periodic_points()
    # one existence record per case, then two records per point found
    assert result.cases > 4
    assert result.worst <= 1e-9


def test_functional_order_is_configurable(cubic_index):
    suite = IdentitySuite(cubic_index, cases=2, N=6, functional_order=5)
    assert suite.functional().N == 5
    assert suite.functional(3).N == 3
    assert suite.check_convolution_algebra().failures == 0


def test_suite_rejects_empty_runs(cos_index):
    with pytest.raises(ValueError):
        IdentitySuite(cos_index, cases=0)
    with pytest.raises(ValueError):
        IdentitySuite(cos_index, N=0)
