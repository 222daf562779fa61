"""Oracle-module tests: projection coefficients, ODE check, suite wiring."""

import math

import numpy as np
import pytest

from fractalssm.specfun import JacobiParam, basis_scale, jacobi_eval_all
from fractalssm.verify import (OracleReport, ode_consistency, projection_coefficients,
                               run_full_suite)


class TestProjectionCoefficients:
    def test_constant_projects_to_leading(self):
        for alpha in (0.0, 0.5, 0.9):
            x = projection_coefficients(lambda s: np.full_like(s, 3.2),
                                        alpha, 6, t=2.0, order=32)
            assert x[0] == pytest.approx(3.2, abs=1e-12)
            assert np.max(np.abs(x[1:])) < 1e-12

    def test_basis_function_projects_to_unit_vector(self):
        alpha, t = 0.4, 1.7
        scale = basis_scale(alpha, 1)

        def u(tau):
            vals = jacobi_eval_all(JacobiParam(-alpha, 0.0), 1, 2 * tau / t - 1)
            return scale.gamma_n * vals[1]

        x = projection_coefficients(u, alpha, 5, t, order=32)
        expected = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
        assert np.max(np.abs(x - expected)) < 1e-10

    def test_uniform_linear_ramp(self):
        # analytic Legendre integrals of u(tau) = tau on t = 1
        x = projection_coefficients(lambda s: s, 0.0, 3, t=1.0, order=16)
        assert x[0] == pytest.approx(0.5, abs=1e-14)
        assert x[1] == pytest.approx(1.0 / (2.0 * math.sqrt(3.0)), abs=1e-14)
        assert x[2] == pytest.approx(0.0, abs=1e-14)

    def test_order_floor(self):
        with pytest.raises(ValueError):
            projection_coefficients(np.sin, 0.3, 8, 1.0, order=8)

    def test_nonfinite_signal(self):
        with np.errstate(divide="ignore", invalid="ignore"), pytest.raises(ValueError):
            projection_coefficients(lambda s: 1.0 / (s - s), 0.3, 2, 1.0, order=8)


class TestOdeConsistency:
    def test_uniform_measure_sine(self):
        report = ode_consistency(0.0, 8, np.sin, t=3.0)
        assert report.passed
        assert report.max_deviation < 1e-6
        ratio = report.detail[-1]["convergence_ratio"]
        assert 3.5 <= ratio <= 4.5

    def test_uniform_measure_quadratic(self):
        report = ode_consistency(0.0, 8, lambda s: s ** 2, t=3.0)
        assert report.max_deviation < 1e-8

    def test_uniform_measure_constant(self):
        report = ode_consistency(0.0, 6, lambda s: np.full_like(s, 1.3), t=2.0)
        assert report.max_deviation < 1e-10

    def test_step_validation(self):
        with pytest.raises(ValueError):
            ode_consistency(0.0, 4, np.sin, t=1.0, h=0.6)

    def test_report_is_structured(self):
        report = ode_consistency(0.0, 4, np.sin, t=3.0)
        assert report.name == "ode-consistency[alpha=0]"
        assert len(report.detail) == 3
        assert report.passed == (report.max_deviation <= report.tolerance)


@pytest.fixture(scope="module")
def uniform_suite():
    return run_full_suite([0.0], 8, seed=1)


class TestRunFullSuite:
    def test_empty_grid(self):
        assert run_full_suite([], 8) == []

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            run_full_suite([0.99], 8)

    def test_uniform_grid_analytic_checks_pass(self, uniform_suite):
        reports = {r.name: r for r in uniform_suite}
        for name in ("measure-normalization", "scale-invariance",
                     "basis-orthonormality", "diagonal-invariance", "legs-recovery",
                     "table-alpha0", "eigenvalue-invariance",
                     "input-vector-closed-form", "offdiag-monotonicity",
                     "scan-equivalence", "zoh-limit", "ode-consistency[alpha=0]"):
            assert name in reports
            assert reports[name].passed, f"{name}: {reports[name].max_deviation}"

    def test_half_index_triggers_table_check(self):
        reports = {r.name for r in run_full_suite([0.5], 6, seed=1)}
        assert "table-alpha05" in reports
        assert "table-alpha0" not in reports

    def test_reports_are_consistent_records(self, uniform_suite):
        for report in uniform_suite:
            assert isinstance(report, OracleReport)
            assert report.passed == (report.max_deviation <= report.tolerance)
