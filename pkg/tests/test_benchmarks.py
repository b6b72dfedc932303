"""Convergence and work-precision studies on the benchmark problems (slow)."""

import pytest

from complex_splitting.methods import create_method
from complex_splitting.models.study import StudyConfig
from complex_splitting.problems import AdrConfig, AdrProblem, ComplexOdeConfig, ComplexOdeProblem
from complex_splitting.studies import StudyRunner, compare_forms, efficiency_report

pytestmark = pytest.mark.slow

METHODS = ("strang", "clt2", "clt3", "cstrang3")


def _design_orders(n_operators: int) -> dict[str, int]:
    return {m: create_method(m, n_operators).design_order for m in METHODS}


def _assert_orders(result, orders: dict[str, int], tolerance: float) -> None:
    for method, slope in result.slopes.items():
        assert slope is not None, method
        assert abs(slope - orders[method]) <= tolerance, (
            f"{method}: slope {slope:.3f} for order {orders[method]}"
        )


class TestAdrConvergence:
    """ADR on the 1/20 grid with RK4 sub-flows."""

    @pytest.fixture(scope="class")
    def result(self):
        """Asymptotic rungs 0.1/256 .. 0.1/1024; coarser rungs are pre-asymptotic."""
        config = StudyConfig(
            problem="adr2d",
            methods=METHODS,
            dt_values=(0.1 / 256, 0.1 / 512, 0.1 / 1024),
            sub_integrator="rk4",
        )
        problem = AdrProblem(AdrConfig(dx=1 / 20))
        return StudyRunner(config, problem=problem).run()

    def test_orders(self, result):
        """Test fitted orders 2 and 3 within 0.25."""
        assert not any(row.blew_up for row in result.rows)
        _assert_orders(result, _design_orders(4), 0.25)

    def test_third_order_more_efficient(self, result):
        """Test that third-order methods win at equal RHS-evaluation cost."""
        report = efficiency_report(result, _design_orders(4))
        assert len(report.comparisons) == 4
        assert report.higher_order_wins


class TestComplexOdeConvergence:
    """The complex ODE over [0, 100] with Kutta3 sub-flows and the MRMS error."""

    @pytest.fixture(scope="class")
    def results(self):
        """Complex and realified studies on the same stable ladder."""
        config = StudyConfig(
            problem="complex-ode",
            methods=METHODS,
            dt_values=(1 / 64, 1 / 128, 1 / 256),
            sub_integrator="kutta3",
        )
        plain = StudyRunner(config, problem=ComplexOdeProblem(ComplexOdeConfig())).run()
        real_config = config.model_copy(update={"problem": "complex-ode-real"})
        real_problem = ComplexOdeProblem(ComplexOdeConfig(), realified=True)
        real = StudyRunner(real_config, problem=real_problem).run()
        return plain, real

    def test_complex_orders(self, results):
        """Test fitted orders of the complex form within 0.2."""
        plain, _ = results
        assert not any(row.blew_up for row in plain.rows)
        _assert_orders(plain, _design_orders(3), 0.2)

    def test_realified_orders(self, results):
        """Test fitted orders of the realified form within 0.2."""
        _, real = results
        assert not any(row.blew_up for row in real.rows)
        _assert_orders(real, _design_orders(3), 0.2)

    def test_forms_spend_equal_evaluations(self, results):
        """Test evaluation parity; the wall-time ratio is only reported."""
        comparison = compare_forms(*results)
        assert comparison.eval_parity
        assert comparison.wall_time_ratio > 0

    def test_third_order_more_efficient(self, results):
        """Test that third-order methods win at equal RHS-evaluation cost."""
        plain, _ = results
        assert efficiency_report(plain, _design_orders(3)).higher_order_wins
