"""Tests for the study runner, efficiency summaries, BCH checks and verification."""

import math

import numpy as np
import pytest

from complex_splitting.bch import halving_ratios, random_matrix_set
from complex_splitting.core.exceptions import ConfigurationError, StudyError
from complex_splitting.integrators import SplitOde
from complex_splitting.models.study import StudyConfig, StudyResult, StudyRow
from complex_splitting.problems import (
    AdrConfig,
    AdrProblem,
    BenchmarkProblem,
    ComplexOdeConfig,
    ComplexOdeProblem,
    l2_error,
)
from complex_splitting.studies import (
    StudyRunner,
    build_problem,
    compare_forms,
    efficiency_report,
    error_at_cost,
    eval_count_parity,
    paired_problem,
    run_bch_check,
    steps_for,
    verify_method,
    wall_time_ratio,
)


class LinearProblem(BenchmarkProblem):
    """y' = (X_1 + ... + X_N) y on [0, 1] with fixed matrices."""

    def __init__(self, matrices):
        self.matrices = matrices

    @property
    def name(self) -> str:
        return "linear"

    @property
    def t_final(self) -> float:
        return 1.0

    @property
    def default_dt0(self) -> float:
        return 0.1

    def split_ode(self) -> SplitOde:
        return SplitOde.from_matrices("linear", self.matrices)

    def initial_state(self) -> np.ndarray:
        return np.ones(self.matrices[0].shape[0], dtype=complex)

    def error(self, states, reference) -> float:
        return l2_error(states[-1], reference[-1])


def _random_problem() -> LinearProblem:
    return LinearProblem([0.5 * m for m in random_matrix_set(3, 3, seed=7).matrices])


def _config(**overrides) -> StudyConfig:
    values = {
        "problem": "linear",
        "methods": ("lt", "strang"),
        "dt_values": (0.1, 0.05, 0.025),
        "sub_integrator": "exact",
    }
    return StudyConfig(**(values | overrides))


def _row(method: str, dt: float, error: float, evals: int) -> StudyRow:
    return StudyRow(
        method=method,
        dt=dt,
        error=error,
        rhs_evals_total=evals,
        rhs_evals=(evals,),
        wall_seconds=0.01,
    )


class TestStepsFor:
    """Tests for step counts and sample spacing."""

    def test_final_time_only(self):
        """Test a problem measured at the final time."""
        assert steps_for(AdrProblem(), 0.1 / 32) == (32, None)

    def test_samples(self):
        """Test steps between samples."""
        problem = ComplexOdeProblem(ComplexOdeConfig(t_final=10, samples=10))
        assert steps_for(problem, 0.5) == (20, 2)

    @pytest.mark.parametrize("dt", [0.3, 2.0])
    def test_incompatible_step(self, dt):
        """Test steps that miss the span or the sample times."""
        problem = ComplexOdeProblem(ComplexOdeConfig(t_final=10, samples=10))
        with pytest.raises(StudyError):
            steps_for(problem, dt)


class TestBuildProblem:
    """Tests for problem construction from option sections."""

    def test_options_applied(self):
        """Test that option sections reach the problem."""
        problem = build_problem("adr2d", {"adr": {"dx": 0.1, "t_final": 0.05}})
        assert isinstance(problem, AdrProblem)
        assert problem.config == AdrConfig(dx=0.1, t_final=0.05)

    def test_invalid_options(self):
        """Test that invalid options raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            build_problem("adr2d", {"adr": {"dx": 0.3}})


class TestStudyRunner:
    """Tests for running studies."""

    def test_convergence_slopes(self):
        """Test first- and second-order slopes with exact sub-flows."""
        result = StudyRunner(_config(), problem=_random_problem()).run()
        assert len(result.rows) == 6
        assert result.slope("lt") == pytest.approx(1.0, abs=0.3)
        assert result.slope("strang") == pytest.approx(2.0, abs=0.3)

    def test_rows_sorted_and_reported(self):
        """Test canonical ordering and the row callback."""
        seen = []
        result = StudyRunner(_config(), problem=_random_problem()).run(on_row=seen.append)
        assert len(seen) == 6
        assert [(r.method, r.dt) for r in result.rows] == [
            ("lt", 0.025),
            ("lt", 0.05),
            ("lt", 0.1),
            ("strang", 0.025),
            ("strang", 0.05),
            ("strang", 0.1),
        ]

    def test_blow_up_rows(self):
        """Test that blown-up runs become inf rows with zero counts."""
        problem = LinearProblem([np.array([[-500.0]]), np.array([[-500.0]])])
        config = _config(methods=("lt",), dt_values=(0.5, 0.25), sub_integrator="rk4")
        result = StudyRunner(config, problem=problem).run()
        assert all(row.blew_up for row in result.rows)
        assert all(row.rhs_evals == (0, 0) for row in result.rows)
        assert result.slope("lt") is None

    def test_parallel_matches_serial(self):
        """Test that workers change neither errors nor evaluation counts."""
        serial = StudyRunner(_config(), problem=_random_problem()).run()
        parallel = StudyRunner(_config(workers=3), problem=_random_problem()).run()
        assert eval_count_parity(serial, parallel)
        assert [r.error for r in serial.rows] == [r.error for r in parallel.rows]

    def test_sub_integrator_changes_cost(self):
        """Test that RK sub-integration counts stages while exact flows count nothing."""
        exact = StudyRunner(_config(), problem=_random_problem()).run()
        rk = StudyRunner(_config(sub_integrator="rk4"), problem=_random_problem()).run()
        assert all(r.rhs_evals_total == 0 for r in exact.rows)
        lt_row = rk.rows_for("lt")[-1]
        assert lt_row.rhs_evals == (40, 40, 40)
        assert not eval_count_parity(exact, rk)

    def test_unknown_method(self):
        """Test that unknown ids fail before any run."""
        with pytest.raises(ConfigurationError):
            StudyRunner(_config(methods=("lt", "nope")), problem=_random_problem())


class TestEfficiency:
    """Tests for work-precision summaries."""

    def _result(self) -> StudyResult:
        return StudyResult(
            n_operators=1,
            rows=[
                _row("lo", 0.1, 1e-2, 100),
                _row("lo", 0.05, 5e-3, 200),
                _row("hi", 0.1, 1e-3, 200),
                _row("hi", 0.05, 2.5e-4, 400),
            ],
        )

    def test_error_at_cost(self):
        """Test interpolation along the log-log line."""
        rows = self._result().rows_for("hi")
        assert error_at_cost(rows, 200) == pytest.approx(1e-3)
        assert error_at_cost(rows[:1], 200) is None

    def test_higher_order_wins(self):
        """Test the comparison at the lower-order method's tightest cost."""
        report = efficiency_report(self._result(), {"lo": 1, "hi": 2})
        assert [e.method for e in report.entries] == ["hi", "lo"]
        (comparison,) = report.comparisons
        assert (comparison.higher, comparison.lower, comparison.cost) == ("hi", "lo", 200)
        assert comparison.higher_wins
        assert report.higher_order_wins

    def test_no_comparisons(self):
        """Test that equal orders give no verdict."""
        report = efficiency_report(self._result(), {"lo": 2, "hi": 2})
        assert report.comparisons == ()
        assert not report.higher_order_wins

    def test_wall_time_ratio(self):
        """Test the wall-time ratio and its zero-denominator case."""
        result = self._result()
        assert wall_time_ratio(result, result) == pytest.approx(1.0)
        idle_row = _row("lo", 0.1, 1e-2, 0).model_copy(update={"wall_seconds": 0.0})
        idle = StudyResult(n_operators=1, rows=[idle_row])
        assert math.isinf(wall_time_ratio(result, idle))

    def test_compare_forms(self):
        """Test parity and the complex over realified time ratio."""
        result = self._result()
        slower = StudyResult(
            n_operators=1,
            rows=[r.model_copy(update={"wall_seconds": 2 * r.wall_seconds}) for r in result.rows],
        )
        comparison = compare_forms(result, slower)
        assert comparison.eval_parity
        assert comparison.wall_time_ratio == pytest.approx(0.5)
        assert comparison.complex_not_slower
        assert not compare_forms(slower, result).complex_not_slower

    def test_compare_forms_detects_different_costs(self):
        """Test that differing evaluation counts break parity."""
        result = self._result()
        other = StudyResult(n_operators=1, rows=[_row("lo", 0.1, 1e-2, 101)])
        assert not compare_forms(result, other).eval_parity


class TestPairedProblem:
    """Tests for the other form of a complex-ode problem."""

    def test_pairs_both_ways(self):
        """Test complex to realified and back with the same options."""
        config = ComplexOdeConfig(t_final=4, samples=4)
        realified = paired_problem(ComplexOdeProblem(config))
        assert realified.name == "complex-ode-real"
        assert realified.config == config
        assert paired_problem(realified).name == "complex-ode"

    def test_adr_has_no_pair(self):
        """Test that ADR cannot be paired."""
        with pytest.raises(StudyError, match="no complex/realified pair"):
            paired_problem(AdrProblem())


class TestBchCheck:
    """Tests for the BCH check report."""

    def test_random_set_passes(self):
        """Test ratios near 16 and agreement of both expansions."""
        report = run_bch_check(t0=0.05)
        assert report.passed
        assert not report.exact
        assert len(report.ratios) == 3
        assert report.pairwise_gap < 1e-12

    def test_ratios_match_expansion_halving(self):
        """Test that the report carries the expansion's own halving ratios."""
        report = run_bch_check(n_operators=4, dimension=3, seed=7, t0=0.05, refinements=2)
        ms = random_matrix_set(4, 3, seed=7)
        assert list(report.ratios) == halving_ratios(ms, 0.05, 2)
        assert report.t_values == (0.05, 0.025, 0.0125)

    def test_commuting_set_is_exact(self):
        """Test the commuting case."""
        report = run_bch_check(commuting=True)
        assert report.exact
        assert report.passed
        assert report.ratios == (None, None, None)


class TestVerification:
    """Tests for method verification."""

    def test_second_order_symbolic(self):
        """Test CLT2 without an empirical fit."""
        result = verify_method("clt2", 3)
        assert result.symbolic_passed
        assert result.empirical is None
        assert result.passed

    def test_third_order_empirical(self):
        """Test CLT3, verified by a fitted order."""
        result = verify_method("clt3", 3)
        assert result.empirical is not None
        assert result.empirical_passed
        assert result.passed

    def test_required_order_not_met(self):
        """Test that Lie-Trotter fails when second order is required."""
        result = verify_method("lt-4", 2, order=2)
        assert result.n_operators == 4
        assert not result.symbolic_passed
        assert not result.passed
