"""Convergence and work-precision studies over a step-size ladder."""

import logging
import math
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np

from ..core.exceptions import BlowUpError, ConfigurationError, StudyError
from ..integrators import SubIntegratorConfig, create_sub_integrator, integrate, reference_solve
from ..methods import create_method
from ..models.method import MethodTable
from ..models.study import StudyConfig, StudyResult, StudyRow
from ..problems import (
    AdrConfig,
    BenchmarkProblem,
    ComplexOdeConfig,
    ComplexOdeProblem,
    create_problem,
)

logger = logging.getLogger(__name__)

RowCallback = Callable[[StudyRow], None]


def build_problem(problem_id: str, options: dict[str, Any] | None = None) -> BenchmarkProblem:
    """Problem by id, with the ``adr`` and ``complex_ode`` option sections applied."""
    options = options or {}
    try:
        adr = AdrConfig(**options["adr"]) if "adr" in options else None
        complex_ode = (
            ComplexOdeConfig(**options["complex_ode"]) if "complex_ode" in options else None
        )
    except ValueError as e:
        raise ConfigurationError(f"Invalid problem options: {e}") from e
    return create_problem(problem_id, adr=adr, complex_ode=complex_ode)


def build_methods(config: StudyConfig, n_operators: int) -> list[MethodTable]:
    """Tables of every method id, failing on the first unknown id."""
    return [create_method(method_id, n_operators) for method_id in config.methods]


def steps_for(problem: BenchmarkProblem, dt: float) -> tuple[int, int | None]:
    """Step count covering the span with ``dt`` and the steps between samples.

    Raises:
        StudyError: If dt does not divide the span or the sample spacing.
    """
    span = problem.t_final - problem.t0
    n_steps = round(span / dt)
    if n_steps < 1 or abs(n_steps * dt - span) > 1e-9 * span:
        raise StudyError(f"dt = {dt:g} does not divide the time span {span:g}")
    times = problem.sample_times
    if times is None:
        return n_steps, None
    if n_steps % len(times):
        raise StudyError(
            f"dt = {dt:g} gives {n_steps} steps, not a multiple of {len(times)} samples"
        )
    return n_steps, n_steps // len(times)


class StudyRunner:
    """Runs every (method, dt) pair of a study against one reference solution."""

    def __init__(self, config: StudyConfig, problem: BenchmarkProblem | None = None):
        self.config = config
        self.problem = problem or build_problem(config.problem, config.problem_options)
        self.ode = self.problem.split_ode()
        self.tables = build_methods(config, self.ode.n_operators)
        self.sub: SubIntegratorConfig = create_sub_integrator(
            config.sub_integrator,
            substeps_per_flow=config.substeps_per_flow,
            project_real=config.project_real,
        )
        self.schedule = {dt: steps_for(self.problem, dt) for dt in config.dt_values}
        self._reference: np.ndarray | None = None

    @property
    def reference(self) -> np.ndarray:
        """Reference states at the sample times (or the final time), one per row."""
        if self._reference is None:
            self._reference = self._solve_reference()
        return self._reference

    def _solve_reference(self) -> np.ndarray:
        problem = self.problem
        times = problem.sample_times or (problem.t_final,)
        started = time.perf_counter()
        reference = reference_solve(
            self.ode.evaluate_full,
            problem.t0,
            problem.initial_state(),
            problem.t_final,
            abs_tol=self.config.abs_tol,
            rel_tol=self.config.rel_tol,
            t_eval=times,
        )
        logger.info(
            "Reference for %s at %d time(s) in %.2fs",
            problem.name,
            len(times),
            time.perf_counter() - started,
        )
        return reference

    def run_row(self, table: MethodTable, dt: float) -> StudyRow:
        """Integrate one method at one step size and measure its error."""
        n_steps, sample_every = self.schedule[dt]
        started = time.perf_counter()
        try:
            result = integrate(
                table,
                self.ode,
                self.problem.t0,
                self.problem.initial_state(),
                self.problem.t_final,
                n_steps,
                self.sub,
                sample_every=sample_every,
            )
        except BlowUpError as e:
            logger.warning("%s at dt = %g blew up: %s", table.name, dt, e)
            return StudyRow(
                method=table.name,
                dt=dt,
                error=math.inf,
                rhs_evals_total=0,
                rhs_evals=(0,) * self.ode.n_operators,
                wall_seconds=time.perf_counter() - started,
            )

        if sample_every is None:
            states = result.final_state[np.newaxis, :]
        else:
            states = np.array(result.samples)
        error = self.problem.error(states, self.reference)
        logger.debug("%s dt=%g error=%.3e evals=%d", table.name, dt, error, result.rhs_evals_total)
        return StudyRow(
            method=table.name,
            dt=dt,
            error=error,
            rhs_evals_total=result.rhs_evals_total,
            rhs_evals=result.rhs_evals,
            wall_seconds=result.wall_seconds,
        )

    def run(self, on_row: RowCallback | None = None) -> StudyResult:
        """Run all rows, in parallel when the study asks for several workers.

        Args:
            on_row: Called with every finished row (from the calling thread).

        Returns:
            The canonically sorted result.
        """
        _ = self.reference
        jobs = [(table, dt) for table in self.tables for dt in self.config.dt_values]
        rows: list[StudyRow] = []
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                for row in pool.map(lambda job: self.run_row(*job), jobs):
                    rows.append(row)
                    if on_row:
                        on_row(row)
        else:
            for table, dt in jobs:
                row = self.run_row(table, dt)
                rows.append(row)
                if on_row:
                    on_row(row)
        return StudyResult(n_operators=self.ode.n_operators, rows=rows)


def paired_problem(problem: BenchmarkProblem) -> BenchmarkProblem:
    """The other form (complex or realified) of the complex ODE benchmark.

    Raises:
        StudyError: If the problem has no second form.
    """
    if not isinstance(problem, ComplexOdeProblem):
        raise StudyError(f"{problem.name} has no complex/realified pair")
    return ComplexOdeProblem(problem.config, realified=not problem.realified)
