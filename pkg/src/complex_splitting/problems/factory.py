"""Factory for benchmark problems."""

from ..core.exceptions import ConfigurationError
from .adr import AdrConfig, AdrProblem
from .base import BenchmarkProblem
from .complex_ode import ComplexOdeConfig, ComplexOdeProblem

PROBLEMS = ("adr2d", "complex-ode", "complex-ode-real")


def create_problem(
    problem_id: str,
    adr: AdrConfig | None = None,
    complex_ode: ComplexOdeConfig | None = None,
) -> BenchmarkProblem:
    """Create a benchmark problem by id.

    Args:
        problem_id: Problem id (adr2d, complex-ode, complex-ode-real).
        adr: ADR parameters, defaults when None.
        complex_ode: Complex ODE parameters, defaults when None.

    Returns:
        Benchmark problem.

    Raises:
        ConfigurationError: If the id is unknown.
    """
    problem_id = problem_id.lower()

    if problem_id == "adr2d":
        return AdrProblem(adr)
    elif problem_id == "complex-ode":
        return ComplexOdeProblem(complex_ode)
    elif problem_id == "complex-ode-real":
        return ComplexOdeProblem(complex_ode, realified=True)
    else:
        raise ConfigurationError(
            f"Unknown problem: {problem_id}. Supported: {', '.join(PROBLEMS)}"
        )
