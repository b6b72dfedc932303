"""Factory for sub-integrator configurations."""

from ..core.exceptions import ConfigurationError
from .splitting import SubIntegratorConfig
from .tableau import KUTTA3, RK4

SUB_INTEGRATORS = ("rk4", "kutta3", "exact")


def create_sub_integrator(
    name: str,
    substeps_per_flow: int = 1,
    project_real: bool = False,
) -> SubIntegratorConfig:
    """Create a sub-integrator configuration by name.

    Args:
        name: Sub-integrator name (rk4, kutta3, exact).
        substeps_per_flow: RK steps per sub-flow.
        project_real: Drop imaginary parts after every step.

    Returns:
        Sub-integrator configuration.

    Raises:
        ConfigurationError: If the name is unknown.
    """
    name = name.lower()

    if name == "rk4":
        tableau = RK4
    elif name == "kutta3":
        tableau = KUTTA3
    elif name == "exact":
        tableau = None
    else:
        raise ConfigurationError(
            f"Unknown sub-integrator: {name}. Supported: {', '.join(SUB_INTEGRATORS)}"
        )
    return SubIntegratorConfig(
        tableau=tableau,
        substeps_per_flow=substeps_per_flow,
        project_real=project_real,
    )
