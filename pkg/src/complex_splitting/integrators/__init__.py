"""Sub-integrators, the splitting stepper and the reference solver."""

from .base import SplitOde, SplitOperator
from .factory import SUB_INTEGRATORS, create_sub_integrator
from .reference import DormandPrince, reference_solve
from .splitting import (
    IntegrationResult,
    Splitter,
    SubIntegratorConfig,
    exact_linear_flow,
    integrate,
    split_step,
)
from .tableau import DOPRI54, KUTTA3, RK4, ButcherTableau, rk_substep

__all__ = [
    "DOPRI54",
    "KUTTA3",
    "RK4",
    "SUB_INTEGRATORS",
    "ButcherTableau",
    "DormandPrince",
    "IntegrationResult",
    "SplitOde",
    "SplitOperator",
    "Splitter",
    "SubIntegratorConfig",
    "create_sub_integrator",
    "exact_linear_flow",
    "integrate",
    "reference_solve",
    "rk_substep",
    "split_step",
]
