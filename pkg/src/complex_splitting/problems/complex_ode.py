"""Scalar complex ODE benchmark and its real two-dimensional form.

du/dt = i u + 0.05 u - 0.5 u^3, split as G1 = i u, G2 = 0.05 u, G3 = -0.5 u^3.
With u = x + i y the realified form is

    H1 = [-y; x],  H2 = 0.05 [x; y],
    H3 = [1.5 x y^2 - 0.5 x^3; -1.5 x^2 y + 0.5 y^3].
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..integrators.base import SplitOde, SplitOperator
from .base import BenchmarkProblem
from .metrics import mrms_error

GROWTH = 0.05
CUBIC = -0.5


class ComplexOdeConfig(BaseModel):
    """Initial value, span and equally spaced sample count."""

    model_config = ConfigDict(frozen=True)

    u0: complex = 0.1
    t_final: float = Field(default=100.0, gt=0)
    samples: int = Field(default=100, ge=1)

    @field_validator("u0", mode="before")
    @classmethod
    def _parse_u0(cls, value: object) -> complex:
        if isinstance(value, str):
            return complex(value.replace(" ", "").replace("i", "j"))
        return complex(value)

    @property
    def sample_times(self) -> tuple[float, ...]:
        """t_final k / samples for k = 1..samples."""
        return tuple(self.t_final * k / self.samples for k in range(1, self.samples + 1))


def complex_rhs(t: complex, u: np.ndarray) -> np.ndarray:
    """Unsplit right-hand side i u + 0.05 u - 0.5 u^3."""
    return 1j * u + GROWTH * u + CUBIC * u**3


def complex_split(cfg: ComplexOdeConfig) -> SplitOde:
    """Three-operator split on a 1-vector."""

    def rotation(t: complex, u: np.ndarray) -> np.ndarray:
        return 1j * u

    def growth(t: complex, u: np.ndarray) -> np.ndarray:
        return GROWTH * u

    def cubic(t: complex, u: np.ndarray) -> np.ndarray:
        return CUBIC * u**3

    operators = [
        SplitOperator(name="G1", rhs=rotation, matrix=[[1j]]),
        SplitOperator(name="G2", rhs=growth, matrix=[[GROWTH]]),
        SplitOperator(name="G3", rhs=cubic),
    ]
    return SplitOde("complex-ode", operators, dimension=1, full=complex_rhs)


def realified_rhs(t: complex, state: np.ndarray) -> np.ndarray:
    """Unsplit right-hand side of the realified form."""
    x, y = state
    return np.array(
        [
            -y + GROWTH * x + 1.5 * x * y**2 - 0.5 * x**3,
            x + GROWTH * y - 1.5 * x**2 * y + 0.5 * y**3,
        ]
    )


def realified_split(cfg: ComplexOdeConfig) -> SplitOde:
    """Three-operator split on (x, y) = (Re u, Im u)."""

    def rotation(t: complex, state: np.ndarray) -> np.ndarray:
        x, y = state
        return np.array([-y, x])

    def growth(t: complex, state: np.ndarray) -> np.ndarray:
        return GROWTH * state

    def cubic(t: complex, state: np.ndarray) -> np.ndarray:
        x, y = state
        return np.array([1.5 * x * y**2 - 0.5 * x**3, -1.5 * x**2 * y + 0.5 * y**3])

    operators = [
        SplitOperator(name="H1", rhs=rotation, matrix=[[0, -1], [1, 0]]),
        SplitOperator(name="H2", rhs=growth, matrix=[[GROWTH, 0], [0, GROWTH]]),
        SplitOperator(name="H3", rhs=cubic),
    ]
    return SplitOde("complex-ode-real", operators, dimension=2, full=realified_rhs)


def to_realified(u: complex) -> np.ndarray:
    """(Re u, Im u) as a complex-typed 2-vector."""
    return np.array([u.real, u.imag], dtype=complex)


def from_realified(states: np.ndarray) -> np.ndarray:
    """x + i y for each (x, y) row; holds for complex x, y as well."""
    states = np.asarray(states, dtype=complex)
    return states[..., 0] + 1j * states[..., 1]


class ComplexOdeProblem(BenchmarkProblem):
    """Complex ODE benchmark measured by the MRMS error over the sample times."""

    def __init__(self, config: ComplexOdeConfig | None = None, realified: bool = False):
        self.config = config or ComplexOdeConfig()
        self.realified = realified

    @property
    def name(self) -> str:
        """Get the problem id."""
        return "complex-ode-real" if self.realified else "complex-ode"

    @property
    def t_final(self) -> float:
        """Get the end of the time span."""
        return self.config.t_final

    @property
    def default_dt0(self) -> float:
        """Get the largest default step, 1/128 of one sample interval.

        Near the peak |u| of about 7 (t around 52) coarser steps blow up for
        every built-in method.
        """
        return self.config.t_final / self.config.samples / 128

    @property
    def sample_times(self) -> tuple[float, ...]:
        """Get the equally spaced sample times."""
        return self.config.sample_times

    def split_ode(self) -> SplitOde:
        """Build the split right-hand side."""
        if self.realified:
            return realified_split(self.config)
        return complex_split(self.config)

    def initial_state(self) -> np.ndarray:
        """Build the initial state."""
        u0 = complex(self.config.u0)
        if not (math.isfinite(u0.real) and math.isfinite(u0.imag)):
            raise ValueError(f"initial value must be finite, got {u0}")
        if self.realified:
            return to_realified(u0)
        return np.array([u0], dtype=complex)

    def observe(self, states: np.ndarray) -> np.ndarray:
        """The scalar u at each sample."""
        states = np.asarray(states, dtype=complex)
        if self.realified:
            return from_realified(states)
        return states[..., 0]

    def error(self, states: np.ndarray, reference: np.ndarray) -> float:
        """MRMS error of u over the sample times."""
        return mrms_error(self.observe(states), self.observe(reference))
