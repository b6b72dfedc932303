"""Abstract base class for benchmark problems."""

from abc import ABC, abstractmethod

import numpy as np

from ..integrators.base import SplitOde


class BenchmarkProblem(ABC):
    """A split initial value problem together with its error metric."""

    t0: float = 0.0

    @property
    @abstractmethod
    def name(self) -> str:
        """Get the problem id."""
        pass

    @property
    @abstractmethod
    def t_final(self) -> float:
        """Get the end of the time span."""
        pass

    @property
    @abstractmethod
    def default_dt0(self) -> float:
        """Get the largest step of the default step-size ladder."""
        pass

    @property
    def sample_times(self) -> tuple[float, ...] | None:
        """Times at which the error is sampled; None means the final time only."""
        return None

    @abstractmethod
    def split_ode(self) -> SplitOde:
        """Build the split right-hand side."""
        pass

    @abstractmethod
    def initial_state(self) -> np.ndarray:
        """Build the (complex) initial state."""
        pass

    def observe(self, states: np.ndarray) -> np.ndarray:
        """Map states, one per row, to the quantity the error is measured on."""
        return np.asarray(states, dtype=complex)

    @abstractmethod
    def error(self, states: np.ndarray, reference: np.ndarray) -> float:
        """Error of computed states against reference states (one row per sample).

        Args:
            states: Computed states, shape (samples, d).
            reference: Reference states of the same shape.

        Returns:
            Nonnegative error.
        """
        pass
