"""Split ODE container: N operator evaluators with per-operator counters."""

from collections.abc import Callable, Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..core.exceptions import IntegrationError
from .tableau import Evaluator


class SplitOperator(BaseModel):
    """One operator F^[l] of a split right-hand side.

    ``matrix`` is set for linear operators F(t, y) = A y; it enables the
    exact sub-integrator.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    rhs: Callable[[complex, np.ndarray], np.ndarray]
    matrix: np.ndarray | None = None

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce_matrix(cls, value: Any) -> np.ndarray | None:
        if value is None:
            return None
        matrix = np.array(value, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {matrix.shape}")
        matrix.setflags(write=False)
        return matrix

    @property
    def linear(self) -> bool:
        """Whether the operator carries a matrix."""
        return self.matrix is not None


class SplitOde:
    """dy/dt = F^[1](t, y) + ... + F^[N](t, y) on complex d-vectors.

    Evaluations through :meth:`evaluate` are counted per operator; the
    counters belong to this instance, so concurrent runs each take a
    :meth:`fresh` copy.
    """

    def __init__(
        self,
        name: str,
        operators: Sequence[SplitOperator],
        dimension: int,
        full: Evaluator | None = None,
    ):
        if not operators:
            raise IntegrationError(f"{name}: a split ODE needs at least one operator")
        if dimension < 1:
            raise IntegrationError(f"{name}: dimension must be positive, got {dimension}")
        for op in operators:
            if op.matrix is not None and op.matrix.shape[0] != dimension:
                raise IntegrationError(
                    f"{name}: operator {op.name} has a {op.matrix.shape[0]}x{op.matrix.shape[0]} "
                    f"matrix on a {dimension}-dimensional state"
                )
        self.name = name
        self.operators = tuple(operators)
        self.dimension = dimension
        self._full = full
        self.eval_counters = [0] * len(self.operators)

    @property
    def n_operators(self) -> int:
        """Get number of operators N."""
        return len(self.operators)

    def evaluate(self, index: int, t: complex, y: np.ndarray) -> np.ndarray:
        """Evaluate operator ``index`` (0-based) and count the call."""
        self.eval_counters[index] += 1
        return np.asarray(self.operators[index].rhs(t, y), dtype=complex)

    def evaluator(self, index: int) -> Evaluator:
        """Counted evaluator of one operator, for handing to an RK step."""

        def f(t: complex, y: np.ndarray) -> np.ndarray:
            return self.evaluate(index, t, y)

        return f

    def evaluate_full(self, t: complex, y: np.ndarray) -> np.ndarray:
        """Unsplit right-hand side; not counted."""
        if self._full is not None:
            return np.asarray(self._full(t, y), dtype=complex)
        return self._operator_sum(t, y)

    def check_sum(self, states: Sequence[np.ndarray], t: complex = 0.0) -> float:
        """Largest gap between the unsplit RHS and the operator sum over ``states``."""
        gap = 0.0
        for y in states:
            total = self._operator_sum(t, y)
            gap = max(gap, float(np.max(np.abs(self.evaluate_full(t, y) - total))))
        return gap

    def _operator_sum(self, t: complex, y: np.ndarray) -> np.ndarray:
        total = np.zeros(self.dimension, dtype=complex)
        for op in self.operators:
            total = total + np.asarray(op.rhs(t, y), dtype=complex)
        return total

    def reset_counters(self) -> None:
        """Zero all evaluation counters."""
        self.eval_counters = [0] * self.n_operators

    def fresh(self) -> "SplitOde":
        """Copy sharing the (pure) operators but with zeroed counters."""
        return SplitOde(self.name, self.operators, self.dimension, self._full)

    @classmethod
    def from_matrices(cls, name: str, matrices: Sequence[np.ndarray]) -> "SplitOde":
        """Linear split ODE y' = (X_1 + ... + X_N) y."""
        operators = []
        for ell, matrix in enumerate(matrices, 1):
            frozen = np.array(matrix, dtype=complex)

            def rhs(t: complex, y: np.ndarray, a: np.ndarray = frozen) -> np.ndarray:
                return a @ y

            operators.append(SplitOperator(name=f"X{ell}", rhs=rhs, matrix=frozen))
        return cls(name, operators, dimension=operators[0].matrix.shape[0])
