"""Explicit Runge-Kutta tableaux and a single RK step over a complex step."""

from collections.abc import Callable
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

Evaluator = Callable[[complex, np.ndarray], np.ndarray]

_TABLEAU_TOLERANCE = 1e-14


class ButcherTableau(BaseModel):
    """Explicit Runge-Kutta coefficients (c, A strictly lower triangular, b).

    ``b_error`` holds the weights of an embedded lower-order solution when
    the tableau is an adaptive pair.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    order: int
    c: tuple[float, ...]
    a: tuple[tuple[float, ...], ...]
    b: tuple[float, ...]
    b_error: tuple[float, ...] | None = None

    @field_validator("a", mode="before")
    @classmethod
    def _pad_rows(cls, value: Any) -> tuple[tuple[float, ...], ...]:
        rows = [list(row) for row in value]
        s = len(rows)
        return tuple(tuple(float(x) for x in row + [0.0] * (s - len(row))) for row in rows)

    @model_validator(mode="after")
    def _check_consistency(self) -> "ButcherTableau":
        s = len(self.b)
        if len(self.c) != s or len(self.a) != s:
            raise ValueError(f"{self.name}: c, A and b must all have {s} stages")
        for i, row in enumerate(self.a):
            if len(row) != s:
                raise ValueError(f"{self.name}: row {i} of A has {len(row)} entries")
            if any(row[j] != 0 for j in range(i, s)):
                raise ValueError(f"{self.name}: A must be strictly lower triangular")
            if abs(sum(row) - self.c[i]) > _TABLEAU_TOLERANCE:
                raise ValueError(f"{self.name}: row {i} of A does not sum to c[{i}]")
        if abs(sum(self.b) - 1) > _TABLEAU_TOLERANCE:
            raise ValueError(f"{self.name}: weights b must sum to 1")
        if self.b_error is not None and (
            len(self.b_error) != s or abs(sum(self.b_error) - 1) > _TABLEAU_TOLERANCE
        ):
            raise ValueError(f"{self.name}: embedded weights must have {s} entries summing to 1")
        return self

    @property
    def stages(self) -> int:
        """Get number of stages."""
        return len(self.b)


RK4 = ButcherTableau(
    name="rk4",
    order=4,
    c=(0.0, 0.5, 0.5, 1.0),
    a=[[], [0.5], [0.0, 0.5], [0.0, 0.0, 1.0]],
    b=(1 / 6, 1 / 3, 1 / 3, 1 / 6),
)

KUTTA3 = ButcherTableau(
    name="kutta3",
    order=3,
    c=(0.0, 0.5, 1.0),
    a=[[], [0.5], [-1.0, 2.0]],
    b=(1 / 6, 2 / 3, 1 / 6),
)

DOPRI54 = ButcherTableau(
    name="dopri54",
    order=5,
    c=(0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0),
    a=[
        [],
        [1 / 5],
        [3 / 40, 9 / 40],
        [44 / 45, -56 / 15, 32 / 9],
        [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
        [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
        [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
    ],
    b=(35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0),
    b_error=(5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40),
)


def rk_stages(
    tableau: ButcherTableau, f: Evaluator, t: complex, y: np.ndarray, h: complex
) -> list[np.ndarray]:
    """Stage derivatives k_j = f(t + c_j h, y + h sum_m a_jm k_m)."""
    k: list[np.ndarray] = []
    for j in range(tableau.stages):
        increment = np.zeros_like(y)
        for m in range(j):
            if tableau.a[j][m] != 0:
                increment = increment + tableau.a[j][m] * k[m]
        k.append(np.asarray(f(t + tableau.c[j] * h, y + h * increment), dtype=complex))
    return k


def rk_substep(
    tableau: ButcherTableau, f: Evaluator, t: complex, y: np.ndarray, h: complex
) -> np.ndarray:
    """Advance y' = f(t, y) by one explicit RK step of (possibly complex) size h.

    Args:
        tableau: Explicit tableau.
        f: Right-hand side; called once per stage.
        t: Start time (complex clocks allowed).
        y: State.
        h: Step.

    Returns:
        The new state; ``y`` itself is not modified.
    """
    y = np.asarray(y, dtype=complex)
    if h == 0:
        return y.copy()
    k = rk_stages(tableau, f, t, y, h)
    update = np.zeros_like(y)
    for b, kj in zip(tableau.b, k):
        if b != 0:
            update = update + b * kj
    return y + h * update
