"""Splitting defects and empirical orders on linear (matrix) problems."""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.exceptions import MethodDefinitionError, RoundOffError
from ..models.method import MethodTable
from ..numerics import fit_loglog_slope
from ..splitting.order import order_residuals
from ..splitting.sequence import to_sequence
from .expansion import ROUND_OFF_FLOOR
from .matrices import MatrixSet, expm, random_matrix_set

logger = logging.getLogger(__name__)

DEFAULT_T_VALUES = (0.05, 0.025, 0.0125, 0.00625)


class OrderEstimate(BaseModel):
    """Fitted order of a method from its one-step defects."""

    model_config = ConfigDict(frozen=True)

    method: str
    t_values: tuple[float, ...]
    defects: tuple[float, ...]
    used: tuple[bool, ...]
    order: float


def step_propagator(table: MethodTable, ms: MatrixSet, t: complex) -> np.ndarray:
    """Matrix of one splitting step on y' = (X_1 + ... + X_N) y.

    Sub-flows exp(a t X_l) are applied in stage order, so later flows
    multiply from the left.

    Raises:
        MethodDefinitionError: If the table and matrix set differ in N.
    """
    if table.n_operators != ms.n_operators:
        raise MethodDefinitionError(
            f"{table.name} is {table.n_operators}-split but the matrix set has "
            f"{ms.n_operators} matrices"
        )
    result = np.eye(ms.dimension, dtype=complex)
    for index, coeff in to_sequence(table).items:
        result = expm(coeff * t * ms.matrices[index - 1]) @ result
    return result


def splitting_defect(table: MethodTable, ms: MatrixSet, t: float) -> float:
    """Frobenius distance between one splitting step and exp(t sum X_l)."""
    exact = expm(t * ms.total)
    return float(np.linalg.norm(step_propagator(table, ms, t) - exact, "fro"))


def measure_order(
    table: MethodTable,
    ms: MatrixSet,
    t_values: tuple[float, ...] | list[float] = DEFAULT_T_VALUES,
) -> OrderEstimate:
    """Fit log(defect) against log(t); an order-p method has slope p + 1.

    Defects at or below 1e-13 are round-off dominated and left out.

    Raises:
        ValueError: If fewer than three strictly decreasing t values are given.
        RoundOffError: If fewer than two defects are above the round-off floor.
    """
    ts = [float(t) for t in t_values]
    if len(ts) < 3 or any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("measure_order needs at least three strictly decreasing t values")

    defects = [splitting_defect(table, ms, t) for t in ts]
    used = [d > ROUND_OFF_FLOOR for d in defects]
    points = [(t, d) for t, d, ok in zip(ts, defects, used) if ok]
    if len(points) < len(ts):
        logger.warning(
            "%s: %d defect(s) at round-off level dropped from the order fit",
            table.name,
            len(ts) - len(points),
        )
    if len(points) < 2:
        raise RoundOffError(
            f"{table.name}: defects are round-off dominated, no order can be fitted"
        )

    slope = fit_loglog_slope([p[0] for p in points], [p[1] for p in points])
    return OrderEstimate(
        method=table.name,
        t_values=tuple(ts),
        defects=tuple(defects),
        used=tuple(used),
        order=slope - 1,
    )


def empirical_order(
    table: MethodTable,
    ms: MatrixSet,
    t_values: tuple[float, ...] | list[float] = DEFAULT_T_VALUES,
) -> float:
    """Fitted order of ``table`` on the linear problem given by ``ms``."""
    return measure_order(table, ms, t_values).order


def infer_design_order(table: MethodTable, seed: int = 20240917, slack: float = 0.25) -> int:
    """Compute the order of a table instead of trusting its label.

    Orders one and two come from the order conditions; beyond that the
    order is measured on a seeded random matrix problem.

    Args:
        table: Table whose ``design_order`` is ignored.
        seed: Seed of the matrix problem.
        slack: Allowed shortfall of the fitted order.

    Returns:
        The computed order (at least 1).
    """
    symbolic = order_residuals(table).satisfied_through
    if symbolic < 2 or table.n_operators < 2:
        return max(1, symbolic)

    ms = random_matrix_set(table.n_operators, seed=seed)
    try:
        fitted = empirical_order(table, ms)
    except RoundOffError:
        logger.warning(
            "%s: defect at round-off level, order taken from the order conditions", table.name
        )
        return 2
    return max(2, math.floor(fitted + slack))
