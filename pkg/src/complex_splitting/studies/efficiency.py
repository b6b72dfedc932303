"""Work-precision summaries: which methods buy accuracy most cheaply."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..models.study import StudyResult, StudyRow


class EfficiencyEntry(BaseModel):
    """A method at its smallest step."""

    model_config = ConfigDict(frozen=True)

    method: str
    design_order: int
    dt: float
    error: float
    rhs_evals_total: int
    wall_seconds: float


class EfficiencyComparison(BaseModel):
    """Higher-order method against a lower-order one at the latter's cost."""

    model_config = ConfigDict(frozen=True)

    higher: str
    lower: str
    cost: int
    higher_error: float | None
    lower_error: float

    @property
    def higher_wins(self) -> bool:
        """Whether the higher-order method is more accurate at equal cost."""
        return self.higher_error is not None and self.higher_error < self.lower_error


class EfficiencyReport(BaseModel):
    """Tightest-rung entries and pairwise comparisons."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[EfficiencyEntry, ...]
    comparisons: tuple[EfficiencyComparison, ...]

    @property
    def higher_order_wins(self) -> bool:
        """Whether every higher-order method beats every lower-order one."""
        return bool(self.comparisons) and all(c.higher_wins for c in self.comparisons)


def error_at_cost(rows: list[StudyRow], cost: float) -> float | None:
    """Error predicted at ``cost`` evaluations by a log-log fit of error against cost.

    Returns:
        The interpolated (or extrapolated) error, or None with fewer than two
        usable rows.
    """
    usable = [r for r in rows if r.fit_usable and r.rhs_evals_total > 0]
    if len(usable) < 2:
        return None
    slope, intercept = np.polyfit(
        np.log([r.rhs_evals_total for r in usable]),
        np.log([r.error for r in usable]),
        1,
    )
    return float(math.exp(intercept + slope * math.log(cost)))


def efficiency_report(result: StudyResult, design_orders: dict[str, int]) -> EfficiencyReport:
    """Compare methods of different design order at equal cost.

    For every pair of orders p > q, the order-p method's error is read off
    its work-precision line at the cost of the order-q method's smallest step.

    Args:
        result: Study result.
        design_orders: Design order per method id.

    Returns:
        The report.
    """
    entries: list[EfficiencyEntry] = []
    for method in result.methods:
        finite = [r for r in result.rows_for(method) if not r.blew_up]
        if not finite:
            continue
        tightest = min(finite, key=lambda r: r.dt)
        entries.append(
            EfficiencyEntry(
                method=method,
                design_order=design_orders[method],
                dt=tightest.dt,
                error=tightest.error,
                rhs_evals_total=tightest.rhs_evals_total,
                wall_seconds=tightest.wall_seconds,
            )
        )

    comparisons = [
        EfficiencyComparison(
            higher=high.method,
            lower=low.method,
            cost=low.rhs_evals_total,
            higher_error=error_at_cost(result.rows_for(high.method), low.rhs_evals_total),
            lower_error=low.error,
        )
        for high in entries
        for low in entries
        if high.design_order > low.design_order
    ]
    return EfficiencyReport(entries=tuple(entries), comparisons=tuple(comparisons))


def eval_count_parity(first: StudyResult, second: StudyResult) -> bool:
    """Whether two studies spent identical per-operator evaluations row for row."""
    left = {(r.method, r.dt): r.rhs_evals for r in first.rows}
    right = {(r.method, r.dt): r.rhs_evals for r in second.rows}
    return left == right


def wall_time_ratio(first: StudyResult, second: StudyResult) -> float:
    """Total wall time of ``first`` over that of ``second``."""
    denominator = sum(r.wall_seconds for r in second.rows)
    if denominator == 0:
        return math.inf
    return sum(r.wall_seconds for r in first.rows) / denominator


class FormComparison(BaseModel):
    """Complex against realified solves of the same study."""

    model_config = ConfigDict(frozen=True)

    complex_problem: str
    realified_problem: str
    eval_parity: bool
    wall_time_ratio: float

    @property
    def complex_not_slower(self) -> bool:
        """Whether the complex form took no more wall time."""
        return self.wall_time_ratio <= 1.0


def compare_forms(
    complex_result: StudyResult,
    realified_result: StudyResult,
    complex_problem: str = "complex-ode",
    realified_problem: str = "complex-ode-real",
) -> FormComparison:
    """Evaluation parity and wall-time ratio (complex over realified)."""
    return FormComparison(
        complex_problem=complex_problem,
        realified_problem=realified_problem,
        eval_parity=eval_count_parity(complex_result, realified_result),
        wall_time_ratio=wall_time_ratio(complex_result, realified_result),
    )
