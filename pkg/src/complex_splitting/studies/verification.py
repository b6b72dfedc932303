"""Order verification of catalog methods: symbolic for p <= 2, empirical above."""

import logging

from pydantic import BaseModel, ConfigDict

from ..bch import OrderEstimate, measure_order, random_matrix_set
from ..bch.defect import DEFAULT_T_VALUES
from ..core.exceptions import RoundOffError
from ..methods import create_method
from ..models.method import OrderReport
from ..splitting import order_residuals
from ..splitting.order import ORDER_TOLERANCE

logger = logging.getLogger(__name__)

EMPIRICAL_SLACK = 0.25
# Higher orders reach round-off on the default ladder.
HIGH_ORDER_T_VALUES = (0.2, 0.1, 0.05, 0.025)


class VerificationReport(BaseModel):
    """Outcome of verifying one method at one operator count."""

    model_config = ConfigDict(frozen=True)

    method: str
    n_operators: int
    design_order: int
    required_order: int
    report: OrderReport
    empirical: OrderEstimate | None = None
    note: str = ""

    @property
    def symbolic_passed(self) -> bool:
        """Whether the conditions up to min(required order, 2) hold."""
        return self.report.satisfied_through >= min(self.required_order, 2)

    @property
    def empirical_passed(self) -> bool | None:
        """Whether the fitted order reaches the required order; None when not measured."""
        if self.empirical is None:
            return None
        return self.empirical.order >= self.required_order - EMPIRICAL_SLACK

    @property
    def passed(self) -> bool:
        """Overall verdict."""
        return self.symbolic_passed and self.empirical_passed is not False


def verify_method(
    method_id: str,
    n_operators: int,
    tolerance: float = ORDER_TOLERANCE,
    seed: int = 20240917,
    empirical: bool | None = None,
    order: int | None = None,
) -> VerificationReport:
    """Verify the design order of a catalog method.

    Args:
        method_id: Catalog id.
        n_operators: Operator count N.
        tolerance: Residual bound for the p = 1, 2 conditions.
        seed: Seed of the matrix problem for the empirical fit.
        empirical: Force (True) or skip (False) the empirical fit; by
            default it runs for design orders above two.

    Returns:
        The verification report.
    """
    table = create_method(method_id, n_operators)
    report = order_residuals(table, tolerance)
    required = order or table.design_order
    run_empirical = required > 2 if empirical is None else empirical

    estimate = None
    note = ""
    if run_empirical and table.n_operators >= 2:
        ms = random_matrix_set(table.n_operators, seed=seed)
        t_values = DEFAULT_T_VALUES if required <= 3 else HIGH_ORDER_T_VALUES
        try:
            estimate = measure_order(table, ms, t_values)
        except RoundOffError as e:
            note = str(e)
            logger.warning("%s", e)

    return VerificationReport(
        method=table.name,
        n_operators=table.n_operators,
        design_order=table.design_order,
        required_order=required,
        report=report,
        empirical=estimate,
        note=note,
    )
