"""Study configuration and result models."""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..numerics import fit_loglog_slope

# Errors at or below this are round-off and stay out of slope fits.
ERROR_FLOOR = 1e-12


class StudyConfig(BaseModel):
    """A convergence or work-precision study."""

    model_config = ConfigDict(frozen=True)

    problem: str
    methods: tuple[str, ...] = Field(min_length=1)
    dt_values: tuple[float, ...] = Field(min_length=1)
    sub_integrator: str
    substeps_per_flow: int = Field(default=1, ge=1)
    project_real: bool = False
    abs_tol: float = Field(default=1e-13, gt=0)
    rel_tol: float = Field(default=1e-13, gt=0)
    output_dir: str = "./results"
    seed: int = 20240917
    workers: int = Field(default=1, ge=1)
    problem_options: dict[str, Any] = Field(default_factory=dict)

    @field_validator("dt_values")
    @classmethod
    def _check_ladder(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(dt <= 0 for dt in value):
            raise ValueError("step sizes must be positive")
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError("the step-size ladder must be strictly decreasing")
        return value


class StudyRow(BaseModel):
    """One (method, step size) measurement; error is inf for blown-up runs."""

    model_config = ConfigDict(frozen=True)

    method: str
    dt: float
    error: float
    rhs_evals_total: int = Field(ge=0)
    rhs_evals: tuple[int, ...]
    wall_seconds: float = Field(ge=0)

    @property
    def blew_up(self) -> bool:
        """Whether this run was aborted."""
        return math.isinf(self.error)

    @property
    def fit_usable(self) -> bool:
        """Whether the row enters slope fits."""
        return math.isfinite(self.error) and self.error > ERROR_FLOOR


class StudyResult(BaseModel):
    """All rows of a study, sorted by method then step size."""

    model_config = ConfigDict(frozen=True)

    n_operators: int = Field(ge=1)
    rows: tuple[StudyRow, ...]

    @model_validator(mode="after")
    def _sort_rows(self) -> "StudyResult":
        for row in self.rows:
            if len(row.rhs_evals) != self.n_operators:
                raise ValueError(
                    f"row {row.method} dt={row.dt} has {len(row.rhs_evals)} operator counts, "
                    f"expected {self.n_operators}"
                )
        ordered = tuple(sorted(self.rows, key=lambda r: (r.method, r.dt)))
        object.__setattr__(self, "rows", ordered)
        return self

    @property
    def methods(self) -> list[str]:
        """Method ids in canonical order."""
        return sorted({row.method for row in self.rows})

    def rows_for(self, method: str) -> list[StudyRow]:
        """Rows of one method, smallest step first."""
        return [row for row in self.rows if row.method == method]

    def slope(self, method: str) -> float | None:
        """Fitted convergence order of one method, or None with under two usable rows."""
        usable = [row for row in self.rows_for(method) if row.fit_usable]
        if len(usable) < 2:
            return None
        return fit_loglog_slope([r.dt for r in usable], [r.error for r in usable])

    @property
    def slopes(self) -> dict[str, float | None]:
        """Fitted slope per method."""
        return {method: self.slope(method) for method in self.methods}
