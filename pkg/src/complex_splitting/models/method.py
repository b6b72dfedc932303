"""Splitting method data models."""

import cmath
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Bound on the p = 1, 2 residuals behind a claimed design order
CLAIM_TOLERANCE = 1e-10


def _to_complex(value: Any) -> complex:
    return complex(value)


class MethodTable(BaseModel):
    """Stage coefficients of an s-stage, N-split operator-splitting method.

    Row k holds the step fractions of stage k; within a stage the operators
    are applied in increasing index order, stage 1 first.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    n_operators: int = Field(ge=1)
    stages: tuple[tuple[complex, ...], ...]
    design_order: int = Field(ge=1)

    @field_validator("stages", mode="before")
    @classmethod
    def _coerce_stages(cls, value: Any) -> tuple[tuple[complex, ...], ...]:
        return tuple(tuple(_to_complex(c) for c in row) for row in value)

    @model_validator(mode="after")
    def _check_shape(self) -> "MethodTable":
        if not self.stages:
            raise ValueError("a method table needs at least one stage")
        for k, row in enumerate(self.stages, 1):
            if len(row) != self.n_operators:
                raise ValueError(
                    f"stage {k} has {len(row)} coefficients, expected {self.n_operators}"
                )
        return self

    @model_validator(mode="after")
    def _check_claimed_order(self) -> "MethodTable":
        # Orders above two are only measurable; p = 1, 2 are necessary for them.
        alpha = self.array
        first = np.abs(alpha.sum(axis=0) - 1)
        if first.max() >= CLAIM_TOLERANCE:
            raise ValueError(
                f"{self.name}: column sums miss 1 by {first.max():.2e}, "
                f"so design_order {self.design_order} cannot hold"
            )
        if self.design_order >= 2 and self.n_operators > 1:
            partial = np.cumsum(alpha, axis=0) - alpha
            # second[l1, l2] = sum_k a_k[l1] sum_{j<k} a_j[l2]
            second = alpha.T @ partial
            upper = np.triu_indices(self.n_operators, k=1)
            gap = float(np.abs(second[upper] - 0.5).max())
            if gap >= CLAIM_TOLERANCE:
                raise ValueError(
                    f"{self.name}: second-order conditions miss by {gap:.2e}, "
                    f"so design_order {self.design_order} cannot hold"
                )
        return self

    @property
    def n_stages(self) -> int:
        """Get number of stages s."""
        return len(self.stages)

    @property
    def array(self) -> np.ndarray:
        """Get the s x N coefficient array (a fresh copy)."""
        return np.array(self.stages, dtype=complex)

    def conjugate(self, name: str | None = None) -> "MethodTable":
        """Elementwise complex conjugate of the table."""
        return self.model_copy(
            update={
                "name": name or f"{self.name}-conj",
                "stages": tuple(tuple(c.conjugate() for c in row) for row in self.stages),
            }
        )

    def scaled(self, factor: complex) -> "MethodTable":
        """Table with every coefficient multiplied by ``factor``."""
        return self.model_copy(
            update={"stages": tuple(tuple(factor * c for c in row) for row in self.stages)}
        )

    def nonzero_count(self) -> int:
        """Number of sub-flows with a nonzero coefficient."""
        return sum(1 for row in self.stages for c in row if c != 0)


class FlowSequence(BaseModel):
    """Flattened sub-flows in application order, in merged form.

    Items are (operator index in 1..N, coefficient) pairs.
    """

    model_config = ConfigDict(frozen=True)

    n_operators: int = Field(ge=1)
    items: tuple[tuple[int, complex], ...]

    @field_validator("items", mode="before")
    @classmethod
    def _coerce_items(cls, value: Any) -> tuple[tuple[int, complex], ...]:
        return tuple((int(index), _to_complex(coeff)) for index, coeff in value)

    @model_validator(mode="after")
    def _check_merged(self) -> "FlowSequence":
        previous: int | None = None
        for position, (index, coeff) in enumerate(self.items):
            if not 1 <= index <= self.n_operators:
                raise ValueError(
                    f"item {position}: operator index {index} outside 1..{self.n_operators}"
                )
            if coeff == 0:
                raise ValueError(f"item {position}: zero coefficient")
            if index == previous:
                raise ValueError(f"item {position}: repeats operator {index} (not merged)")
            previous = index
        return self

    def __len__(self) -> int:
        return len(self.items)


class CompositionPair(BaseModel):
    """Conjugate coefficients of a two-term composition raising order to ``p``."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=2)
    sigma1: complex
    sigma2: complex

    @field_validator("sigma1", "sigma2", mode="before")
    @classmethod
    def _coerce_sigma(cls, value: Any) -> complex:
        return _to_complex(value)

    @model_validator(mode="after")
    def _check_conjugate(self) -> "CompositionPair":
        if abs(self.sigma2 - self.sigma1.conjugate()) > 1e-15:
            raise ValueError("sigma2 must be the complex conjugate of sigma1")
        return self

    def condition_residuals(self) -> tuple[float, float]:
        """Residuals |s1 + s2 - 1| and |s1**p + s2**p|.

        The base method has order p - 1, so the vanishing power sum is the
        p-th one.
        """
        return (
            abs(self.sigma1 + self.sigma2 - 1),
            abs(self.sigma1**self.p + self.sigma2**self.p),
        )

    def satisfies_conditions(self, tol: float = 1e-14) -> bool:
        """Whether the pair lifts an order p-1 method to order p."""
        return all(r < tol for r in self.condition_residuals())

    @property
    def argument(self) -> float:
        """Phase of sigma1."""
        return cmath.phase(self.sigma1)


class OrderCondition(BaseModel):
    """One order condition evaluated on a table."""

    model_config = ConfigDict(frozen=True)

    order: int
    label: str
    value: complex
    target: float
    residual: float


class OrderReport(BaseModel):
    """Order-condition residuals for p = 1, 2 plus the c1/c2 recursion values."""

    model_config = ConfigDict(frozen=True)

    method: str
    n_operators: int
    conditions: tuple[OrderCondition, ...]
    c1: tuple[complex, ...]
    c2: tuple[tuple[complex, ...], ...]
    recursion_gap: float
    tolerance: float
    satisfied_through: int

    def for_order(self, order: int) -> list[OrderCondition]:
        """Conditions of one order."""
        return [c for c in self.conditions if c.order == order]

    def residuals(self, order: int) -> list[float]:
        """Residual magnitudes of one order."""
        return [c.residual for c in self.for_order(order)]

    def max_residual(self, order: int | None = None) -> float:
        """Largest residual, overall or for one order."""
        selected = self.conditions if order is None else self.for_order(order)
        return max((c.residual for c in selected), default=0.0)
