"""Numerical check of the N-term BCH expansion."""

import logging

from pydantic import BaseModel, ConfigDict

from ..bch import (
    bch_terms,
    error_ratios,
    pairwise_bch_terms,
    random_matrix_set,
    truncation_errors,
)
from ..bch.expansion import ROUND_OFF_FLOOR

logger = logging.getLogger(__name__)

# Truncation after t^3 leaves O(t^4): halving t divides the error by ~16.
RATIO_RANGE = (12.0, 20.0)
PAIRWISE_TOLERANCE = 1e-12


class BchCheckReport(BaseModel):
    """Truncation errors, halving ratios and the pairwise cross-check."""

    model_config = ConfigDict(frozen=True)

    n_operators: int
    dimension: int
    seed: int
    commuting: bool
    t_values: tuple[float, ...]
    errors: tuple[float, ...]
    ratios: tuple[float | None, ...]
    pairwise_gap: float

    @property
    def exact(self) -> bool:
        """Whether the truncated expansion is exact (all errors at round-off)."""
        return all(e <= ROUND_OFF_FLOOR for e in self.errors)

    @property
    def passed(self) -> bool:
        """Ratios inside the expected window (or exact) and oracles agreeing."""
        if self.pairwise_gap > PAIRWISE_TOLERANCE:
            return False
        if self.exact:
            return True
        low, high = RATIO_RANGE
        return all(r is not None and low <= r <= high for r in self.ratios)


def run_bch_check(
    n_operators: int = 3,
    dimension: int = 3,
    seed: int = 20240917,
    t0: float = 0.1,
    refinements: int = 3,
    commuting: bool = False,
) -> BchCheckReport:
    """Check the expansion on a seeded random matrix set.

    Args:
        n_operators: Number of matrices N (at least 2).
        dimension: Matrix size d.
        seed: Random seed.
        t0: Largest t.
        refinements: Number of halvings of t.
        commuting: Use diagonal (commuting) matrices.

    Returns:
        The report.
    """
    ms = random_matrix_set(n_operators, dimension, seed=seed, commuting=commuting)
    terms = bch_terms(ms)
    t_values = tuple(t0 / 2**k for k in range(refinements + 1))
    errors = tuple(truncation_errors(ms, t0, refinements, terms))
    ratios = tuple(error_ratios(errors))
    gap = terms.max_difference(pairwise_bch_terms(ms))
    logger.debug(
        "BCH check N=%d d=%d seed=%d: ratios %s, gap %.2e",
        n_operators,
        dimension,
        seed,
        ratios,
        gap,
    )
    return BchCheckReport(
        n_operators=n_operators,
        dimension=dimension,
        seed=seed,
        commuting=commuting,
        t_values=t_values,
        errors=errors,
        ratios=ratios,
        pairwise_gap=gap,
    )
