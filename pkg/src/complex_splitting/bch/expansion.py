"""The N-term Baker-Campbell-Hausdorff expansion through third order."""

from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.exceptions import MatrixSetError
from .matrices import MatrixSet, commutator, expm

ROUND_OFF_FLOOR = 1e-13


class BchTerms(BaseModel):
    """Coefficients of Z(t) = log(exp(tX_1) ... exp(tX_N)).

    Z(t) = t Z1 + t^2 Z2 + t^3 Z3 + O(t^4).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    z1: np.ndarray
    z2: np.ndarray
    z3: np.ndarray

    def exponent(self, t: complex) -> np.ndarray:
        """Truncated exponent t Z1 + t^2 Z2 + t^3 Z3."""
        return t * self.z1 + t**2 * self.z2 + t**3 * self.z3

    def max_difference(self, other: "BchTerms") -> float:
        """Largest elementwise difference over all three terms."""
        return max(
            float(np.max(np.abs(a - b)))
            for a, b in ((self.z1, other.z1), (self.z2, other.z2), (self.z3, other.z3))
        )


def bch_terms(ms: MatrixSet) -> BchTerms:
    """Closed-form N-term BCH coefficients.

    Z1 = sum X_i
    Z2 = 1/2 sum_{i<j} [X_i, X_j]
    Z3 = 1/12 sum_{i != j} [X_i, [X_i, X_j]]
         + 1/6 sum_{i<j<k} ([X_i, [X_j, X_k]] + [[X_i, X_j], X_k])

    Raises:
        MatrixSetError: If N < 2.
    """
    if ms.n_operators < 2:
        raise MatrixSetError("the BCH expansion needs at least two matrices")

    x = ms.matrices
    n = ms.n_operators
    z1 = np.sum(x, axis=0)
    z2 = np.zeros_like(z1)
    z3 = np.zeros_like(z1)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            z3 += commutator(x[i], commutator(x[i], x[j])) / 12
            if j > i:
                z2 += commutator(x[i], x[j]) / 2
                for k in range(j + 1, n):
                    z3 += (
                        commutator(x[i], commutator(x[j], x[k]))
                        + commutator(commutator(x[i], x[j]), x[k])
                    ) / 6
    return BchTerms(z1=z1, z2=z2, z3=z3)


def pairwise_bch_terms(ms: MatrixSet) -> BchTerms:
    """Same coefficients by folding the two-term BCH formula left to right.

    With Z(t) = t C1 + t^2 C2 + t^3 C3 for the first factors, appending
    exp(tX) gives
        C1 + X,  C2 + [C1, X]/2,  C3 + [C2, X]/2 + ([C1, [C1, X]] + [X, [X, C1]])/12.
    """
    x = ms.matrices
    c1 = x[0].copy()
    c2 = np.zeros_like(c1)
    c3 = np.zeros_like(c1)
    for m in x[1:]:
        c1, c2, c3 = (
            c1 + m,
            c2 + commutator(c1, m) / 2,
            c3
            + commutator(c2, m) / 2
            + (commutator(c1, commutator(c1, m)) + commutator(m, commutator(m, c1))) / 12,
        )
    return BchTerms(z1=c1, z2=c2, z3=c3)


def product_of_exponentials(ms: MatrixSet, t: complex) -> np.ndarray:
    """exp(tX_1) exp(tX_2) ... exp(tX_N), multiplied left to right."""
    result = np.eye(ms.dimension, dtype=complex)
    for m in ms.matrices:
        result = result @ expm(t * m)
    return result


def truncation_error(ms: MatrixSet, t: float, terms: BchTerms | None = None) -> float:
    """Frobenius distance between exp(tZ1 + t^2 Z2 + t^3 Z3) and the exact product.

    Args:
        ms: Matrix set.
        t: Positive time.
        terms: Precomputed BCH terms (computed from ``ms`` when None).

    Returns:
        The O(t^4) truncation error.
    """
    if t <= 0:
        raise ValueError("truncation_error needs t > 0")
    terms = terms or bch_terms(ms)
    return float(np.linalg.norm(expm(terms.exponent(t)) - product_of_exponentials(ms, t), "fro"))


def truncation_errors(
    ms: MatrixSet, t0: float, refinements: int, terms: BchTerms | None = None
) -> list[float]:
    """Truncation errors at t0, t0/2, ..., t0/2**refinements."""
    terms = terms or bch_terms(ms)
    return [truncation_error(ms, t0 / 2**k, terms) for k in range(refinements + 1)]


def error_ratios(errors: Sequence[float]) -> list[float | None]:
    """Ratios of consecutive errors, coarse over fine.

    A ratio is None when either error sits at round-off (the commuting case).
    """
    ratios: list[float | None] = []
    for coarse, fine in zip(errors, errors[1:]):
        resolved = fine > ROUND_OFF_FLOOR and coarse > ROUND_OFF_FLOOR
        ratios.append(coarse / fine if resolved else None)
    return ratios


def halving_ratios(
    ms: MatrixSet, t0: float, refinements: int, terms: BchTerms | None = None
) -> list[float | None]:
    """Ratios error(t) / error(t/2) along t0, t0/2, ..."""
    return error_ratios(truncation_errors(ms, t0, refinements, terms))
