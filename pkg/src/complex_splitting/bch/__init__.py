"""Numeric BCH oracle and empirical order measurement on matrix problems."""

from .defect import (
    OrderEstimate,
    empirical_order,
    infer_design_order,
    measure_order,
    splitting_defect,
    step_propagator,
)
from .expansion import (
    BchTerms,
    bch_terms,
    error_ratios,
    halving_ratios,
    pairwise_bch_terms,
    product_of_exponentials,
    truncation_error,
    truncation_errors,
)
from .matrices import MatrixSet, commutator, expm, nilpotent_expm, random_matrix_set

__all__ = [
    "BchTerms",
    "MatrixSet",
    "OrderEstimate",
    "bch_terms",
    "commutator",
    "empirical_order",
    "error_ratios",
    "expm",
    "halving_ratios",
    "infer_design_order",
    "measure_order",
    "nilpotent_expm",
    "pairwise_bch_terms",
    "product_of_exponentials",
    "random_matrix_set",
    "splitting_defect",
    "step_propagator",
    "truncation_error",
    "truncation_errors",
]
