"""Benchmark problems and error metrics."""

from .adr import AdrConfig, AdrProblem, Grid2D, adr_initial, adr_split
from .base import BenchmarkProblem
from .complex_ode import (
    ComplexOdeConfig,
    ComplexOdeProblem,
    complex_split,
    from_realified,
    realified_split,
    to_realified,
)
from .factory import PROBLEMS, create_problem
from .metrics import l2_error, mrms_error

__all__ = [
    "PROBLEMS",
    "AdrConfig",
    "AdrProblem",
    "BenchmarkProblem",
    "ComplexOdeConfig",
    "ComplexOdeProblem",
    "Grid2D",
    "adr_initial",
    "adr_split",
    "complex_split",
    "create_problem",
    "from_realified",
    "l2_error",
    "mrms_error",
    "realified_split",
    "to_realified",
]
