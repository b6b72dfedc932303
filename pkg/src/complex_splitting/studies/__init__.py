"""Studies: convergence, work-precision, BCH checks and order verification."""

from .bch_check import RATIO_RANGE, BchCheckReport, run_bch_check
from .efficiency import (
    EfficiencyComparison,
    EfficiencyEntry,
    EfficiencyReport,
    FormComparison,
    compare_forms,
    efficiency_report,
    error_at_cost,
    eval_count_parity,
    wall_time_ratio,
)
from .runner import StudyRunner, build_problem, paired_problem, steps_for
from .verification import VerificationReport, verify_method

__all__ = [
    "RATIO_RANGE",
    "BchCheckReport",
    "EfficiencyComparison",
    "EfficiencyEntry",
    "EfficiencyReport",
    "FormComparison",
    "StudyRunner",
    "VerificationReport",
    "build_problem",
    "compare_forms",
    "efficiency_report",
    "error_at_cost",
    "eval_count_parity",
    "paired_problem",
    "run_bch_check",
    "steps_for",
    "verify_method",
    "wall_time_ratio",
]
