"""Data models for Complex Splitting."""

from .method import CompositionPair, FlowSequence, MethodTable, OrderCondition, OrderReport
from .study import StudyConfig, StudyResult, StudyRow

__all__ = [
    "CompositionPair",
    "FlowSequence",
    "MethodTable",
    "OrderCondition",
    "OrderReport",
    "StudyConfig",
    "StudyResult",
    "StudyRow",
]
