"""Method catalog and method file handling."""

from .catalog import BUILTIN_METHODS, MethodSummary, create_method, list_methods, summarize_method
from .serialization import dump_method, load_method

__all__ = [
    "BUILTIN_METHODS",
    "MethodSummary",
    "create_method",
    "dump_method",
    "list_methods",
    "load_method",
    "summarize_method",
]
