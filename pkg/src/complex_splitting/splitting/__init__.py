"""Construction, transformation and validation of N-split method tables."""

from .composition import clt3, compose, compose_chain, composition_sigma, cstrang3
from .generators import clt2, lie_trotter, strang, two_split_family
from .order import (
    c_recursion,
    has_positive_real_parts,
    max_argument,
    min_real_part,
    order_residuals,
    solve_two_stage,
    verify_design_order,
)
from .sequence import concatenate, from_sequence, merge_flows, simplify, to_sequence

__all__ = [
    "c_recursion",
    "clt2",
    "clt3",
    "compose",
    "compose_chain",
    "composition_sigma",
    "concatenate",
    "cstrang3",
    "from_sequence",
    "has_positive_real_parts",
    "lie_trotter",
    "max_argument",
    "merge_flows",
    "min_real_part",
    "order_residuals",
    "simplify",
    "solve_two_stage",
    "strang",
    "to_sequence",
    "two_split_family",
    "verify_design_order",
]
