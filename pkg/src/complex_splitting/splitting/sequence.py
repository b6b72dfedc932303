"""Conversion between stage tables and flat flow sequences."""

from collections.abc import Iterable

from ..core.exceptions import MethodDefinitionError
from ..models.method import FlowSequence, MethodTable
from .order import order_residuals


def merge_flows(n_operators: int, flows: Iterable[tuple[int, complex]]) -> FlowSequence:
    """Bring raw (operator, coefficient) pairs into merged form.

    Zero coefficients are dropped and neighbouring flows of the same operator
    are summed; a sum that cancels to zero disappears and may expose a new
    pair of neighbours to merge.

    Args:
        n_operators: Number of operators N.
        flows: Pairs in application order, operator indices 1..N.

    Returns:
        The merged sequence.
    """
    merged: list[tuple[int, complex]] = []
    for index, coeff in flows:
        coeff = complex(coeff)
        if coeff == 0:
            continue
        if merged and merged[-1][0] == index:
            total = merged[-1][1] + coeff
            merged.pop()
            if total != 0:
                merged.append((index, total))
        else:
            merged.append((index, coeff))
    return FlowSequence(n_operators=n_operators, items=merged)


def to_sequence(table: MethodTable) -> FlowSequence:
    """Flatten a table: stage by stage, operators 1..N within each stage."""
    return merge_flows(
        table.n_operators,
        ((ell, coeff) for row in table.stages for ell, coeff in enumerate(row, 1)),
    )


def from_sequence(
    sequence: FlowSequence,
    name: str = "sequence",
    design_order: int | None = None,
) -> MethodTable:
    """Pack a sequence greedily into stages.

    A new stage starts whenever the next operator index does not exceed the
    previous one.

    Args:
        sequence: Merged flow sequence.
        name: Name of the resulting table.
        design_order: Order to record; computed from the order conditions when None.

    Returns:
        The packed table.

    Raises:
        MethodDefinitionError: If the sequence is empty.
    """
    if not sequence.items:
        raise MethodDefinitionError("cannot pack an empty flow sequence into a table")

    n = sequence.n_operators
    stages: list[list[complex]] = []
    row = [0j] * n
    previous: int | None = None
    for index, coeff in sequence.items:
        if previous is not None and index <= previous:
            stages.append(row)
            row = [0j] * n
        row[index - 1] = coeff
        previous = index
    stages.append(row)

    if design_order is None:
        provisional = MethodTable(name=name, n_operators=n, stages=stages, design_order=1)
        design_order = max(1, order_residuals(provisional).satisfied_through)
    return MethodTable(name=name, n_operators=n, stages=stages, design_order=design_order)


def simplify(table: MethodTable) -> MethodTable:
    """Canonical packing of a table; applies exactly the same sub-flows."""
    return from_sequence(to_sequence(table), name=table.name, design_order=table.design_order)


def concatenate(
    first: MethodTable, second: MethodTable, name: str, design_order: int
) -> MethodTable:
    """Run ``first`` then ``second`` within one step (stages appended)."""
    if first.n_operators != second.n_operators:
        raise MethodDefinitionError(
            f"cannot concatenate {first.n_operators}-split and {second.n_operators}-split tables"
        )
    return MethodTable(
        name=name,
        n_operators=first.n_operators,
        stages=first.stages + second.stages,
        design_order=design_order,
    )
