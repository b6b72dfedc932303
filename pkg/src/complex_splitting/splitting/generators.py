"""Generators for the classical and complex N-split methods."""

from ..core.exceptions import MethodDefinitionError
from ..models.method import MethodTable


def lie_trotter(n_operators: int) -> MethodTable:
    """One stage, unit step in every operator (first order).

    Args:
        n_operators: Number of operators N.

    Returns:
        The Lie-Trotter table [[1, ..., 1]].

    Raises:
        MethodDefinitionError: If N < 1.
    """
    _require_arity(n_operators, 1, "lie_trotter")
    return MethodTable(
        name="lt",
        n_operators=n_operators,
        stages=[[1] * n_operators],
        design_order=1,
    )


def strang(n_operators: int) -> MethodTable:
    """Strang splitting packed into N stages (second order).

    Half steps in operators 1..N-1, a full step in N, then the half steps
    back down to operator 1. Stage 1 is (1/2, ..., 1/2, 1) and stage k > 1
    carries a single 1/2 in column N-k+1.

    Args:
        n_operators: Number of operators N.

    Returns:
        The canonical Strang table; [[1]] when N = 1.
    """
    _require_arity(n_operators, 1, "strang")
    if n_operators == 1:
        return MethodTable(name="strang", n_operators=1, stages=[[1]], design_order=2)

    stages = [[0.5] * (n_operators - 1) + [1.0]]
    for k in range(2, n_operators + 1):
        row = [0.0] * n_operators
        row[n_operators - k] = 0.5
        stages.append(row)
    return MethodTable(name="strang", n_operators=n_operators, stages=stages, design_order=2)


def clt2(n_operators: int, conjugate: bool = False) -> MethodTable:
    """Complex Lie-Trotter-2: two Lie-Trotter sweeps over complex steps.

    Stage 1 uses 1/2 + i/2 in every operator and stage 2 uses 1/2 - i/2
    (swapped when ``conjugate`` is set, giving CLT2*).

    Args:
        n_operators: Number of operators N (at least 2).
        conjugate: Return the conjugate method.

    Returns:
        The two-stage, second-order table.
    """
    _require_arity(n_operators, 2, "clt2")
    gamma = complex(0.5, -0.5) if conjugate else complex(0.5, 0.5)
    return MethodTable(
        name="clt2-conj" if conjugate else "clt2",
        n_operators=n_operators,
        stages=[[gamma] * n_operators, [gamma.conjugate()] * n_operators],
        design_order=2,
    )


def two_split_family(b: complex) -> MethodTable:
    """One-parameter family of two-stage, second-order 2-split methods.

    alpha_1 = ((2b-1)/(2b-2), 1-b), alpha_2 = (1/(2-2b), b). The second
    entry of the first column is the sign that makes the column sum to one;
    b = 1/2 - i/2 recovers CLT2.

    Args:
        b: Free parameter, any complex value except 1.

    Returns:
        The 2 x 2 table for this member of the family.
    """
    b = complex(b)
    if b == 1:
        raise MethodDefinitionError("two_split_family is singular at b = 1")
    return MethodTable(
        name=f"family2({_format_parameter(b)})",
        n_operators=2,
        stages=[
            [(2 * b - 1) / (2 * b - 2), 1 - b],
            [1 / (2 - 2 * b), b],
        ],
        design_order=2,
    )


def _require_arity(n_operators: int, minimum: int, method: str) -> None:
    if n_operators < minimum:
        raise MethodDefinitionError(
            f"{method} needs at least {minimum} operator(s), got N = {n_operators}"
        )


def _format_parameter(b: complex) -> str:
    if b.imag == 0:
        return f"{b.real:g}"
    return f"{b.real:g}{b.imag:+g}j"
