"""Built-in method catalog and factory."""

import re

from pydantic import BaseModel, ConfigDict

from ..core.exceptions import ConfigurationError, MethodDefinitionError
from ..models.method import MethodTable
from ..splitting import (
    clt2,
    clt3,
    compose_chain,
    cstrang3,
    has_positive_real_parts,
    lie_trotter,
    max_argument,
    min_real_part,
    strang,
    two_split_family,
)
from ..splitting.sequence import to_sequence
from .serialization import load_method

BUILTIN_METHODS = (
    "lt",
    "strang",
    "clt2",
    "clt2-conj",
    "clt3",
    "cstrang3",
    "family2:0.5-0.5j",
    "strang-p4",
    "strang-p5",
    "strang-p6",
    "clt2-p4",
)

_ARITY_SUFFIX = re.compile(r"(?P<base>.+?)-(?P<n>\d+)")
_CHAIN = re.compile(r"(?P<base>strang|clt2)-p(?P<order>\d+)")


class MethodSummary(BaseModel):
    """One catalog line."""

    model_config = ConfigDict(frozen=True)

    method_id: str
    n_operators: int
    n_stages: int
    design_order: int
    sub_flows: int
    positive_real: bool
    min_real_part: float
    max_argument: float


def create_method(method_id: str, n_operators: int) -> MethodTable:
    """Create a method table by id.

    Ids: lt, strang, clt2, clt2-conj, clt3, cstrang3, family2:<b>,
    <strang|clt2>-p<k> (composition chains), file:<path>. A trailing
    -<digits> overrides the operator count, e.g. lt-4.

    Args:
        method_id: Method identifier.
        n_operators: Operator count N of the problem.

    Returns:
        The table, named by its id.

    Raises:
        ConfigurationError: If the id is unknown.
    """
    method_id = method_id.strip()
    key = method_id.lower()

    if key.startswith("file:"):
        table = load_method(method_id[len("file:"):])
        if table.n_operators != n_operators:
            raise MethodDefinitionError(
                f"{method_id} is {table.n_operators}-split, the problem has {n_operators} operators"
            )
        return table.model_copy(update={"name": method_id})

    match = _ARITY_SUFFIX.fullmatch(key)
    if match and not key.startswith("family2:"):
        key, n_operators = match.group("base"), int(match.group("n"))

    if key == "lt":
        table = lie_trotter(n_operators)
    elif key == "strang":
        table = strang(n_operators)
    elif key == "clt2":
        table = clt2(n_operators)
    elif key == "clt2-conj":
        table = clt2(n_operators, conjugate=True)
    elif key == "clt3":
        table = clt3(n_operators)
    elif key == "cstrang3":
        table = cstrang3(n_operators)
    elif key.startswith("family2:"):
        if n_operators != 2:
            raise MethodDefinitionError(
                f"{method_id} is a 2-split method, the problem has {n_operators}"
            )
        table = two_split_family(_parse_complex(key[len("family2:"):]))
    elif chain := _CHAIN.fullmatch(key):
        base = strang(n_operators) if chain.group("base") == "strang" else clt2(n_operators)
        table = compose_chain(base, int(chain.group("order")))
    else:
        raise ConfigurationError(
            f"Unknown method: {method_id}. Supported: {', '.join(BUILTIN_METHODS)}, file:<path>"
        )
    return table.model_copy(update={"name": method_id})


def summarize_method(table: MethodTable) -> MethodSummary:
    """Catalog facts about a table."""
    return MethodSummary(
        method_id=table.name,
        n_operators=table.n_operators,
        n_stages=table.n_stages,
        design_order=table.design_order,
        sub_flows=len(to_sequence(table)),
        positive_real=has_positive_real_parts(table),
        min_real_part=min_real_part(table),
        max_argument=max_argument(table),
    )


def list_methods(n_operators: int) -> list[MethodSummary]:
    """Summaries of every built-in method for N operators."""
    summaries = []
    for method_id in BUILTIN_METHODS:
        if method_id.startswith("family2:") and n_operators != 2:
            summaries.append(summarize_method(create_method(method_id, 2)))
            continue
        summaries.append(summarize_method(create_method(method_id, n_operators)))
    return summaries


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as e:
        raise ConfigurationError(f"Invalid family parameter: {text!r}") from e
