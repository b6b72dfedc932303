"""Method tables as YAML text documents."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from ..bch.defect import infer_design_order
from ..core.exceptions import ArtifactError, MethodDefinitionError
from ..models.method import MethodTable

logger = logging.getLogger(__name__)

_MAX_DENOMINATOR = 1000


def dump_method(table: MethodTable) -> str:
    """Render a table as YAML.

    Coefficients are [re, im] pairs; parts that are exactly a small rational
    are written as "p/q" strings, everything else as round-trip floats.
    """
    document = {
        "name": table.name,
        "n_operators": table.n_operators,
        "design_order": table.design_order,
        "stages": [[[_render(c.real), _render(c.imag)] for c in row] for row in table.stages],
    }
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def load_method(source: str | Path, trust_order: bool = False) -> MethodTable:
    """Parse a table from YAML text or a file path.

    The design order is recomputed unless ``trust_order`` is set; a mismatch
    with the stored value is logged.

    Raises:
        ArtifactError: If the file cannot be read or parsed.
        MethodDefinitionError: If required fields are missing or the table
            fails the order conditions it claims.
    """
    text = _read(source)
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ArtifactError(f"Invalid method document: {e}") from e
    if not isinstance(document, dict) or "stages" not in document:
        raise MethodDefinitionError("method document needs a 'stages' field")

    stages = [
        [complex(_parse(part[0]), _parse(part[1])) for part in row] for row in document["stages"]
    ]
    if not stages:
        raise MethodDefinitionError("method document has no stages")
    n_operators = int(document.get("n_operators", len(stages[0])))
    stored_order = int(document.get("design_order", 1))
    try:
        table = MethodTable(
            name=str(document.get("name", "loaded")),
            n_operators=n_operators,
            stages=stages,
            design_order=max(1, stored_order) if trust_order else 1,
        )
    except ValidationError as e:
        raise MethodDefinitionError(f"Invalid method table: {e}") from e
    if trust_order:
        return table

    computed = infer_design_order(table)
    if computed != stored_order:
        logger.warning(
            "%s: stored design_order %d, computed %d; using computed",
            table.name,
            stored_order,
            computed,
        )
    return table.model_copy(update={"design_order": computed})


def _read(source: str | Path) -> str:
    if isinstance(source, Path) or (
        "\n" not in source and source.endswith((".yaml", ".yml"))
    ):
        try:
            return Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"Failed to read method file {source}: {e}") from e
    return source


def _render(value: float) -> Any:
    if value == int(value):
        return int(value)
    frac = Fraction(value).limit_denominator(_MAX_DENOMINATOR)
    if float(frac) == value:
        return f"{frac.numerator}/{frac.denominator}"
    return float(repr(value))


def _parse(value: Any) -> float:
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)
