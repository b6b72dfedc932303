"""Study results as CSV: one row per (method, dt), fixed column order."""

import csv
import io
import math
from pathlib import Path

from ..core.exceptions import ArtifactError
from ..models.study import StudyResult, StudyRow
from .base import BaseArtifactWriter

FIXED_COLUMNS = ("method", "dt", "error", "rhs_evals_total")


def study_columns(n_operators: int) -> list[str]:
    """Header of a study CSV with N operators."""
    per_operator = [f"rhs_evals_op{ell}" for ell in range(1, n_operators + 1)]
    return [*FIXED_COLUMNS, *per_operator, "wall_seconds"]


def _number(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.16e}"


def render_study_csv(result: StudyResult) -> str:
    """CSV text of a result, rows in canonical order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(study_columns(result.n_operators))
    for row in result.rows:
        writer.writerow(
            [
                row.method,
                _number(row.dt),
                _number(row.error),
                row.rhs_evals_total,
                *row.rhs_evals,
                _number(row.wall_seconds),
            ]
        )
    return buffer.getvalue()


def parse_study_csv(text: str) -> StudyResult:
    """Parse CSV text written by :func:`render_study_csv`.

    Raises:
        ArtifactError: On a malformed header or row.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration as e:
        raise ArtifactError("empty study CSV") from e

    n_operators = len(header) - len(FIXED_COLUMNS) - 1
    if n_operators < 1 or header != study_columns(n_operators):
        raise ArtifactError(f"unexpected study CSV header: {','.join(header)}")

    rows = []
    for line_no, record in enumerate(reader, start=2):
        if not record:
            continue
        if len(record) != len(header):
            raise ArtifactError(f"line {line_no}: expected {len(header)} fields, got {len(record)}")
        try:
            rows.append(
                StudyRow(
                    method=record[0],
                    dt=float(record[1]),
                    error=float(record[2]),
                    rhs_evals_total=int(record[3]),
                    rhs_evals=tuple(int(v) for v in record[4 : 4 + n_operators]),
                    wall_seconds=float(record[-1]),
                )
            )
        except ValueError as e:
            raise ArtifactError(f"line {line_no}: {e}") from e
    return StudyResult(n_operators=n_operators, rows=rows)


def read_study_csv(path: Path | str) -> StudyResult:
    """Read a study CSV file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ArtifactError(f"Failed to read {path}: {e}") from e
    return parse_study_csv(text)


class CsvWriter(BaseArtifactWriter):
    """Writes study results as UTF-8 CSV."""

    def __init__(self, output_dir: Path | str):
        """Initialize the writer.

        Args:
            output_dir: Directory to write into (created if missing).
        """
        self._output_dir = Path(output_dir)
        self._output_dir.mkdir(parents=True, exist_ok=True)

    @property
    def name(self) -> str:
        return "CSV"

    def write(self, result: StudyResult, stem: str) -> Path:
        """Write ``<stem>.csv``."""
        filepath = self._output_dir / f"{stem}.csv"
        try:
            filepath.write_text(render_study_csv(result), encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"Failed to write CSV file: {e}") from e
        return filepath

    @property
    def output_dir(self) -> Path:
        """Get the output directory."""
        return self._output_dir
