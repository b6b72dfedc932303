"""CSV and SVG artifacts of study results."""

from .base import BaseArtifactWriter
from .csv_file import (
    CsvWriter,
    parse_study_csv,
    read_study_csv,
    render_study_csv,
    study_columns,
)
from .svg_file import SvgWriter, emit_svg

__all__ = [
    "BaseArtifactWriter",
    "CsvWriter",
    "SvgWriter",
    "emit_svg",
    "parse_study_csv",
    "read_study_csv",
    "render_study_csv",
    "study_columns",
]
