"""Log-log convergence and work-precision charts as SVG."""

import io
import math
from pathlib import Path
from typing import Literal

import matplotlib
from matplotlib.figure import Figure

from ..core.exceptions import ArtifactError, RenderError
from ..models.study import StudyResult
from .base import BaseArtifactWriter

ChartKind = Literal["convergence", "work-precision"]

# Fixed salt and no date: identical input renders identical bytes.
_SVG_RC = {
    "svg.hashsalt": "complex-splitting",
    "svg.fonttype": "path",
    "figure.figsize": (7.2, 4.8),
    "font.size": 11,
}


def _guide_orders(slopes: dict[str, float | None]) -> list[int]:
    orders = {min(6, max(1, round(s))) for s in slopes.values() if s is not None}
    return sorted(orders) or [1]


def emit_svg(result: StudyResult, kind: ChartKind = "convergence") -> str:
    """Render a study as an SVG document.

    Convergence charts plot error against dt, work-precision charts error
    against total RHS evaluations. Each method is one line with
    ``gid="series-<method>"``; dashed guides of slope p carry ``gid="guide-p<p>"``.

    Raises:
        RenderError: If the result is empty or a method has fewer than two
            finite points.
    """
    if kind not in ("convergence", "work-precision"):
        raise RenderError(f"Unknown chart kind: {kind}")
    if not result.rows:
        raise RenderError("cannot render an empty study result")

    series: dict[str, tuple[list[float], list[float]]] = {}
    for method in result.methods:
        rows = [r for r in result.rows_for(method) if math.isfinite(r.error) and r.error > 0]
        if len(rows) < 2:
            raise RenderError(f"{method}: at least two finite points are needed, got {len(rows)}")
        xs = [r.dt if kind == "convergence" else float(r.rhs_evals_total) for r in rows]
        series[method] = (xs, [r.error for r in rows])

    slopes = result.slopes
    with matplotlib.rc_context(_SVG_RC):
        fig = Figure()
        ax = fig.add_subplot()
        for method, (xs, ys) in series.items():
            slope = slopes[method]
            label = method if slope is None else f"{method} (rate = {slope:.2f})"
            ax.loglog(xs, ys, marker="o", label=label, gid=f"series-{method}")

        # guides start from the first method's coarsest point
        xs, ys = series[result.methods[0]]
        anchor_index = max(range(len(xs)), key=lambda i: ys[i])
        x0, y0 = xs[anchor_index], ys[anchor_index]
        x_range = [min(min(x) for x, _ in series.values()), max(max(x) for x, _ in series.values())]
        for p in _guide_orders(slopes):
            exponent = p if kind == "convergence" else -p
            guide = [y0 * (x / x0) ** exponent for x in x_range]
            ax.loglog(
                x_range,
                guide,
                linestyle="--",
                linewidth=0.8,
                color="0.5",
                label=f"order {p}",
                gid=f"guide-p{p}",
            )

        ax.set_xlabel("dt" if kind == "convergence" else "RHS evaluations")
        ax.set_ylabel("error")
        ax.set_title("Order of convergence" if kind == "convergence" else "Work precision")
        ax.grid(linestyle="--", linewidth=0.5)
        ax.legend(loc="best")

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


class SvgWriter(BaseArtifactWriter):
    """Writes convergence or work-precision charts."""

    def __init__(self, output_dir: Path | str, kind: ChartKind = "convergence"):
        """Initialize the writer.

        Args:
            output_dir: Directory to write into (created if missing).
            kind: Chart kind.
        """
        self._output_dir = Path(output_dir)
        self._kind = kind
        self._output_dir.mkdir(parents=True, exist_ok=True)

    @property
    def name(self) -> str:
        return "SVG"

    def write(self, result: StudyResult, stem: str) -> Path:
        """Write ``<stem>.svg``."""
        filepath = self._output_dir / f"{stem}.svg"
        try:
            filepath.write_text(emit_svg(result, self._kind), encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"Failed to write SVG file: {e}") from e
        return filepath
