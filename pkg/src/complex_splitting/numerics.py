"""Small numerical helpers shared across packages."""

import numpy as np


def fit_loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs).

    Args:
        xs: Positive abscissae (step sizes).
        ys: Positive ordinates (errors or defects).

    Returns:
        The fitted slope.
    """
    x = np.log(np.asarray(xs, dtype=float))
    y = np.log(np.asarray(ys, dtype=float))
    if x.size < 2:
        raise ValueError("a slope fit needs at least two points")
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def geometric_ladder(dt0: float, ratio: float, rungs: int) -> list[float]:
    """Strictly decreasing step sizes dt0, dt0/ratio, ..."""
    if dt0 <= 0 or ratio <= 1 or rungs < 1:
        raise ValueError(f"invalid ladder dt0={dt0}, ratio={ratio}, rungs={rungs}")
    return [dt0 / ratio**k for k in range(rungs)]
