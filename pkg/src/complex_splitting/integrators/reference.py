"""Adaptive Dormand-Prince 5(4) reference solver."""

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np

from ..core.exceptions import BlowUpError, IntegrationError, StepSizeUnderflowError
from .tableau import DOPRI54, Evaluator, rk_stages

logger = logging.getLogger(__name__)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
# PI controller exponents for an order-5 pair
ALPHA = 0.7 / 5
BETA = 0.4 / 5
MAX_STEPS = 5_000_000


class DormandPrince:
    """Error-controlled stepping of y' = f(t, y) along real time.

    Steps are clipped so the solver lands exactly on every requested time.
    """

    def __init__(
        self,
        f: Evaluator,
        t0: float,
        y0: Any,
        abs_tol: float = 1e-13,
        rel_tol: float = 1e-13,
        max_steps: int = MAX_STEPS,
    ):
        if abs_tol <= 0 or rel_tol < np.finfo(float).eps:
            raise IntegrationError(
                f"tolerances must be positive and representable, got abs={abs_tol} rel={rel_tol}"
            )
        self.f = f
        self.t = float(t0)
        self.y = np.array(y0, dtype=complex).reshape(-1)
        self.abs_tol = abs_tol
        self.rel_tol = rel_tol
        self.max_steps = max_steps
        self.accepted = 0
        self.rejected = 0
        self._h: float | None = None
        self._previous_error = 1e-4

    def _error_norm(self, y: np.ndarray, y_new: np.ndarray, err: np.ndarray) -> float:
        scale = self.abs_tol + self.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        return float(np.sqrt(np.mean((np.abs(err) / scale) ** 2)))

    def _initial_step(self, span: float) -> float:
        f0 = np.asarray(self.f(self.t, self.y), dtype=complex)
        scale = self.abs_tol + self.rel_tol * np.abs(self.y)
        d0 = float(np.sqrt(np.mean((np.abs(self.y) / scale) ** 2)))
        d1 = float(np.sqrt(np.mean((np.abs(f0) / scale) ** 2)))
        h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        return min(h, span)

    def advance_to(self, t_target: float) -> np.ndarray:
        """Integrate up to ``t_target`` (not before the current time).

        Raises:
            StepSizeUnderflowError: If the controller shrinks the step to
                round-off level (stiffness or blow-up).
            BlowUpError: If the state turns non-finite.
        """
        if t_target < self.t:
            raise IntegrationError(f"cannot integrate backwards from {self.t} to {t_target}")
        if self._h is None and t_target > self.t:
            self._h = self._initial_step(t_target - self.t)

        steps = 0
        while self.t < t_target:
            remaining = t_target - self.t
            if self._h < 1e-14 * max(1.0, abs(self.t)):
                raise StepSizeUnderflowError(
                    f"step size {self._h:.3e} underflowed at t = {self.t:.6g}; "
                    "problem stiff or blowing up"
                )
            h = min(self._h, remaining)
            steps += 1
            if steps > self.max_steps:
                raise StepSizeUnderflowError(
                    f"more than {self.max_steps} steps before t = {t_target:g}"
                )

            k = rk_stages(DOPRI54, self.f, self.t, self.y, h)
            high = self.y + h * _combine(DOPRI54.b, k)
            low = self.y + h * _combine(DOPRI54.b_error, k)
            if not np.all(np.isfinite(high)):
                raise BlowUpError(f"reference state turned non-finite at t = {self.t:.6g}")
            error = self._error_norm(self.y, high, high - low)

            if error <= 1.0:
                self.t = t_target if h == remaining else self.t + h
                self.y = high
                self.accepted += 1
                if error == 0:
                    factor = MAX_FACTOR
                else:
                    factor = SAFETY * error**-ALPHA * self._previous_error**BETA
                    factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
                self._previous_error = max(error, 1e-4)
                # a step clipped to a target keeps the controller's proposal
                self._h = max(self._h, h * factor) if h < self._h else h * factor
            else:
                self.rejected += 1
                self._h = h * max(MIN_FACTOR, SAFETY * error ** (-1 / 5))
        return self.y.copy()


def _combine(weights: Sequence[float], k: list[np.ndarray]) -> np.ndarray:
    total = np.zeros_like(k[0])
    for w, kj in zip(weights, k):
        if w != 0:
            total = total + w * kj
    return total


def reference_solve(
    f: Evaluator,
    t0: float,
    y0: Any,
    tf: float,
    abs_tol: float = 1e-13,
    rel_tol: float = 1e-13,
    t_eval: Sequence[float] | None = None,
) -> np.ndarray:
    """High-accuracy solution of the unsplit problem.

    Args:
        f: Unsplit right-hand side.
        t0: Start time.
        y0: Initial state.
        tf: End time.
        abs_tol: Absolute tolerance.
        rel_tol: Relative tolerance.
        t_eval: Optional sample times in (t0, tf], increasing.

    Returns:
        The state at tf, or with ``t_eval`` an array of shape
        (len(t_eval), d) holding the state at each sample time.
    """
    solver = DormandPrince(f, t0, y0, abs_tol=abs_tol, rel_tol=rel_tol)
    if t_eval is None:
        result = solver.advance_to(tf)
    else:
        times = [float(t) for t in t_eval]
        if any(b <= a for a, b in zip(times, times[1:])) or (times and not t0 <= times[0]):
            raise IntegrationError("t_eval must be increasing and not before t0")
        if times and times[-1] > tf:
            raise IntegrationError(f"t_eval reaches {times[-1]} beyond tf = {tf}")
        result = np.array([solver.advance_to(t) for t in times])
    logger.debug(
        "reference solve to %g: %d accepted, %d rejected steps",
        tf,
        solver.accepted,
        solver.rejected,
    )
    return result
