"""Order conditions for p = 1, 2 and related table diagnostics."""

import cmath
import logging

import numpy as np

from ..core.exceptions import MethodDefinitionError, OrderConditionError
from ..models.method import MethodTable, OrderCondition, OrderReport

logger = logging.getLogger(__name__)

ORDER_TOLERANCE = 1e-12
# Unit round-off allowance per stage and unit coefficient mass
RECURSION_GUARD = 1e-15


def c_recursion(table: MethodTable) -> tuple[np.ndarray, np.ndarray]:
    """Stage-by-stage exponent coefficients of the partial methods.

    After stage k the partial method is exp(dt * sum c1[l] D_l + dt^2 *
    sum_{l1<l2} c2[l1, l2] [D_l1, D_l2] + O(dt^3)), with

        c1[l]_k      = c1[l]_{k-1} + a_k[l]
        c2[l1,l2]_k  = c2[l1,l2]_{k-1} + a_k[l1] a_k[l2] / 2
                       + (c1[l1]_{k-1} a_k[l2] - a_k[l1] c1[l2]_{k-1}) / 2

    where earlier stages act first. Second order means c1 = 1 and c2 = 0.

    Args:
        table: Method table.

    Returns:
        Arrays of shape (s+1, N) and (s+1, N, N); row k holds the values
        after stage k (row 0 is all zeros). Only l1 < l2 entries of c2 are set.
    """
    alpha = table.array
    s, n = alpha.shape
    c1 = np.zeros((s + 1, n), dtype=complex)
    c2 = np.zeros((s + 1, n, n), dtype=complex)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    for k in range(1, s + 1):
        a = alpha[k - 1]
        prev = c1[k - 1]
        step = 0.5 * np.outer(a, a) + 0.5 * (np.outer(prev, a) - np.outer(a, prev))
        c1[k] = prev + a
        c2[k] = c2[k - 1] + np.where(upper, step, 0)
    return c1, c2


def order_residuals(table: MethodTable, tolerance: float = ORDER_TOLERANCE) -> OrderReport:
    """Evaluate the first- and second-order conditions.

    p = 1: sum_k a_k[l] = 1 for every operator l.
    p = 2: sum_{k>=2} a_k[l1] * sum_{j<k} a_j[l2] = 1/2 for every l1 < l2.

    Args:
        table: Method table.
        tolerance: Residual bound counted as satisfied.

    Returns:
        Report with residuals, recursion values and the highest satisfied order.
    """
    alpha = table.array
    s, n = alpha.shape
    # partial[k] = sum_{j<k} alpha_j
    partial = np.vstack([np.zeros((1, n), dtype=complex), np.cumsum(alpha, axis=0)[:-1]])

    conditions: list[OrderCondition] = []
    column_sums = alpha.sum(axis=0)
    for ell in range(n):
        value = complex(column_sums[ell])
        conditions.append(
            OrderCondition(
                order=1,
                label=f"sum a[{ell + 1}]",
                value=value,
                target=1.0,
                residual=abs(value - 1),
            )
        )

    c1, c2 = c_recursion(table)
    gap = 0.0
    for l1 in range(n):
        for l2 in range(l1 + 1, n):
            value = complex(np.sum(alpha[:, l1] * partial[:, l2]))
            conditions.append(
                OrderCondition(
                    order=2,
                    label=f"a[{l1 + 1}] after a[{l2 + 1}]",
                    value=value,
                    target=0.5,
                    residual=abs(value - 0.5),
                )
            )
            gap = max(gap, abs(c2[s, l1, l2] - _closed_form_c2(alpha, partial, l1, l2)))

    bound = recursion_bound(alpha)
    if gap > bound:
        raise OrderConditionError(
            f"{table.name}: c2 recursion and closed form disagree by {gap:.3e} (bound {bound:.1e})"
        )

    satisfied = 0
    for order in (1, 2):
        if all(c.residual < tolerance for c in conditions if c.order == order):
            satisfied = order
        else:
            break

    return OrderReport(
        method=table.name,
        n_operators=n,
        conditions=tuple(conditions),
        c1=tuple(complex(v) for v in c1[s]),
        c2=tuple(tuple(complex(v) for v in row) for row in c2[s]),
        recursion_gap=float(gap),
        tolerance=tolerance,
        satisfied_through=satisfied,
    )


def recursion_bound(alpha: np.ndarray) -> float:
    """Round-off bound on the recursion/closed-form c2 gap.

    RECURSION_GUARD times the stage count times one plus the squared
    largest absolute column sum.
    """
    s = alpha.shape[0]
    mass = float(np.abs(alpha).sum(axis=0).max())
    return RECURSION_GUARD * s * (1.0 + mass**2)


def _closed_form_c2(alpha: np.ndarray, partial: np.ndarray, l1: int, l2: int) -> complex:
    # c2 = 1/2 sum_k [a_k[l1] a_k[l2] + a_k[l2] sum_{j<k} a_j[l1] - a_k[l1] sum_{j<k} a_j[l2]]
    return 0.5 * complex(
        np.sum(alpha[:, l1] * alpha[:, l2])
        + np.sum(alpha[:, l2] * partial[:, l1])
        - np.sum(alpha[:, l1] * partial[:, l2])
    )


def verify_design_order(table: MethodTable, tolerance: float = ORDER_TOLERANCE) -> OrderReport:
    """Check the conditions a table can be checked against symbolically.

    Orders above two are checked empirically by the BCH oracle; here they
    only require both symbolic orders to hold.

    Raises:
        OrderConditionError: If a condition up to min(design_order, 2) fails.
    """
    report = order_residuals(table, tolerance)
    needed = min(table.design_order, 2)
    if report.satisfied_through < needed:
        failed = report.satisfied_through + 1
        raise OrderConditionError(
            f"{table.name}: claims order {table.design_order} but the order-{failed} "
            f"residual is {report.max_residual(failed):.3e}"
        )
    return report


def has_positive_real_parts(table: MethodTable) -> bool:
    """Whether every nonzero coefficient has a positive real part."""
    return all(c.real > 0 for row in table.stages for c in row if c != 0)


def min_real_part(table: MethodTable) -> float:
    """Smallest real part among nonzero coefficients."""
    return min(c.real for row in table.stages for c in row if c != 0)


def max_argument(table: MethodTable) -> float:
    """Largest |phase| among nonzero coefficients, in radians."""
    return max(abs(cmath.phase(c)) for row in table.stages for c in row if c != 0)


def solve_two_stage(
    n_operators: int,
    starts: int = 64,
    seed: int = 0,
    tolerance: float = 1e-12,
    max_iterations: int = 100,
) -> list[MethodTable]:
    """Root-solve the p = 1, 2 conditions over all two-stage N-split tables.

    Complex Gauss-Newton from random starts; converged roots are
    de-duplicated. For N >= 3 only CLT2 and its conjugate exist.

    Args:
        n_operators: Number of operators N (at least 2).
        starts: Number of random starting points.
        seed: Seed of the starting points.
        tolerance: Residual norm accepted as a root.
        max_iterations: Gauss-Newton iterations per start.

    Returns:
        Distinct converged tables (within 1e-10).
    """
    n = n_operators
    if n < 2:
        raise MethodDefinitionError("solve_two_stage needs N >= 2")

    pairs = [(l1, l2) for l1 in range(n) for l2 in range(l1 + 1, n)]
    rng = np.random.default_rng(seed)
    roots: list[np.ndarray] = []

    def residual(x: np.ndarray) -> np.ndarray:
        a1, a2 = x[:n], x[n:]
        first = a1 + a2 - 1
        second = np.array([a2[l1] * a1[l2] - 0.5 for l1, l2 in pairs], dtype=complex)
        return np.concatenate([first, second])

    def jacobian(x: np.ndarray) -> np.ndarray:
        a1, a2 = x[:n], x[n:]
        jac = np.zeros((n + len(pairs), 2 * n), dtype=complex)
        for ell in range(n):
            jac[ell, ell] = 1
            jac[ell, n + ell] = 1
        for row, (l1, l2) in enumerate(pairs, start=n):
            jac[row, n + l1] = a1[l2]
            jac[row, l2] = a2[l1]
        return jac

    for _ in range(starts):
        x = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
        for _ in range(max_iterations):
            r = residual(x)
            if np.linalg.norm(r) < tolerance:
                break
            step, *_ = np.linalg.lstsq(jacobian(x), -r, rcond=None)
            x = x + step
            if not np.all(np.isfinite(x)):
                break
        if np.all(np.isfinite(x)) and np.linalg.norm(residual(x)) < tolerance:
            if not any(np.max(np.abs(x - root)) < 1e-10 for root in roots):
                roots.append(x)

    logger.debug("solve_two_stage(N=%d): %d distinct roots from %d starts", n, len(roots), starts)
    return [
        MethodTable(
            name=f"two-stage-root-{i}",
            n_operators=n,
            stages=[root[:n], root[n:]],
            design_order=2,
        )
        for i, root in enumerate(roots)
    ]
