"""Two-term complex composition for raising the order of a method."""

import math

from ..core.exceptions import MethodDefinitionError
from ..models.method import CompositionPair, MethodTable
from .generators import clt2, strang
from .sequence import concatenate, simplify

# Beyond p = 6 the accumulated phases push some coefficient into Re < 0.
MAX_POSITIVE_REAL_ORDER = 6


def composition_sigma(p: int, enforce_positive_real: bool = True) -> CompositionPair:
    """Coefficients sigma_1 = 1/2 + i sin(pi/p) / (2 + 2 cos(pi/p)), sigma_2 = conj(sigma_1).

    Args:
        p: Order of the composed method.
        enforce_positive_real: Restrict p to 3..6, where chains built from a
            real second-order base keep positive real parts.

    Returns:
        The conjugate pair; its phase is pi / (2p).

    Raises:
        MethodDefinitionError: If p is outside the admissible range.
    """
    if enforce_positive_real and not 3 <= p <= MAX_POSITIVE_REAL_ORDER:
        raise MethodDefinitionError(
            f"composition order p = {p} outside 3..{MAX_POSITIVE_REAL_ORDER}: for p >= 7 the "
            "composed coefficients acquire negative real parts"
        )
    if p < 2:
        raise MethodDefinitionError(f"composition order must be at least 2, got {p}")

    angle = math.pi / p
    sigma1 = complex(0.5, math.sin(angle) / (2 + 2 * math.cos(angle)))
    return CompositionPair(p=p, sigma1=sigma1, sigma2=sigma1.conjugate())


def compose(base: MethodTable, pair: CompositionPair) -> MethodTable:
    """Step with ``base`` over sigma_1 dt, then over sigma_2 dt.

    Args:
        base: Method of order pair.p - 1.
        pair: Composition coefficients.

    Returns:
        The simplified composed table. Its design order is pair.p when the
        pair satisfies the composition conditions, otherwise the base order.

    Raises:
        MethodDefinitionError: If the base order does not match the pair.
    """
    if base.design_order != pair.p - 1:
        raise MethodDefinitionError(
            f"composition to order {pair.p} needs a base of order {pair.p - 1}, "
            f"{base.name} has order {base.design_order}"
        )
    order = pair.p if pair.satisfies_conditions() else base.design_order
    composed = concatenate(
        base.scaled(pair.sigma1),
        base.scaled(pair.sigma2),
        name=f"{base.name}-p{pair.p}",
        design_order=order,
    )
    return simplify(composed)


def compose_chain(
    base: MethodTable, target_order: int, enforce_positive_real: bool = True
) -> MethodTable:
    """Compose repeatedly from the base order up to ``target_order``."""
    table = base
    for p in range(base.design_order + 1, target_order + 1):
        table = compose(table, composition_sigma(p, enforce_positive_real))
    return table


def clt3(n_operators: int) -> MethodTable:
    """Four-stage, third-order method composed from CLT2."""
    return compose(clt2(n_operators), composition_sigma(3)).model_copy(update={"name": "clt3"})


def cstrang3(n_operators: int) -> MethodTable:
    """(2N-1)-stage, third-order method composed from Strang."""
    composed = compose(strang(n_operators), composition_sigma(3))
    return composed.model_copy(update={"name": "cstrang3"})
