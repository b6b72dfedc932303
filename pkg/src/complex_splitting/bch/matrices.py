"""Matrix sets, commutators and the matrix exponential."""

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.exceptions import MatrixSetError

DEFAULT_SEED = 20240917

_TAYLOR_TERMS = 20


class MatrixSet(BaseModel):
    """N square complex matrices of a common dimension."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrices: tuple[np.ndarray, ...]
    rng_seed: int | None = None

    @field_validator("matrices", mode="before")
    @classmethod
    def _coerce_matrices(cls, value: Any) -> tuple[np.ndarray, ...]:
        arrays = []
        for m in value:
            a = np.array(m, dtype=complex)
            a.setflags(write=False)
            arrays.append(a)
        return tuple(arrays)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "MatrixSet":
        if not self.matrices:
            raise MatrixSetError("a matrix set needs at least one matrix")
        d = self.matrices[0].shape[0]
        for i, m in enumerate(self.matrices, 1):
            if m.ndim != 2 or m.shape != (d, d):
                raise MatrixSetError(f"matrix {i} has shape {m.shape}, expected ({d}, {d})")
        return self

    @property
    def n_operators(self) -> int:
        """Get number of matrices N."""
        return len(self.matrices)

    @property
    def dimension(self) -> int:
        """Get matrix dimension d."""
        return self.matrices[0].shape[0]

    @property
    def total(self) -> np.ndarray:
        """Sum of all matrices."""
        return np.sum(self.matrices, axis=0)


def random_matrix_set(
    n_operators: int,
    dimension: int = 3,
    seed: int = DEFAULT_SEED,
    commuting: bool = False,
) -> MatrixSet:
    """Seeded matrices with real and imaginary parts uniform on [-1, 1].

    Args:
        n_operators: Number of matrices N.
        dimension: Matrix size d.
        seed: Generator seed.
        commuting: Draw diagonal matrices instead, which commute pairwise.

    Returns:
        The matrix set.
    """
    rng = np.random.default_rng(seed)
    shape = (dimension,) if commuting else (dimension, dimension)
    matrices = []
    for _ in range(n_operators):
        m = rng.uniform(-1, 1, size=shape) + 1j * rng.uniform(-1, 1, size=shape)
        matrices.append(np.diag(m) if commuting else m)
    return MatrixSet(matrices=matrices, rng_seed=seed)


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Lie bracket [x, y] = xy - yx."""
    return x @ y - y @ x


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a truncated Taylor series."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    scaled = a / 2.0**squarings

    identity = np.eye(n, dtype=complex)
    result = identity.copy()
    for k in range(_TAYLOR_TERMS, 0, -1):
        result = identity + (scaled @ result) / k
    for _ in range(squarings):
        result = result @ result
    return result


def nilpotent_expm(a: np.ndarray) -> np.ndarray:
    """Exact exponential of a nilpotent matrix by its finite series."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        term = term @ a / k
        if not np.any(term):
            break
        result = result + term
    return result
