"""Error metrics between computed and reference solutions."""

from typing import Any

import numpy as np


def l2_error(y: Any, y_ref: Any) -> float:
    """Euclidean norm of the complex difference.

    Raises:
        ValueError: On a dimension mismatch.
    """
    y = np.asarray(y, dtype=complex)
    y_ref = np.asarray(y_ref, dtype=complex)
    if y.shape != y_ref.shape:
        raise ValueError(f"dimension mismatch: {y.shape} vs {y_ref.shape}")
    return float(np.linalg.norm((y - y_ref).ravel()))


def mrms_error(samples: Any, reference_samples: Any) -> float:
    """Mixed root-mean-square error sqrt(mean(|X_ref - X|^2 / (1 + |X_ref|)^2)).

    The mean runs over every entry of every sample.

    Raises:
        ValueError: If the sample lists are empty or differ in shape.
    """
    x = np.asarray(samples, dtype=complex)
    x_ref = np.asarray(reference_samples, dtype=complex)
    if x.size == 0:
        raise ValueError("mrms_error needs at least one sample")
    if x.shape != x_ref.shape:
        raise ValueError(f"sample shapes differ: {x.shape} vs {x_ref.shape}")
    scaled = np.abs(x_ref - x) / (1 + np.abs(x_ref))
    return float(np.sqrt(np.mean(scaled**2)))
