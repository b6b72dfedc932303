"""Complex Splitting - N-split operator-splitting methods with complex coefficients."""

__version__ = "0.1.0"
