"""Input validation helpers shared across the package.

Small, strict checkers in the spirit of scikit-learn's parameter validation:
each helper either returns the validated (possibly coerced) value or raises
``ValueError``/``TypeError`` with a message naming the offending parameter.
"""

from __future__ import annotations

import math
import numbers

import numpy as np

__all__ = [
    "check_positive_int",
    "check_alpha",
    "check_lambda",
    "check_interval",
    "check_finite_array",
]


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    """Validate an integral parameter ``value >= minimum`` and return it as int."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_alpha(alpha, name: str = "alpha") -> float:
    """Validate a fractional order ``0 < alpha <= pi/2`` and return it as float."""
    if not isinstance(alpha, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {alpha!r}")
    alpha = float(alpha)
    if not math.isfinite(alpha) or not 0.0 < alpha <= math.pi / 2 + 1e-15:
        raise ValueError(f"{name} must lie in (0, pi/2], got {alpha}")
    return min(alpha, math.pi / 2)


def check_lambda(lam, name: str = "lam") -> float:
    """Validate a Gegenbauer weight exponent ``lam > 0`` and return it as float."""
    if not isinstance(lam, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {lam!r}")
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise ValueError(f"{name} must be positive and finite, got {lam}")
    return lam


def check_interval(a, b, name: str = "interval") -> tuple[float, float]:
    """Validate interval endpoints ``a < b`` (finite) and return them as floats."""
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"{name} endpoints must be finite, got ({a}, {b})")
    if not a < b:
        raise ValueError(f"{name} must satisfy a < b, got ({a}, {b})")
    return a, b


def check_finite_array(values, name: str, dtype=None) -> np.ndarray:
    """Coerce ``values`` to an ndarray and require every entry to be finite."""
    arr = np.asarray(values, dtype=dtype)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr
