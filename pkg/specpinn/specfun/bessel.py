"""
Integer-order Bessel and Hankel functions of real positive argument.

Values come from :mod:`scipy.special`; derivatives use the recurrence
``C_n'(x) = (C_{n-1}(x) - C_{n+1}(x)) / 2``, valid for ``J``, ``Y`` and ``H^(1)``.
"""

from __future__ import annotations

from typing import Literal, Union

import numpy as np
from frozendict import frozendict
from scipy import special

from specpinn.logger import logger

MAX_ORDER: int = 60
MAX_ARGUMENT: float = 50.0

BesselKind = Literal["J", "Y", "H1"]
Real = Union[float, np.ndarray]


class SpecialFunctionError(ValueError):
    """Order or argument outside the supported range."""


def _check_order(n) -> np.ndarray:
    n = np.asarray(n)
    if not np.issubdtype(n.dtype, np.integer):
        if not np.all(n == np.round(n)):
            logger.error(f"Only integer orders are supported, got {n}", exception=SpecialFunctionError)
        n = n.astype(int)
    if np.any(np.abs(n) > MAX_ORDER):
        logger.error(
            f"Order magnitude must not exceed {MAX_ORDER}, got {n}",
            exception=SpecialFunctionError,
        )
    return n


def _check_argument(x, strictly_positive: bool) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.iscomplexobj(x) or not np.all(np.isfinite(x)):
        logger.error("Argument must be real and finite", exception=SpecialFunctionError)
    if strictly_positive and np.any(x <= 0.0):
        logger.error(
            "Argument must be positive (logarithmic singularity at zero)",
            exception=SpecialFunctionError,
        )
    if np.any(x < 0.0):
        logger.error("Argument must be non-negative", exception=SpecialFunctionError)
    if np.any(x > MAX_ARGUMENT):
        logger.warning(f"Arguments above {MAX_ARGUMENT} are outside the validated range")
    return x


def bessel_j(n, x) -> Real:
    """First-kind Bessel function ``J_n(x)`` for ``x >= 0``."""
    n, x = _check_order(n), _check_argument(x, strictly_positive=False)
    return special.jv(n, x)


def bessel_y(n, x) -> Real:
    """Second-kind Bessel function ``Y_n(x)`` for ``x > 0``."""
    n, x = _check_order(n), _check_argument(x, strictly_positive=True)
    return special.yv(n, x)


def hankel1(n, x) -> Union[complex, np.ndarray]:
    """First-kind Hankel function ``H_n^(1)(x) = J_n(x) + i Y_n(x)`` for ``x > 0``."""
    n, x = _check_order(n), _check_argument(x, strictly_positive=True)
    return special.hankel1(n, x)


_bessel_function_map: frozendict = frozendict(
    {
        "J": bessel_j,
        "Y": bessel_y,
        "H1": hankel1,
    }
)


def bessel_deriv(kind: BesselKind, n, x):
    """Derivative of ``J_n``, ``Y_n`` or ``H_n^(1)`` by the three-term recurrence."""
    try:
        function = _bessel_function_map[kind]
    except KeyError:
        logger.error(
            f"Unknown Bessel kind '{kind}', expected one of {list(_bessel_function_map)}",
            exception=SpecialFunctionError,
        )
    n = _check_order(n)
    if np.any(np.abs(n) >= MAX_ORDER):
        logger.error(
            f"Derivative needs order {MAX_ORDER + 1}, beyond the supported range",
            exception=SpecialFunctionError,
        )
    return 0.5 * (function(n - 1, x) - function(n + 1, x))


def bessel_second_deriv(kind: BesselKind, n, x):
    """Second derivative ``C_n''(x) = (C_{n-1}'(x) - C_{n+1}'(x)) / 2``."""
    n = _check_order(n)
    return 0.5 * (bessel_deriv(kind, n - 1, x) - bessel_deriv(kind, n + 1, x))
