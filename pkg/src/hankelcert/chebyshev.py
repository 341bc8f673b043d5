"""Chebyshev polynomials of the first and second kind.

Both kinds are evaluated with the three-term recurrence, which is exact at
``t = +-1`` and valid for any real ``t``. The trigonometric forms
``cos(n*theta)`` and ``sin((n+1)*theta)/sin(theta)`` are only used by tests.
"""
from __future__ import annotations

import numpy as np

from .series import TruncatedSeries

__all__ = ["MAX_DEGREE", "cheb_u", "cheb_t", "h_series", "t_series"]

MAX_DEGREE = 64


def _check_degree(n: int) -> int:
    if int(n) != n:
        raise TypeError(f"degree must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds cap {MAX_DEGREE}")
    return n


def _recurrence(n, t, first):
    prev, cur = np.ones_like(t), first
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * t * cur - prev
    return cur


def cheb_u(n: int, t):
    """U_n(t) from U_0 = 1, U_1 = 2t, U_n = 2t U_{n-1} - U_{n-2}.

    ``t`` may be a scalar or an array; a float is returned for scalar input.
    """
    n = _check_degree(n)
    arr = np.asarray(t, dtype=float)
    out = _recurrence(n, arr, 2 * arr)
    return float(out) if out.ndim == 0 else out


def cheb_t(n: int, t):
    """T_n(t) from T_0 = 1, T_1 = t, T_n = 2t T_{n-1} - T_{n-2}."""
    n = _check_degree(n)
    arr = np.asarray(t, dtype=float)
    out = _recurrence(n, arr, arr.copy())
    return float(out) if out.ndim == 0 else out


def _check_open_interval(t: float) -> float:
    t = float(t)
    if not -1.0 < t < 1.0:
        raise ValueError(f"t must lie in (-1, 1), got {t}")
    return t


def h_series(t: float, order: int) -> TruncatedSeries:
    """Taylor coefficients of H(z, t) = 1/(1 - 2tz + z^2) up to ``z**order``.

    Coefficient k is U_k(t).
    """
    t = _check_open_interval(t)
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries([cheb_u(k, t) for k in range(order + 1)])


def t_series(t: float, order: int) -> TruncatedSeries:
    """Truncated generating function sum T_n(t) z^n = (1 - tz)/(1 - 2tz + z^2)."""
    t = _check_open_interval(t)
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries([cheb_t(k, t) for k in range(order + 1)])
