"""Truncated power series with complex coefficients.

A :class:`TruncatedSeries` holds ``c_0 ... c_N`` on the last axis of a numpy
array. Leading axes, if any, index independent series, so one object can carry
a whole batch of random samples through the same arithmetic.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .bounds import ClassParams

__all__ = [
    "TruncatedSeries",
    "add",
    "mul",
    "div",
    "pow_real",
    "compose",
    "revert",
    "class_lhs",
    "identity",
]

_UNIT_TOL = 1e-12


class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series, truncated after ``z**N``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients):
        arr = np.array(coefficients, dtype=complex)
        if arr.ndim == 0 or arr.shape[-1] == 0:
            raise ValueError("a series needs at least one coefficient")
        self._coeffs = arr

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        value = np.asarray(value, dtype=complex)
        arr = np.zeros(value.shape + (order + 1,), dtype=complex)
        arr[..., 0] = value
        return cls(arr)

    @property
    def coefficients(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.shape[-1] - 1

    @property
    def batch_shape(self) -> tuple:
        return self._coeffs.shape[:-1]

    def __getitem__(self, k):
        return self._coeffs[..., k]

    def __len__(self) -> int:
        return self.order + 1

    def __repr__(self) -> str:
        return f"TruncatedSeries({self._coeffs.tolist()!r})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order {self.order} series to {order}")
        return TruncatedSeries(self._coeffs[..., : order + 1])

    def pad(self, order: int) -> "TruncatedSeries":
        """Extend with zero coefficients (exact for polynomials)."""
        if order < self.order:
            raise ValueError("pad cannot shorten a series; use truncate")
        arr = np.zeros(self.batch_shape + (order + 1,), dtype=complex)
        arr[..., : self.order + 1] = self._coeffs
        return TruncatedSeries(arr)

    def derivative(self) -> "TruncatedSeries":
        """Term-by-term derivative; the result has order N - 1."""
        if self.order == 0:
            return TruncatedSeries.constant(np.zeros(self.batch_shape), 0)
        k = np.arange(1, self.order + 1)
        return TruncatedSeries(self._coeffs[..., 1:] * k)

    def divide_by_z(self) -> "TruncatedSeries":
        """``self / z`` for a series with zero constant term; order drops by one."""
        if np.any(np.abs(self._coeffs[..., 0]) > _UNIT_TOL):
            raise ValueError("division by z needs a zero constant term")
        if self.order == 0:
            raise ValueError("order-0 series has nothing left after division by z")
        return TruncatedSeries(self._coeffs[..., 1:])

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, -_coerce(other, self))

    def __rsub__(self, other):
        return add(_coerce(other, self), -self)

    def __neg__(self):
        return TruncatedSeries(-self._coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self._coeffs * np.asarray(other)[..., None])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self._coeffs / np.asarray(other)[..., None])

    def __pow__(self, exponent):
        return pow_real(self, exponent)


def _coerce(value, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(value, like.order)


def _same_order(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.order != b.order:
        raise ValueError(
            f"order mismatch: {a.order} vs {b.order}; truncate one side explicitly"
        )
    return a.order


def identity(order: int) -> TruncatedSeries:
    """The series ``z`` (order must be at least 1)."""
    if order < 1:
        raise ValueError("identity series needs order >= 1")
    arr = np.zeros(order + 1, dtype=complex)
    arr[1] = 1.0
    return TruncatedSeries(arr)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _same_order(a, b)
    return TruncatedSeries(a.coefficients + b.coefficients)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    n = _same_order(a, b)
    A, B = a.coefficients, b.coefficients
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1])
    out = np.zeros(shape + (n + 1,), dtype=complex)
    for m in range(n + 1):
        for k in range(m + 1):
            out[..., m] += A[..., k] * B[..., m - k]
    return TruncatedSeries(out)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a / b``; ``b`` must have a nonzero constant term."""
    n = _same_order(a, b)
    A, B = a.coefficients, b.coefficients
    if np.any(B[..., 0] == 0):
        raise ZeroDivisionError("divisor has a zero constant term")
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1])
    out = np.zeros(shape + (n + 1,), dtype=complex)
    for m in range(n + 1):
        acc = A[..., m] + 0j
        for k in range(1, m + 1):
            acc = acc - B[..., k] * out[..., m - k]
        out[..., m] = acc / B[..., 0]
    return TruncatedSeries(out)


def _check_unit(a: TruncatedSeries) -> None:
    if np.any(np.abs(a.coefficients[..., 0] - 1.0) > _UNIT_TOL):
        raise ValueError("constant term must be 1")


def _log_unit(a: TruncatedSeries) -> np.ndarray:
    # log of 1 + ...: n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}
    A = a.coefficients
    L = np.zeros_like(A)
    for n in range(1, a.order + 1):
        acc = n * A[..., n]
        for k in range(1, n):
            acc = acc - k * L[..., k] * A[..., n - k]
        L[..., n] = acc / n
    return L


def _exp_nilpotent(L: np.ndarray) -> np.ndarray:
    # exp of a series with zero constant: n E_n = sum_{k=1}^{n} k L_k E_{n-k}
    E = np.zeros_like(L)
    E[..., 0] = 1.0
    for n in range(1, L.shape[-1]):
        acc = np.zeros(L.shape[:-1], dtype=complex)
        for k in range(1, n + 1):
            acc = acc + k * L[..., k] * E[..., n - k]
        E[..., n] = acc / n
    return E


def pow_real(a: TruncatedSeries, exponent: float) -> TruncatedSeries:
    """``a**exponent`` as ``exp(exponent * log a)`` for a unit-constant series.

    Works for any real exponent, negative and fractional included.
    """
    _check_unit(a)
    L = _log_unit(a) * np.asarray(exponent)[..., None]
    return TruncatedSeries(_exp_nilpotent(L))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` by Horner's scheme; ``inner`` must vanish at 0."""
    n = _same_order(outer, inner)
    if np.any(np.abs(inner.coefficients[..., 0]) > _UNIT_TOL):
        raise ValueError("inner series must have zero constant term")
    O = outer.coefficients
    result = TruncatedSeries.constant(O[..., n], n)
    for k in range(n - 1, -1, -1):
        result = mul(result, inner) + TruncatedSeries.constant(O[..., k], n)
    return result


def revert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of ``z + a_2 z^2 + ...`` by Lagrange inversion.

    The n-th coefficient of the inverse is ``[z^{n-1}] (z / a(z))**n / n``.
    """
    A = a.coefficients
    if a.order < 1:
        raise ValueError("reversion needs order >= 1")
    if np.any(np.abs(A[..., 0]) > _UNIT_TOL) or np.any(np.abs(A[..., 1] - 1) > _UNIT_TOL):
        raise ValueError("reversion needs a_0 = 0 and a_1 = 1")
    q = a.divide_by_z()
    out = np.zeros_like(A)
    for n in range(1, a.order + 1):
        out[..., n] = pow_real(q, -n)[n - 1] / n
    return TruncatedSeries(out)


def class_lhs(f: TruncatedSeries, params: "ClassParams") -> TruncatedSeries:
    """Expansion of ``(1-lam) (f/z)**mu + lam f'(z) (f/z)**(mu-1)``.

    ``f`` must be normalized (``f_0 = 0``, ``f_1 = 1``). Forming ``f/z`` costs one
    order, so the result has order ``f.order - 1``: an order-4 ``f`` gives the
    coefficients of ``z**0 .. z**3``. Pad polynomial inputs with :meth:`pad`
    first if a longer expansion is wanted.
    """
    C = f.coefficients
    if f.order < 2:
        raise ValueError("class_lhs needs f of order >= 2")
    if np.any(np.abs(C[..., 0]) > _UNIT_TOL) or np.any(np.abs(C[..., 1] - 1) > _UNIT_TOL):
        raise ValueError("f must be normalized: f(0) = 0, f'(0) = 1")
    lam, mu = params.lam, params.mu
    q = f.divide_by_z()
    fprime = f.derivative().truncate(q.order)
    return (1 - lam) * pow_real(q, mu) + lam * mul(fprime, pow_real(q, mu - 1))
