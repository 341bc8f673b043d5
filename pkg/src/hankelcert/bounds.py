"""Upper bound for |a2 a4 - a3^2| on the Chebyshev-subordinated bi-univalent class.

Notation used throughout::

    A = lam + mu,  B = 2 lam + mu,  C = 3 lam + mu,  D = A**4 B**2 C
    U1, U2, U3 = U_1(t), U_2(t), U_3(t)

``K(c) = U1^2/B^2 + (M1 c^4 + 12 M2 c^2) / (96 D)`` is the maximum of the
majorant surface over the unit square for a fixed first Caratheodory
coefficient ``c``. The final bound is the maximum of ``K`` over ``c`` in
``[0, 2]``, split on the signs of ``M1`` and ``M2``.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .chebyshev import cheb_u

__all__ = [
    "DomainError",
    "EndpointError",
    "ClassParams",
    "SignCase",
    "BoundResult",
    "PRESETS",
    "STARLIKE_THRESHOLD",
    "m1",
    "m2",
    "s_coeffs",
    "f_surface",
    "k_profile",
    "k_derivative",
    "c_critical",
    "hankel_bound",
    "bound_corollary1",
    "bound_corollary2",
    "bound_starlike_closed",
    "bound_bsigma_closed",
    "bsigma_threshold",
]

STARLIKE_THRESHOLD = (7.0 + math.sqrt(401.0)) / 44.0


class DomainError(ValueError):
    """Parameters outside the class definition."""


class EndpointError(DomainError):
    """``t = 1``: admitted by the class definition but not by the sign arguments."""


def _check_t(t: float) -> float:
    t = float(t)
    if t == 1.0:
        raise EndpointError("t = 1 is excluded: the bound is proved only for 1/2 < t < 1")
    if not 0.5 < t < 1.0:
        raise DomainError(f"t must satisfy 1/2 < t < 1, got {t}")
    return t


@dataclass(frozen=True)
class ClassParams:
    """The triple (lambda, mu, t) selecting one class of the family."""

    lam: float
    mu: float
    t: float

    def __post_init__(self):
        for name in ("lam", "mu", "t"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if self.lam < 1.0:
            raise DomainError(f"lambda must be >= 1, got {self.lam}")
        if self.mu < 0.0:
            raise DomainError(f"mu must be >= 0, got {self.mu}")
        _check_t(self.t)

    @property
    def A(self) -> float:
        return self.lam + self.mu

    @property
    def B(self) -> float:
        return 2 * self.lam + self.mu

    @property
    def C(self) -> float:
        return 3 * self.lam + self.mu

    @property
    def D(self) -> float:
        return self.A**4 * self.B**2 * self.C


# Named subclasses of the family.
PRESETS = {
    "bazilevic": {"lam": 1.0},  # mu free
    "b-sigma": {"lam": 1.0, "mu": 1.0},
    "starlike": {"lam": 1.0, "mu": 0.0},
    "b-sigma-lambda": {"mu": 1.0},  # lam free
}


class SignCase(enum.Enum):
    BOTH_NONNEG = "BOTH_NONNEG"
    POS_NEG = "POS_NEG"
    BOTH_NONPOS = "BOTH_NONPOS"
    NEG_POS = "NEG_POS"


@dataclass(frozen=True)
class BoundResult:
    bound: float
    case: SignCase
    m1: float
    m2: float
    k_at_2: float
    k_at_c0: Optional[float] = None
    c0: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value
        return d


def m1(params: ClassParams) -> float:
    lam, mu, t = params.lam, params.mu, params.t
    A, B, C = params.A, params.B, params.C
    inner = 3 * (2 * t * t - 1) * A**3 - (mu * mu + 3 * mu + 2) * C * t * t
    return (
        16 * t * t * abs(inner) * B * B
        - 24 * t * (t * t * C + (4 * t * t - 1) * A * B) * A * A * B
        - 24 * t * t * lam * lam * A**3
    )


def m2(params: ClassParams) -> float:
    t = params.t
    A, B, C = params.A, params.B, params.C
    return (
        8 * t
        * (t * t * B * C + (4 * t * t - 1) * A * B * B + t * B * B * A - 2 * t * A * A * C)
        * A * A
    )


def _check_c(c):
    arr = np.asarray(c, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 2.0) or np.any(np.isnan(arr)):
        raise ValueError("c must lie in [0, 2]")
    return arr


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def s_coeffs(c, params: ClassParams):
    """The four majorant coefficients (S1, S2, S3, S4) at first coefficient ``c``.

    For 1/2 < t < 1 and 0 <= c <= 2 they satisfy S1, S2, S4 >= 0 and S3 <= 0.
    Accepts scalar or array ``c``.
    """
    c = _check_c(c)
    mu = params.mu
    A, B, C = params.A, params.B, params.C
    t = params.t
    U1, U2, U3 = cheb_u(1, t), cheb_u(2, t), cheb_u(3, t)
    w = 4 - c * c
    lead = abs(6 * U3 * A**3 - U1**3 * (mu * mu + 3 * mu + 2) * C)
    S1 = U1 * lead * c**4 / (96 * A**4 * C) + U1**2 * c * w / (8 * A * C)
    S2 = U1**3 * c * c * w / (64 * A * A * B) + U1 * U2 * w * c * c / (16 * A * C)
    S3 = U1**2 * c * (c - 2) * w / (32 * A * C)
    S4 = U1**2 * w * w / (64 * B * B)
    return tuple(_scalar(s) for s in (S1, S2, S3, S4))


def f_surface(gamma1, gamma2, c, params: ClassParams):
    """Majorant ``S1 + S2 (g1+g2) + S3 (g1^2+g2^2) + S4 (g1+g2)^2``."""
    g1 = np.asarray(gamma1, dtype=float)
    g2 = np.asarray(gamma2, dtype=float)
    for g in (g1, g2):
        if np.any(g < 0.0) or np.any(g > 1.0):
            raise ValueError("gamma arguments must lie in [0, 1]")
    S1, S2, S3, S4 = s_coeffs(c, params)
    s = g1 + g2
    return _scalar(S1 + S2 * s + S3 * (g1 * g1 + g2 * g2) + S4 * s * s)


def k_profile(c, params: ClassParams):
    """``K(c, t)``, the surface maximum F(1, 1) in closed form."""
    c = _check_c(c)
    U1 = cheb_u(1, params.t)
    val = U1**2 / params.B**2 + (m1(params) * c**4 + 12 * m2(params) * c * c) / (96 * params.D)
    return _scalar(val)


def k_derivative(c, params: ClassParams):
    c = _check_c(c)
    return _scalar((m1(params) * c * c + 6 * m2(params)) * c / (24 * params.D))


def _critical(M1: float, M2: float) -> Optional[float]:
    if not ((M1 > 0 and M2 < 0) or (M1 < 0 and M2 > 0)):
        return None
    r = -6.0 * M2 / M1
    if 0.0 < r < 4.0:
        return math.sqrt(r)
    return None


def c_critical(params: ClassParams) -> Optional[float]:
    """Interior stationary point ``sqrt(-6 M2 / M1)`` of K, or None."""
    return _critical(m1(params), m2(params))


def _piecewise(M1: float, M2: float, k0: float, D: float) -> BoundResult:
    # k0 = K(0) = 4t^2/B^2; D = A^4 B^2 C for the (possibly specialized) class.
    k2 = k0 + (M1 + 3 * M2) / (6 * D)
    c0 = _critical(M1, M2)
    kc0 = None if c0 is None else k0 - 3 * M2 * M2 / (8 * M1 * D)
    if M1 >= 0 and M2 >= 0:
        case, bound = SignCase.BOTH_NONNEG, k2
    elif M1 <= 0 and M2 <= 0:
        case, bound = SignCase.BOTH_NONPOS, k0
    elif M1 > 0:
        case, bound = SignCase.POS_NEG, max(k0, k2)
    else:
        # c0 outside (0, 2) means K' > 0 on the whole interval.
        case = SignCase.NEG_POS
        bound = k2 if kc0 is None else max(kc0, k2)
    return BoundResult(bound=bound, case=case, m1=M1, m2=M2, k_at_2=k2, k_at_c0=kc0, c0=c0)


def hankel_bound(params: ClassParams) -> BoundResult:
    """Upper bound on |a2 a4 - a3^2| over the class selected by ``params``.

    Case precedence on ties (M1 or M2 exactly zero): BOTH_NONNEG, then
    BOTH_NONPOS, then the strict mixed cases.
    """
    t = params.t
    return _piecewise(m1(params), m2(params), 4 * t * t / params.B**2, params.D)


def bound_corollary1(lam: float, t: float) -> BoundResult:
    """Bound for the mu = 1 subclass, from its own M3/M4 formulas."""
    p = ClassParams(lam, 1.0, t)
    lam, t = p.lam, p.t
    M3 = (
        16 * t * t * abs(3 * (2 * t * t - 1) * (lam + 1) ** 3 - 6 * (3 * lam + 1) * t * t)
        * (2 * lam + 1) ** 2
        - 24 * t * (t * t * (3 * lam + 1) + (4 * t * t - 1) * (lam + 1) * (2 * lam + 1))
        * (lam + 1) ** 2 * (2 * lam + 1)
        - 24 * t * t * lam * lam * (lam + 1) ** 3
    )
    M4 = (
        8 * t
        * (
            t * t * (2 * lam + 1) * (3 * lam + 1)
            + (4 * t * t - 1) * (lam + 1) * (2 * lam + 1) ** 2
            + t * (2 * lam + 1) ** 2 * (lam + 1)
            - 2 * t * (lam + 1) ** 2 * (3 * lam + 1)
        )
        * (lam + 1) ** 2
    )
    D = (lam + 1) ** 4 * (2 * lam + 1) ** 2 * (3 * lam + 1)
    return _piecewise(M3, M4, 4 * t * t / (2 * lam + 1) ** 2, D)


def bound_corollary2(mu: float, t: float) -> BoundResult:
    """Bound for the lambda = 1 (bi-Bazilevic) subclass, from its M5/M6 formulas."""
    p = ClassParams(1.0, mu, t)
    mu, t = p.mu, p.t
    M5 = (
        16 * t * t * abs(3 * (2 * t * t - 1) * (1 + mu) ** 3 - (mu * mu + 3 * mu + 2) * (3 + mu) * t * t)
        * (2 + mu) ** 2
        - 24 * t * (t * t * (3 + mu) + (4 * t * t - 1) * (1 + mu) * (2 + mu)) * (1 + mu) ** 2 * (2 + mu)
        - 24 * t * t * (1 + mu) ** 3
    )
    M6 = (
        8 * t
        * (
            t * t * (2 + mu) * (3 + mu)
            + (4 * t * t - 1) * (1 + mu) * (2 + mu) ** 2
            + t * (2 + mu) ** 2 * (1 + mu)
            - 2 * t * (1 + mu) ** 2 * (3 + mu)
        )
        * (1 + mu) ** 2
    )
    D = (1 + mu) ** 4 * (2 + mu) ** 2 * (3 + mu)
    return _piecewise(M5, M6, 4 * t * t / (2 + mu) ** 2, D)


def bound_starlike_closed(t: float) -> float:
    """Closed form for lambda = 1, mu = 0, switching at (7 + sqrt 401)/44."""
    t = _check_t(t)
    if t <= STARLIKE_THRESHOLD:
        return 8 * t * t / 3
    return t * t + t * (2 + t - 11 * t * t) ** 2 / (3 * (22 * t * t - 7 * t - 4))


@functools.lru_cache(maxsize=None)
def bsigma_threshold() -> float:
    """Root of M1(1, 1; t) on (0.51, 0.99), about 0.603615."""
    return optimize.bisect(
        lambda s: m1(ClassParams(1.0, 1.0, s)), 0.51, 0.99, xtol=1e-12, rtol=4 * np.finfo(float).eps
    )


def bound_bsigma_closed(t: float) -> float:
    """Closed form for lambda = mu = 1, switching at the root of M1."""
    t = _check_t(t)
    if t <= bsigma_threshold():
        return t * t * (1 - t * t)
    num = 260 * t**4 + 84 * t**3 - 139 * t * t - 18 * t + 9
    den = 8 * (18 * t**3 + 42 * t * t - 17 * t - 9)
    return t * num / den
