"""Independent numerical checks of the bound and of the algebra behind it.

None of these prove anything. They try to falsify: every routine here either
recomputes a quantity by a different route (power-series expansion, brute-force
grids, bisection, random sampling) or checks an inequality sample by sample.

Sampling works at the level of Caratheodory coefficients. The first
coefficient ``c`` is real in ``[0, 2]``. Second and third coefficients come
from the Grenander-Szego parameters ``x, z`` (f side) and ``y, w`` (inverse
side), each in the closed unit disk.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .bounds import ClassParams, f_surface, hankel_bound, k_profile, s_coeffs
from .chebyshev import cheb_u, h_series
from .series import TruncatedSeries, class_lhs, compose, revert

__all__ = [
    "GrenanderSample",
    "CoefficientTriple",
    "McReport",
    "draw_samples",
    "derive_cd",
    "coefficients_from_cd",
    "sample_coeffs",
    "hankel_functional",
    "hankel_expansion",
    "schwarz_series",
    "verify_subordination_expansion",
    "brute_max_surface",
    "brute_max_profile",
    "find_sign_change",
    "scan_roots",
    "monte_carlo_check",
    "chain_check",
]

_MODULUS_SLACK = 1e-12
DISK_RETRY_LIMIT = 100


@dataclass(frozen=True)
class GrenanderSample:
    """Parameters of an admissible pair of Caratheodory coefficient triples.

    Fields may be scalars or equally shaped arrays (a batch of samples).
    """

    c: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if np.any(c < 0) or np.any(c > 2) or np.any(np.isnan(c)):
            raise ValueError("c must lie in [0, 2]")
        object.__setattr__(self, "c", c)
        for name in ("x", "y", "z", "w"):
            v = np.asarray(getattr(self, name), dtype=complex)
            if np.any(np.abs(v) > 1 + _MODULUS_SLACK):
                raise ValueError(f"|{name}| must not exceed 1")
            object.__setattr__(self, name, v)

    @classmethod
    def zero(cls) -> "GrenanderSample":
        return cls(0.0, 0, 0, 0, 0)

    def __len__(self) -> int:
        return int(np.broadcast(self.c, self.x, self.y, self.z, self.w).size)

    def take(self, i) -> "GrenanderSample":
        b = np.broadcast_arrays(self.c, self.x, self.y, self.z, self.w)
        return GrenanderSample(*(np.asarray(a).reshape(-1)[i] for a in b))


@dataclass(frozen=True)
class CoefficientTriple:
    a2: np.ndarray
    a3: np.ndarray
    a4: np.ndarray


@dataclass(frozen=True)
class McReport:
    samples: int
    max_observed: float
    bound: float
    violations: int
    worst_sample: GrenanderSample
    min_chain_margin: float

    def to_dict(self) -> dict:
        ws = self.worst_sample
        return {
            "samples": self.samples,
            "max_observed": self.max_observed,
            "bound": self.bound,
            "violations": self.violations,
            "min_chain_margin": self.min_chain_margin,
            "worst_sample": {
                "c": float(ws.c),
                **{k: [float(np.real(v)), float(np.imag(v))]
                   for k, v in (("x", ws.x), ("y", ws.y), ("z", ws.z), ("w", ws.w))},
            },
        }


# ---------------------------------------------------------------- sampling

def _unit_disk(rng: np.random.Generator, n: int) -> np.ndarray:
    # Rejection from [-1, 1]^2, at most DISK_RETRY_LIMIT attempts per point.
    out = np.empty(n, dtype=complex)
    pending = np.arange(n)
    for _ in range(DISK_RETRY_LIMIT):
        if pending.size == 0:
            return out
        u = rng.uniform(-1.0, 1.0, size=(pending.size, 2))
        ok = u[:, 0] ** 2 + u[:, 1] ** 2 <= 1.0
        out[pending[ok]] = u[ok, 0] + 1j * u[ok, 1]
        pending = pending[~ok]
    if pending.size:
        raise RuntimeError(f"{pending.size} disk draws exceeded {DISK_RETRY_LIMIT} retries")
    return out


def draw_samples(n: int, rng: np.random.Generator) -> GrenanderSample:
    """``n`` samples: c uniform on [0, 2], x, y, z, w uniform on the unit disk."""
    c = rng.uniform(0.0, 2.0, size=n)
    x, y, z, w = (_unit_disk(rng, n) for _ in range(4))
    return GrenanderSample(c, x, y, z, w)


# ------------------------------------------------------ coefficient algebra

def derive_cd(sample: GrenanderSample):
    """Second and third coefficients (c2, c3, d2, d3) for d1 = -c1 = -c."""
    c = sample.c
    v = 4 - c * c

    def lemma(c1, p, q):
        two = (c1 * c1 + v * p) / 2
        three = (c1**3 + 2 * v * c1 * p - v * c1 * p * p + 2 * v * (1 - np.abs(p) ** 2) * q) / 4
        return two, three

    c2, c3 = lemma(c, sample.x, sample.z)
    d2, d3 = lemma(-c, sample.y, sample.w)
    return c2, c3, d2, d3


def coefficients_from_cd(c1, c2, c3, d2, d3, params: ClassParams) -> CoefficientTriple:
    """a2, a3, a4 after eliminating between the f-side and inverse-side equations."""
    mu, t = params.mu, params.t
    A, B, C = params.A, params.B, params.C
    U1, U2, U3 = cheb_u(1, t), cheb_u(2, t), cheb_u(3, t)
    a2 = U1 * c1 / (2 * A)
    a3 = a2 * a2 + U1 * (c2 - d2) / (4 * B)
    a4 = (
        5 * U1**2 * c1 * (c2 - d2) / (16 * A * B)
        + U1 * (c3 - d3) / (4 * C)
        + (U2 - U1) * c1 * (c2 + d2) / (4 * C)
        + ((U1 - 2 * U2 + U3) / (8 * C) - (mu * mu + 3 * mu - 4) * U1**3 / (48 * A**3)) * c1**3
    )
    return CoefficientTriple(a2 + 0j, a3 + 0j, a4 + 0j)


def sample_coeffs(sample: GrenanderSample, params: ClassParams) -> CoefficientTriple:
    c2, c3, d2, d3 = derive_cd(sample)
    return coefficients_from_cd(sample.c, c2, c3, d2, d3, params)


def hankel_functional(triple: CoefficientTriple):
    val = np.abs(triple.a2 * triple.a4 - triple.a3**2)
    return float(val) if np.ndim(val) == 0 else val


def hankel_expansion(c1, c2, c3, d2, d3, params: ClassParams):
    """a2 a4 - a3^2 written directly in the Caratheodory coefficients."""
    mu, t = params.mu, params.t
    A, B, C = params.A, params.B, params.C
    U1, U2, U3 = cheb_u(1, t), cheb_u(2, t), cheb_u(3, t)
    return (
        U1**3 * c1**2 * (c2 - d2) / (32 * A * A * B)
        + U1**2 * c1 * (c3 - d3) / (8 * A * C)
        + (U2 - U1) * U1 * c1**2 * (c2 + d2) / (8 * A * C)
        - U1**2 * (c2 - d2) ** 2 / (16 * B * B)
        + U1 * c1**4
        * (6 * (U1 - 2 * U2 + U3) * A**3 - U1**3 * (mu * mu + 3 * mu + 2) * C)
        / (96 * A**4 * C)
    )


# ------------------------------------------------- subordination expansion

def schwarz_series(c1, c2, c3) -> TruncatedSeries:
    """w = (p - 1)/(p + 1) for p = 1 + c1 z + c2 z^2 + c3 z^3, to order 3."""
    c1, c2, c3 = np.broadcast_arrays(*(np.asarray(v, dtype=complex) for v in (c1, c2, c3)))
    zeros = np.zeros_like(c1)
    p_minus = TruncatedSeries(np.stack([zeros, c1, c2, c3], axis=-1))
    return p_minus / (p_minus + 2)


def _chebyshev_side(c1, c2, c3, params: ClassParams) -> TruncatedSeries:
    # H(t, w(z)) via the series engine.
    return compose(h_series(params.t, 3), schwarz_series(c1, c2, c3))


def _rhs_closed(c1, c2, c3, t):
    # Coefficients of H(t, w(z)) in closed form, orders 1..3.
    U1, U2, U3 = cheb_u(1, t), cheb_u(2, t), cheb_u(3, t)
    r1 = U1 * c1 / 2
    r2 = U1 / 2 * (c2 - c1**2 / 2) + U2 / 4 * c1**2
    r3 = U1 / 2 * (c3 - c1 * c2 + c1**3 / 4) + U2 / 2 * c1 * (c2 - c1**2 / 2) + U3 / 8 * c1**3
    return r1, r2, r3


def _max_gap(lhs: TruncatedSeries, rhs: TruncatedSeries):
    return np.max(np.abs(lhs.coefficients[..., 1:4] - rhs.coefficients[..., 1:4]), axis=-1)


def verify_subordination_expansion(sample: GrenanderSample, params: ClassParams, side: str = "both"):
    """Largest coefficient discrepancy (orders 1..3) in the class-condition algebra.

    The f-side parameters ``(c, x, z)`` define ``p`` and the Schwarz function
    ``w``. The coefficients a2, a3, a4 are solved from the closed-form f-side
    coefficient equations. The residual compares ``class_lhs(f)`` against
    ``H(t, w(z))``, both expanded by the series engine.

    The inverse side is then fixed by ``f``. ``g = revert(f)`` is built, and
    d1, d2, d3 are solved from the closed-form g-side equations.
    ``class_lhs(g)`` is then compared against ``H(t, w~(w))``.
    The elimination residual checks that (c, d) reproduce a2, a3, a4
    through :func:`coefficients_from_cd`. The sample's ``y`` and ``w`` are
    not used: for a genuine class member the inverse side is not free.

    ``side`` is one of ``"f"``, ``"g"``, ``"both"``. Returns a float for a single
    sample, an array for a batch.
    """
    if side not in ("f", "g", "both"):
        raise ValueError(f"unknown side {side!r}")
    mu, t = params.mu, params.t
    A, B, C = params.A, params.B, params.C
    U1, U2, U3 = cheb_u(1, t), cheb_u(2, t), cheb_u(3, t)

    c1 = sample.c + 0j
    c2, c3, _, _ = derive_cd(sample)
    r1, r2, r3 = _rhs_closed(c1, c2, c3, t)
    a2 = r1 / A
    a3 = r2 / B - a2 * a2 * (mu - 1) / 2
    a4 = r3 / C - (mu - 1) * a2 * a3 - (mu - 1) * (mu - 2) * a2**3 / 6

    ones = np.ones_like(a2)
    f = TruncatedSeries(np.stack([0 * ones, ones, a2, a3, a4], axis=-1))
    worst = np.zeros(np.shape(a2))
    if side in ("f", "both"):
        worst = np.maximum(worst, _max_gap(class_lhs(f, params), _chebyshev_side(c1, c2, c3, params)))

    if side in ("g", "both"):
        L1 = -A * a2
        L2 = B * ((mu + 3) * a2 * a2 / 2 - a3)
        L3 = C * ((4 + mu) * a2 * a3 - (4 + mu) * (5 + mu) * a2**3 / 6 - a4)
        d1 = 2 * L1 / U1
        d2 = 2 * (L2 - U2 * d1 * d1 / 4) / U1 + d1 * d1 / 2
        d3 = 2 * (L3 - U2 / 2 * d1 * (d2 - d1 * d1 / 2) - U3 / 8 * d1**3) / U1 + d1 * d2 - d1**3 / 4
        g = revert(f)
        worst = np.maximum(worst, _max_gap(class_lhs(g, params), _chebyshev_side(d1, d2, d3, params)))
        trip = coefficients_from_cd(c1, c2, c3, d2, d3, params)
        elim = np.max(
            np.abs(np.stack([d1 + c1, trip.a2 - a2, trip.a3 - a3, trip.a4 - a4], axis=-1)), axis=-1
        )
        worst = np.maximum(worst, elim)

    return float(worst) if np.ndim(worst) == 0 else worst


# ------------------------------------------------------------ brute force

def _square_basis(grid_n: int):
    g = np.linspace(0.0, 1.0, grid_n)
    g1, g2 = np.meshgrid(g, g, indexing="ij")
    g1, g2 = g1.ravel(), g2.ravel()
    s = g1 + g2
    return np.stack([np.ones_like(s), s, g1 * g1 + g2 * g2, s * s]), g1, g2


def brute_max_surface(c, params: ClassParams, grid_n: int = 101):
    """Exhaustive grid maximum of the majorant surface over [0, 1]^2.

    ``c`` may be an array; then the maxima and argmaxes come back as arrays
    (shape ``(n,)`` and ``(n, 2)``).
    """
    if grid_n < 11:
        raise ValueError("grid_n must be at least 11")
    basis, g1, g2 = _square_basis(grid_n)
    S = np.stack(np.broadcast_arrays(*s_coeffs(c, params)), axis=-1)
    values = np.atleast_2d(S) @ basis
    idx = np.argmax(values, axis=-1)
    best = values[np.arange(values.shape[0]), idx]
    arg = np.stack([g1[idx], g2[idx]], axis=-1)
    if np.ndim(c) == 0:
        return float(best[0]), (float(arg[0, 0]), float(arg[0, 1]))
    return best, arg


def brute_max_profile(params: ClassParams, grid_n: int = 101, rounds: int = 3) -> Tuple[float, float]:
    """Grid maximum of K(c) on [0, 2] with grid-shrink refinement.

    Each round re-grids a window ten coarse steps wide around the incumbent.
    No derivative information is used.
    """
    if grid_n < 101:
        raise ValueError("grid_n must be at least 101")
    lo, hi = 0.0, 2.0
    best_val, best_c = -np.inf, 0.0
    for _ in range(rounds + 1):
        grid = np.linspace(lo, hi, grid_n)
        vals = k_profile(grid, params)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_c = float(vals[i]), float(grid[i])
        half = 5 * (hi - lo) / (grid_n - 1)
        lo, hi = max(0.0, best_c - half), min(2.0, best_c + half)
    return best_val, best_c


# ------------------------------------------------------------ root finding

def find_sign_change(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Plain bisection for a root of ``f`` in ``[lo, hi]``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while (hi - lo) / 2 > tol:
        mid = lo + (hi - lo) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo + (hi - lo) / 2


def scan_roots(f: Callable[[float], float], lo: float, hi: float,
               steps: int = 2000, tol: float = 1e-12) -> List[float]:
    """All sign changes of ``f`` seen on a uniform scan, each refined by bisection."""
    grid = np.linspace(lo, hi, steps + 1)
    vals = [f(float(x)) for x in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(find_sign_change(f, float(a), float(b), tol))
    if vals[-1] == 0:
        roots.append(float(grid[-1]))
    return roots


# ------------------------------------------------------------ Monte Carlo

def chain_check(sample: GrenanderSample, params: ClassParams):
    """Majorant minus functional, F(|x|, |y|) - |a2 a4 - a3^2|; never below ~0."""
    F = f_surface(np.abs(sample.x), np.abs(sample.y), sample.c, params)
    return F - hankel_functional(sample_coeffs(sample, params))


def _mc_chunk(params, n, seed, index, bound, tol):
    rng = np.random.default_rng([seed, index])
    batch = draw_samples(n, rng)
    vals = hankel_functional(sample_coeffs(batch, params))
    margin = chain_check(batch, params)
    i = int(np.argmax(vals))
    return vals[i], batch.take(i), int(np.sum(vals > bound + tol)), float(np.min(margin))


def monte_carlo_check(params: ClassParams, n: int, seed: int, tol: float = 1e-9,
                      chunk_size: int = 100_000, workers: int = 1) -> McReport:
    """Sample the functional and compare it with the piecewise bound.

    Chunk ``i`` draws from ``default_rng([seed, i])``, so results depend only on
    ``(n, seed, chunk_size)`` and not on ``workers``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    bound = hankel_bound(params).bound
    sizes = [min(chunk_size, n - s) for s in range(0, n, chunk_size)]
    jobs = [(params, m, seed, i, bound, tol) for i, m in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _mc_chunk(*a), jobs))
    else:
        parts = [_mc_chunk(*a) for a in jobs]
    best = max(range(len(parts)), key=lambda k: parts[k][0])
    return McReport(
        samples=n,
        max_observed=float(parts[best][0]),
        bound=bound,
        violations=sum(p[2] for p in parts),
        worst_sample=parts[best][1],
        min_chain_margin=min(p[3] for p in parts),
    )
