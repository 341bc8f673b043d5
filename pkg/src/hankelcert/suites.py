"""Named verification suites run by ``hankelcert verify``.

Each suite returns a list of :class:`Check` records. Sizes are arguments so
the same code serves both the quick CLI defaults and the full acceptance runs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence

import numpy as np

from . import bounds as bd
from . import oracles as orc
from .chebyshev import cheb_t, cheb_u, h_series, t_series
from .series import TruncatedSeries, class_lhs, compose, identity, mul, pow_real, revert

BSIGMA_T01_REFERENCE = 0.603615

# Closed-form corollaries print K(c0) past their threshold. Between the
# threshold and the point where c0 reaches 2 (2 M1 + 3 M2 = 0) the
# critical point lies outside (0, 2) and the general bound gives K(2) instead.
STARLIKE_KNOWN_ISSUE = (bd.STARLIKE_THRESHOLD, (3 + math.sqrt(31)) / 11)
BSIGMA_KNOWN_ISSUE_END = 0.63488302744576836  # root of 36t^3 + 42t^2 - 27t - 9


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}: worst={self.worst:.3e} tol={self.tol:.1e}{extra}"


def _le(name, worst, tol, detail=""):
    return Check(name, bool(worst <= tol), float(worst), tol, detail)


def param_grid(n: int) -> List[bd.ClassParams]:
    lams = np.linspace(1.0, 3.0, n)
    mus = np.linspace(0.0, 3.0, n)
    ts = np.linspace(0.51, 0.99, n)
    return [bd.ClassParams(l, m, t) for l, m, t in itertools.product(lams, mus, ts)]


# ------------------------------------------------------------------ cheb

def cheb_suite(n_max: int = 20, n_t: int = 199) -> List[Check]:
    ts = np.linspace(-0.99, 0.99, n_t)
    U = np.array([cheb_u(n, ts) for n in range(n_max + 1)])
    T = np.array([cheb_t(n, ts) for n in range(n_max + 1)])
    checks = [
        _le("U recurrence residual", np.max(np.abs(U[2:] - 2 * ts * U[1:-1] + U[:-2])), 1e-12),
        _le("2T_n = U_n - U_{n-2}", np.max(np.abs(2 * T[2:] - (U[2:] - U[:-2]))), 1e-12),
        _le("T_n = U_n - t U_{n-1}", np.max(np.abs(T[1:] - (U[1:] - ts * U[:-1]))), 1e-12),
    ]
    h = 1e-5
    fd = np.array([(cheb_t(n, ts + h) - cheb_t(n, ts - h)) / (2 * h) for n in range(1, n_max + 1)])
    exact = np.array([n * U[n - 1] for n in range(1, n_max + 1)])
    err = np.abs(fd - exact)
    # h^2 T''' / 6 grows like n^6; absolute 1e-6 holds through degree 8.
    checks.append(_le("dT_n/dt = n U_{n-1} (n<=8)", np.max(err[:8]), 1e-6))
    denom = TruncatedSeries([1.0, 0, 1.0] + [0.0] * (n_max - 2))
    gen_u = gen_t = 0.0
    for t in ts:
        d = denom + TruncatedSeries([0.0, -2 * t] + [0.0] * (n_max - 1))
        target_u = np.zeros(n_max + 1)
        target_u[0] = 1
        target_t = target_u.copy()
        target_t[1] = -t
        gen_u = max(gen_u, np.max(np.abs(mul(h_series(t, n_max), d).coefficients - target_u)))
        gen_t = max(gen_t, np.max(np.abs(mul(t_series(t, n_max), d).coefficients - target_t)))
    checks.append(_le("H(z,t)(1-2tz+z^2) = 1", gen_u, 1e-12))
    checks.append(_le("sum T_n z^n (1-2tz+z^2) = 1 - tz", gen_t, 1e-12))
    theta = np.arccos(ts)
    trig = max(np.max(np.abs(U[n] - np.sin((n + 1) * theta) / np.sin(theta))) for n in range(n_max + 1))
    checks.append(_le("U_n(cos th) = sin((n+1)th)/sin th", trig, 1e-10))
    return checks


# ---------------------------------------------------------------- series

def series_suite(trials: int = 200, samples: int = 1000, seed: int = 0) -> List[Check]:
    rng = np.random.default_rng(seed)
    N = 4

    def rand(shape=()):
        return TruncatedSeries(rng.uniform(-1, 1, shape + (N + 1,)) + 1j * rng.uniform(-1, 1, shape + (N + 1,)))

    a, b, c = rand((trials,)), rand((trials,)), rand((trials,))
    comm = np.max(np.abs((a * b).coefficients - (b * a).coefficients))
    assoc = np.max(np.abs(((a * b) * c).coefficients - (a * (b * c)).coefficients))

    unit = TruncatedSeries(np.concatenate(
        [np.ones((trials, 1)), rng.uniform(-1, 1, (trials, N))], axis=-1))
    pw = 0.0
    for m in range(6):
        acc = TruncatedSeries.constant(np.ones(trials), N)
        for _ in range(m):
            acc = acc * unit
        pw = max(pw, np.max(np.abs(pow_real(unit, m).coefficients - acc.coefficients)))

    norm = TruncatedSeries(np.concatenate(
        [np.zeros((trials, 1)), np.ones((trials, 1)), rng.uniform(-1, 1, (trials, N - 1))], axis=-1))
    rr = np.max(np.abs(revert(revert(norm)).coefficients - norm.coefficients))
    round_trip = np.max(np.abs(compose(revert(norm), norm).coefficients - identity(N).coefficients))

    a2, a3, a4 = (norm[k] for k in (2, 3, 4))
    expinv = np.stack([-a2, 2 * a2**2 - a3, -(5 * a2**3 - 5 * a2 * a3 + a4)], axis=-1)
    expinv_err = np.max(np.abs(revert(norm).coefficients[..., 2:] - expinv))
    fixture = revert(TruncatedSeries([0, 1, 0.5, 0.25, 0.1])).coefficients
    fixture_err = np.max(np.abs(fixture - np.array([0, 1, -0.5, 0.25, -0.1])))

    lhs_err = 0.0
    for _ in range(trials):
        p = _RandParams(rng.uniform(1, 3), rng.uniform(0, 3))
        f = TruncatedSeries([0, 1, *rng.uniform(-1, 1, 3)])
        A2, A3, A4 = (f[k].real for k in (2, 3, 4))
        L = class_lhs(f, p)
        mu, lam = p.mu, p.lam
        e6 = (2 * lam + mu) * (A3 + A2**2 / 2 * (mu - 1))
        e7 = (3 * lam + mu) * (A4 + (mu - 1) * A2 * A3 + (mu - 1) * (mu - 2) * A2**3 / 6)
        lhs_err = max(lhs_err, abs(L[1] - (lam + mu) * A2), abs(L[2] - e6), abs(L[3] - e7))

    checks = [
        _le("mul commutative", comm, 1e-13),
        _le("mul associative", assoc, 1e-13),
        _le("pow_real(a, m) = a*...*a", pw, 1e-12),
        _le("revert(revert(a)) = a", rr, 1e-12),
        _le("compose(revert(a), a) = z", round_trip, 1e-12),
        _le("inverse series matches closed-form expansion", expinv_err, 1e-12),
        _le("reversion fixture [0,1,.5,.25,.1]", fixture_err, 1e-15),
        _le("class_lhs coefficients 1..3 vs closed-form left sides", lhs_err, 1e-10),
    ]
    checks.extend(subordination_checks(samples, seed))
    return checks


@dataclass(frozen=True)
class _RandParams:
    lam: float
    mu: float


SUBORDINATION_PAIRS = [(l, m) for l in (1.0, 2.0, 3.0) for m in (0.0, 1.0, 2.5)]


def subordination_checks(samples: int, seed: int, t: float = 0.75,
                         pairs: Sequence = SUBORDINATION_PAIRS) -> List[Check]:
    rng = np.random.default_rng([seed, 7])
    batch = orc.draw_samples(samples, rng)
    worst_f = worst_g = 0.0
    for lam, mu in pairs:
        p = bd.ClassParams(lam, mu, t)
        worst_f = max(worst_f, np.max(orc.verify_subordination_expansion(batch, p, side="f")))
        worst_g = max(worst_g, np.max(orc.verify_subordination_expansion(batch, p, side="g")))
    detail = f"{samples} samples x {len(pairs)} (lam, mu) pairs"
    return [
        _le("subordination expansion, f side", worst_f, 1e-10, detail),
        _le("subordination expansion, inverse side", worst_g, 1e-10, detail),
    ]


# --------------------------------------------------------------- surface

def surface_suite(grid: int = 8, n_c: int = 20, square_n: int = 101) -> List[Check]:
    cs = np.linspace(0, 2, n_c + 2)[1:-1]
    sign_bad = 0.0
    saddle_bad = -np.inf
    surf = 0.0
    for p in param_grid(grid):
        S1, S2, S3, S4 = bd.s_coeffs(cs, p)
        sign_bad = max(sign_bad, np.max(-S1), np.max(-S2), np.max(S3), np.max(-S4))
        saddle_bad = max(saddle_bad, np.max(S3), np.max(-(S3 + 2 * S4)))
        best, _ = orc.brute_max_surface(cs, p, square_n)
        surf = max(surf, np.max(np.abs(best - bd.f_surface(1.0, 1.0, cs, p))))
    detail = f"{grid}^3 params x {n_c} c"
    return [
        Check("S1,S2,S4 >= 0 and S3 <= 0", sign_bad <= 0, max(sign_bad, 0.0), 0.0, detail),
        Check("S3 < 0 and S3 + 2 S4 > 0", saddle_bad < 0, saddle_bad, 0.0, detail),
        _le("grid max of F equals F(1,1)", surf, 1e-12, f"{detail}, {square_n}^2 square"),
    ]


# --------------------------------------------------------------- profile

def profile_checks(params: Iterable[bd.ClassParams], grid_n: int = 101) -> List[Check]:
    over = -np.inf
    gap = 0.0
    coherence = 0.0
    n_eq = 0
    cs = np.linspace(0, 2, 201)[1:-1]
    for p in params:
        res = bd.hankel_bound(p)
        best, _ = orc.brute_max_profile(p, grid_n)
        over = max(over, best - res.bound)
        exact = res.case in (bd.SignCase.BOTH_NONNEG, bd.SignCase.BOTH_NONPOS) or (
            res.case is bd.SignCase.NEG_POS and res.c0 is not None)
        if exact:
            n_eq += 1
            gap = max(gap, abs(best - res.bound))
        if res.case is bd.SignCase.BOTH_NONNEG:
            coherence = max(coherence, -np.min(bd.k_derivative(cs, p)))
        elif res.case is bd.SignCase.BOTH_NONPOS:
            coherence = max(coherence, np.max(bd.k_derivative(cs, p)))
    return [
        _le("brute max K <= bound", over, 1e-10),
        _le("brute max K = bound where exact", gap, 1e-8, f"{n_eq} exact-case points"),
        _le("K' sign matches case", coherence, 1e-12),
    ]


def corollary_checks(n_t: int = 200, lams: Sequence[float] = (1.0, 1.5, 2.0, 3.0),
                     mus: Sequence[float] = (0.0, 0.5, 1.0, 2.0, 3.0)) -> List[Check]:
    ts = np.linspace(0.501, 0.999, n_t)

    def rel(a, b):
        return abs(a - b) / max(1.0, abs(b))

    cor1 = cor2 = 0.0
    for t in ts:
        for lam in lams:
            r, g = bd.bound_corollary1(lam, t), bd.hankel_bound(bd.ClassParams(lam, 1.0, t))
            cor1 = max(cor1, rel(r.m1, g.m1), rel(r.m2, g.m2), rel(r.bound, g.bound))
        for mu in mus:
            r, g = bd.bound_corollary2(mu, t), bd.hankel_bound(bd.ClassParams(1.0, mu, t))
            cor2 = max(cor2, rel(r.m1, g.m1), rel(r.m2, g.m2), rel(r.bound, g.bound))
    checks = [
        _le("mu=1 subclass formula = general bound", cor1, 1e-10),
        _le("lambda=1 subclass formula = general bound", cor2, 1e-10),
    ]
    for name, fn, lam, mu in (("starlike", bd.bound_starlike_closed, 1.0, 0.0),
                              ("b-sigma", bd.bound_bsigma_closed, 1.0, 1.0)):
        rep = closed_form_report(fn, lam, mu, ts)
        checks.append(Check(
            f"{name} closed form vs general bound",
            rep["unexplained"] == 0,
            rep["max_explained_gap"],
            1e-10,
            f"agree={rep['agree']} known-issue={rep['explained']} "
            f"window=({rep['window'][0]:.6f}, {rep['window'][1]:.6f})" if rep["explained"]
            else f"agree={rep['agree']}",
        ))
    return checks


def closed_form_report(fn: Callable[[float], float], lam: float, mu: float, ts) -> Dict:
    """Compare a closed-form corollary with the general bound point by point.

    A disagreement counts as explained (the known issue) only when the general bound
    is in the NEG_POS case with ``c0`` outside (0, 2), and the closed form equals
    ``K`` evaluated at the exterior stationary point. That value is at least
    the general bound ``K(2)``.
    """
    agree = explained = unexplained = 0
    window = [math.inf, -math.inf]
    max_gap = 0.0
    for t in ts:
        p = bd.ClassParams(lam, mu, float(t))
        res = bd.hankel_bound(p)
        closed = fn(float(t))
        if abs(closed - res.bound) <= 1e-10 * max(1.0, abs(res.bound)):
            agree += 1
            continue
        exterior = -6 * res.m2 / res.m1 if res.m1 != 0 else math.nan
        k_ext = 4 * p.t**2 / p.B**2 - 3 * res.m2**2 / (8 * res.m1 * p.D) if res.m1 != 0 else math.nan
        if (res.case is bd.SignCase.NEG_POS and res.c0 is None and exterior >= 4
                and abs(closed - k_ext) <= 1e-8 * max(1.0, abs(k_ext)) and closed >= res.bound):
            explained += 1
            window = [min(window[0], float(t)), max(window[1], float(t))]
            max_gap = max(max_gap, closed - res.bound)
        else:
            unexplained += 1
    return {"agree": agree, "explained": explained, "unexplained": unexplained,
            "window": tuple(window), "max_explained_gap": max_gap}


def profile_suite(grid: int = 8) -> List[Check]:
    return profile_checks(param_grid(grid)) + corollary_checks()


# ------------------------------------------------------------ thresholds

def threshold_checks() -> List[Check]:
    t01 = orc.find_sign_change(lambda s: bd.m1(bd.ClassParams(1.0, 1.0, s)), 0.51, 0.99, 1e-12)
    star = orc.find_sign_change(lambda s: bd.m1(bd.ClassParams(1.0, 0.0, s)), 0.51, 0.99, 1e-12)
    m2_star = orc.scan_roots(lambda s: bd.m2(bd.ClassParams(1.0, 0.0, s)), 0.501, 0.999)
    return [
        _le("M1(1,1;t) root vs 0.603615", abs(t01 - BSIGMA_T01_REFERENCE), 1e-5, f"root={t01:.12f}"),
        Check("M1(1,1;t) root in [0.60360, 0.60363]", 0.60360 <= t01 <= 0.60363,
              abs(t01 - BSIGMA_T01_REFERENCE), 1.5e-5, f"root={t01:.12f}"),
        _le("bisection root = cached threshold", abs(t01 - bd.bsigma_threshold()), 1e-11),
        _le("M1(1,0;t) root vs (7+sqrt 401)/44", abs(star - bd.STARLIKE_THRESHOLD), 1e-9,
            f"root={star:.12f}, M2(1,0;t) roots on (1/2,1): {len(m2_star)}"),
    ]


# ------------------------------------------------------------ Monte Carlo

MC_PARAMS = [(l, m, t) for l in (1.0, 2.0) for m in (0.0, 1.0, 2.0) for t in (0.55, 0.75, 0.95)]


def montecarlo_suite(samples: int, seed: int, tol: float = 1e-9, workers: int = 1,
                     params: Sequence = MC_PARAMS) -> List[Check]:
    checks = []
    for lam, mu, t in params:
        p = bd.ClassParams(lam, mu, t)
        rep = orc.monte_carlo_check(p, samples, seed, tol=tol, workers=workers)
        tag = f"(lam={lam:g}, mu={mu:g}, t={t:g})"
        checks.append(Check(
            f"no violations {tag}", rep.violations == 0, rep.max_observed - rep.bound, tol,
            f"max={rep.max_observed:.6g} bound={rep.bound:.6g} violations={rep.violations}"))
        checks.append(Check(
            f"majorant chain {tag}", rep.min_chain_margin >= -1e-10, -rep.min_chain_margin, 1e-10))
    return checks


SUITES = ("cheb", "series", "surface", "profile", "montecarlo", "thresholds")


def run_suite(name: str, samples: int = 10_000, seed: int = 0, tol: float = 1e-9,
              workers: int = 1) -> List[Check]:
    if name == "cheb":
        return cheb_suite()
    if name == "series":
        return series_suite(samples=min(samples, 10_000), seed=seed)
    if name == "surface":
        return surface_suite()
    if name == "profile":
        return profile_suite()
    if name == "montecarlo":
        return montecarlo_suite(samples, seed, tol, workers)
    if name == "thresholds":
        return threshold_checks()
    raise ValueError(f"unknown suite {name!r}")
