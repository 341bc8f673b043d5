"""Acceptance criteria, each at its pinned size and tolerance.

Every test records a single PASS/FAIL line; the lines are repeated in the
terminal summary under "acceptance criteria".
"""
import math
import time

import mpmath as mp
import numpy as np
import pytest

from hankelcert import bounds as bd
from hankelcert import oracles as orc
from hankelcert import suites
from hankelcert.bounds import ClassParams, SignCase

pytestmark = pytest.mark.acceptance

GRID = suites.param_grid(20)


def test_1_bsigma_threshold(report):
    t0 = time.perf_counter()
    root = orc.find_sign_change(lambda s: bd.m1(ClassParams(1, 1, s)), 0.51, 0.99, tol=1e-12)
    dt = time.perf_counter() - t0
    err = abs(root - 0.603615)
    ok = err <= 1e-5 and dt < 1.0
    report(1, ok, f"M1(1,1;t) root = {root:.12f}, |root - 0.603615| = {err:.2e} <= 1e-5, {dt:.3f}s")
    assert ok


def test_2_starlike_threshold(report):
    t0 = time.perf_counter()
    m1 = lambda s: bd.m1(ClassParams(1, 0, s))
    m2 = lambda s: bd.m2(ClassParams(1, 0, s))
    roots = orc.scan_roots(m1, 0.51, 0.99) + orc.scan_roots(m2, 0.51, 0.99)
    dt = time.perf_counter() - t0
    exact = (7 + math.sqrt(401)) / 44
    err = min((abs(r - exact) for r in roots), default=math.inf)
    ok = len(roots) == 1 and err <= 1e-9 and dt < 1.0
    report(2, ok, f"scanned sign change at {roots[0]:.12f} (M1), "
                  f"|diff| = {err:.2e} <= 1e-9 vs (7+sqrt 401)/44, {dt:.3f}s")
    assert ok


def test_3_closed_form_spot_values(report):
    mp.mp.dps = 40
    t = mp.mpf("0.8")
    star_hp = t**2 + t * (2 + t - 11 * t**2) ** 2 / (3 * (22 * t**2 - 7 * t - 4))
    e1 = abs(bd.hankel_bound(ClassParams(1, 0, 0.55)).bound - 8 * 0.55**2 / 3)
    e2 = abs(bd.hankel_bound(ClassParams(1, 1, 0.55)).bound - 0.55**2 * (1 - 0.55**2))
    e3 = abs(bd.bound_starlike_closed(0.8) - float(star_hp))
    e4 = abs(float(star_hp) - 1.71009523)
    ok = e1 <= 1e-12 and e2 <= 1e-12 and e3 <= 1e-10 and e4 < 1e-8
    report(3, ok, f"bound(1,0,0.55) err {e1:.1e}, bound(1,1,0.55) err {e2:.1e} (<= 1e-12); "
                  f"starlike closed(0.8) = {bd.bound_starlike_closed(0.8):.12f}, "
                  f"err vs 40-digit value {e3:.1e} <= 1e-10")
    assert ok


def test_4_surface_maximum_at_corner(report):
    t0 = time.perf_counter()
    cs = np.linspace(0, 2, 22)[1:-1]
    worst = 0.0
    off_corner = 0
    for p in GRID:
        best, arg = orc.brute_max_surface(cs, p, grid_n=101)
        worst = max(worst, float(np.max(np.abs(best - bd.f_surface(1.0, 1.0, cs, p)))))
        off_corner += int(np.sum(np.any(arg != 1.0, axis=-1)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and off_corner == 0 and dt < 30
    report(4, ok, f"20^3 params x 20 c x 101^2 square: max |grid max - F(1,1)| = {worst:.1e} "
                  f"<= 1e-12, argmax off (1,1): {off_corner}, {dt:.1f}s")
    assert ok


def test_5_profile_dominance(report):
    t0 = time.perf_counter()
    # BOTH_NONPOS does not occur for mu <= 3; three points beyond the grid
    # keep its equality branch exercised.
    extra = [ClassParams(1, 5, 0.61), ClassParams(1, 6, 0.62), ClassParams(2, 9, 0.62)]
    over, gap = -math.inf, 0.0
    counts = {c: 0 for c in SignCase}
    for p in GRID + extra:
        res = bd.hankel_bound(p)
        best, _ = orc.brute_max_profile(p, grid_n=101)
        over = max(over, best - res.bound)
        if res.case in (SignCase.BOTH_NONNEG, SignCase.BOTH_NONPOS) or (
                res.case is SignCase.NEG_POS and res.c0 is not None):
            counts[res.case] += 1
            gap = max(gap, abs(best - res.bound))
    dt = time.perf_counter() - t0
    exercised = all(counts[c] > 0 for c in (SignCase.BOTH_NONNEG, SignCase.BOTH_NONPOS,
                                            SignCase.NEG_POS))
    ok = over <= 1e-10 and gap <= 1e-8 and exercised and dt < 30
    report(5, ok, f"max(brute - bound) = {over:.1e} <= 1e-10; equality gap {gap:.1e} <= 1e-8 "
                        f"over {counts[SignCase.BOTH_NONNEG]} BOTH_NONNEG, "
                        f"{counts[SignCase.BOTH_NONPOS]} BOTH_NONPOS, "
                        f"{counts[SignCase.NEG_POS]} NEG_POS(interior c0); {dt:.1f}s")
    assert ok


def test_6_subordination_algebra(report):
    t0 = time.perf_counter()
    checks = suites.subordination_checks(samples=10_000, seed=0)
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and dt < 60
    report(6, ok, "; ".join(f"{c.name} worst {c.worst:.1e} <= 1e-10" for c in checks)
                  + f" (10^4 samples x 9 pairs), {dt:.1f}s")
    assert ok


def test_7_monte_carlo_dominance(report):
    t0 = time.perf_counter()
    violations, chain_min, headroom = 0, math.inf, math.inf
    for lam, mu, t in suites.MC_PARAMS:
        rep = orc.monte_carlo_check(ClassParams(lam, mu, t), n=100_000, seed=42, tol=1e-9)
        violations += rep.violations
        chain_min = min(chain_min, rep.min_chain_margin)
        headroom = min(headroom, rep.bound - rep.max_observed)
    dt = time.perf_counter() - t0
    ok = violations == 0 and chain_min >= -1e-10 and dt < 120
    report(7, ok, f"18 (lam,mu,t) x 10^5 samples: violations {violations}, "
                  f"min(bound - max observed) {headroom:.2e}, min chain margin {chain_min:.2e} "
                  f">= -1e-10, {dt:.1f}s")
    assert ok


def test_8_identity_suites(report):
    t0 = time.perf_counter()
    checks = suites.cheb_suite() + suites.series_suite()
    dt = time.perf_counter() - t0
    failed = [c.name for c in checks if not c.passed]
    ok = not failed and dt < 5
    report(8, ok, f"{len(checks) - len(failed)}/{len(checks)} Chebyshev and series invariants "
                  f"pass (reversion fixture included), {dt:.2f}s"
                  + (f"; failed: {failed}" if failed else ""))
    assert ok


def test_9_corollary_consistency(report):
    checks = suites.corollary_checks(n_t=200)
    by_name = {c.name: c for c in checks}
    ok = all(c.passed for c in checks)
    star = by_name["starlike closed form vs general bound"]
    bsig = by_name["b-sigma closed form vs general bound"]
    report(9, ok, f"corollary transcriptions rel err {by_name['mu=1 subclass formula = general bound'].worst:.1e}"
                  f" and {by_name['lambda=1 subclass formula = general bound'].worst:.1e} <= 1e-10; "
                  f"known-issue windows: starlike [{star.detail}], b-sigma [{bsig.detail}]")
    assert ok
    # the discrepancy must actually be detected, not silently absent
    assert "known-issue=" in star.detail and "known-issue=" in bsig.detail
