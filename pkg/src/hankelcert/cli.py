"""``hankelcert`` command line.

Exit codes: 0 success, 1 verification failure, 2 domain error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import bounds as bd
from . import oracles as orc
from .chebyshev import h_series
from .series import TruncatedSeries, class_lhs
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

CSV_FIELDS = ("t", "m1", "m2", "case", "bound", "k_at_2", "c0")


def fmt(x: Optional[float]) -> str:
    """17 significant digits: enough for an exact round trip of a double."""
    if x is None:
        return ""
    return f"{x:.17g}"


class _DomainExit(Exception):
    pass


@dataclass
class SweepSpec:
    lam: float
    mu: float
    t_min: float
    t_max: float
    steps: int
    output_path: str

    def __post_init__(self):
        if not 0.5 < self.t_min < self.t_max < 1.0:
            raise bd.DomainError("need 1/2 < t_min < t_max < 1")
        if self.steps < 2:
            raise bd.DomainError("steps must be >= 2")

    def ts(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.steps)


@dataclass
class VerifyConfig:
    suite: str = "all"
    samples: int = 10_000
    seed: int = 0
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.suite not in ("all",) + SUITES:
            raise bd.DomainError(f"unknown suite {self.suite!r}")
        if self.samples < 1:
            raise bd.DomainError("samples must be >= 1")
        if not self.tolerance > 0:
            raise bd.DomainError("tolerance must be positive")


def _row(t: float, res: bd.BoundResult) -> dict:
    return {
        "t": t,
        "m1": res.m1,
        "m2": res.m2,
        "case": res.case.value,
        "bound": res.bound,
        "k_at_2": res.k_at_2,
        "c0": res.c0,
    }


def cmd_bound(args, out) -> int:
    p = bd.ClassParams(args.lam, args.mu, args.t)
    res = bd.hankel_bound(p)
    row = _row(p.t, res)
    row.update(lam=p.lam, mu=p.mu, k_at_c0=res.k_at_c0)
    if args.format == "json":
        out.write(json.dumps(row) + "\n")
    else:
        out.write(f"lambda = {fmt(p.lam)}\nmu     = {fmt(p.mu)}\nt      = {fmt(p.t)}\n")
        out.write(f"case   = {res.case.value}\n")
        out.write(f"M1     = {fmt(res.m1)}\nM2     = {fmt(res.m2)}\n")
        out.write(f"K(2,t) = {fmt(res.k_at_2)}\n")
        if res.c0 is not None:
            out.write(f"c0     = {fmt(res.c0)}\nK(c0,t)= {fmt(res.k_at_c0)}\n")
        out.write(f"bound  = {fmt(res.bound)}\n")
    return EXIT_OK


def sweep_rows(spec: SweepSpec) -> List[dict]:
    return [_row(float(t), bd.hankel_bound(bd.ClassParams(spec.lam, spec.mu, float(t))))
            for t in spec.ts()]


def cmd_sweep(args, out) -> int:
    spec = SweepSpec(args.lam, args.mu, args.t_min, args.t_max, args.steps, args.out)
    rows = sweep_rows(spec)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in rows:
        writer.writerow([r["case"] if k == "case" else fmt(r[k]) for k in CSV_FIELDS])
    text = buf.getvalue()
    if args.format == "json":
        payload = json.dumps([{k: r[k] for k in CSV_FIELDS} for r in rows]) + "\n"
    if spec.output_path in (None, "-"):
        out.write(payload if args.format == "json" else text)
        return EXIT_OK
    try:
        with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload if args.format == "json" else text)
    except OSError as exc:
        print(f"hankelcert: cannot write {spec.output_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    out.write(f"wrote {len(rows)} rows to {spec.output_path}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = VerifyConfig(args.suite, args.samples, args.seed, args.tol)
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    failed = 0
    report = []
    for name in names:
        checks = run_suite(name, samples=cfg.samples, seed=cfg.seed, tol=cfg.tolerance,
                           workers=args.workers)
        for c in checks:
            failed += not c.passed
            report.append({"suite": name, "check": c.name, "passed": c.passed,
                           "worst": c.worst, "tol": c.tol, "detail": c.detail})
            if args.format == "text":
                out.write(f"{name:<10} {c.line()}\n")
    if args.format == "json":
        out.write(json.dumps({"config": vars(cfg), "checks": report, "failed": failed}) + "\n")
    else:
        out.write(f"{len(report) - failed}/{len(report)} checks passed "
                  f"(suite={cfg.suite}, samples={cfg.samples}, seed={cfg.seed})\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_thresholds(args, out) -> int:
    # lambda/mu only; t is what we scan.
    bd.ClassParams(args.lam, args.mu, 0.75)
    found = {}
    for name, fn in (("M1", bd.m1), ("M2", bd.m2)):
        found[name] = orc.scan_roots(lambda s, fn=fn: fn(bd.ClassParams(args.lam, args.mu, s)),
                                     0.501, 0.999, steps=2000, tol=1e-12)
    if args.format == "json":
        out.write(json.dumps({"lam": args.lam, "mu": args.mu, "roots": found}) + "\n")
        return EXIT_OK
    any_root = False
    for name, roots in found.items():
        for r in roots:
            any_root = True
            out.write(f"{name} = 0 at t = {fmt(r)}\n")
    if not any_root:
        out.write("no roots: M1 and M2 keep constant sign on (0.501, 0.999)\n")
    return EXIT_OK


def cmd_series(args, out) -> int:
    if not 0 <= args.order <= 4:
        raise _DomainExit(f"order must be between 0 and 4, got {args.order}")
    p = bd.ClassParams(args.lam, args.mu, args.t)
    # f is a polynomial, so padding with zeros is exact.
    f = TruncatedSeries([0.0, 1.0, args.a2, args.a3, args.a4]).pad(args.order + 1)
    lhs = class_lhs(f, p).truncate(args.order).coefficients.real
    hc = h_series(p.t, args.order).coefficients.real
    if args.format == "json":
        out.write(json.dumps({"lhs": lhs.tolist(), "h": hc.tolist()}) + "\n")
        return EXIT_OK
    out.write(f"{'k':>2}  {'class LHS':>24}  {'H(z,t)':>24}\n")
    for k in range(args.order + 1):
        out.write(f"{k:>2}  {fmt(lhs[k]):>24}  {fmt(hc[k]):>24}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelcert",
        description="Second Hankel determinant bounds for a Chebyshev-subordinated "
                    "bi-univalent class, with numerical verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, t=True):
        sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
        sp.add_argument("--mu", type=float, default=1.0)
        if t:
            sp.add_argument("--t", type=float, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("bound", help="bound for one (lambda, mu, t)"))

    sp = sub.add_parser("sweep", help="bound over a uniform t grid, as CSV")
    common(sp, t=False)
    sp.add_argument("--t-min", type=float, required=True)
    sp.add_argument("--t-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=50)
    sp.add_argument("--out", default="-")

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("thresholds", help="roots of M1 and M2 in t")
    common(sp, t=False)

    sp = sub.add_parser("series", help="class LHS and H(z,t) expansions side by side")
    common(sp)
    sp.add_argument("--a2", type=float, default=0.0)
    sp.add_argument("--a3", type=float, default=0.0)
    sp.add_argument("--a4", type=float, default=0.0)
    sp.add_argument("--order", type=int, default=4)
    return parser


COMMANDS = {
    "bound": cmd_bound,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "thresholds": cmd_thresholds,
    "series": cmd_series,
}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (bd.DomainError, _DomainExit) as exc:
        print(f"hankelcert: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
