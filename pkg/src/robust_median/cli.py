"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric-domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

from . import asymptotics as asy
from .design import (
    Sample,
    SelectionRule,
    build_interval,
    contamination_tolerance,
    min_coverage,
    robust_sign_test,
    select_k,
    sign_statistic,
)
from .distributions import Family, TargetDistribution
from .errors import DomainError
from .tables import TableRequest, build_table, render

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DOMAIN = 0, 2, 3, 4
SEED_ENV = "ROBUST_MEDIAN_SEED"
CONVENTION = "half-open [lower, upper): the upper endpoint is excluded from coverage"


class DataError(Exception):
    pass


def read_data(path: str) -> list[float]:
    """One number per line (or the first column of a CSV); '#' lines and blanks are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    values = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        first = next(csv.reader([line]))[0].strip()
        try:
            v = float(first)
        except ValueError:
            raise DataError(f"{path}:{lineno}: not a number: {first!r}") from None
        if not math.isfinite(v):
            raise DataError(f"{path}:{lineno}: non-finite value {first!r}")
        values.append(v)
    if len(values) < 2:
        raise DataError(f"{path}: need at least 2 numbers, found {len(values)}")
    return values


@dataclass
class AnalysisReport:
    command: str
    n: int
    alpha: float
    eps: float
    rule: str
    k: int
    alpha_achieved: float
    min_coverage: float
    lower: float
    upper: float
    convention: str = CONVENTION
    theta0: float | None = None
    statistic_T: int | None = None
    r_n: int | None = None
    reject: bool | None = None
    tolerance_status: str | None = None
    tau: float | None = None
    ties: int | None = None
    warnings: list[str] = field(default_factory=list)


def _analyse(args, command: str) -> AnalysisReport:
    sample = Sample(read_data(args.data))
    spec = select_k(sample.n, args.alpha, args.eps, args.rule)
    iv = build_interval(sample, spec)
    rep = AnalysisReport(
        command=command, n=sample.n, alpha=args.alpha, eps=args.eps, rule=spec.rule.value,
        k=spec.k, alpha_achieved=spec.alpha_achieved, min_coverage=iv.min_coverage,
        lower=iv.lower, upper=iv.upper, warnings=list(spec.warnings),
    )
    if command == "test":
        out = robust_sign_test(sample, args.theta0, spec)
        rep.theta0 = args.theta0
        rep.statistic_T = out.statistic_T
        rep.r_n = out.r_n
        rep.reject = out.reject
        rep.tolerance_status = out.tolerance.status.value
        rep.tau = out.tolerance.tau
        rep.ties = out.ties
        rep.warnings = list(out.warnings)
    return rep


def _format_report(rep: AnalysisReport, fmt: str) -> str:
    d = asdict(rep)
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        keys = [k for k in d if k != "warnings"]
        w.writerow(keys + ["warnings"])
        w.writerow(["" if d[k] is None else (repr(d[k]) if isinstance(d[k], float) else d[k])
                    for k in keys] + ["; ".join(rep.warnings)])
        return buf.getvalue()
    lines = [
        f"robust median {rep.command}",
        f"  inputs: n={rep.n} alpha={rep.alpha} eps={rep.eps} rule={rep.rule}"
        + (f" theta0={rep.theta0}" if rep.theta0 is not None else ""),
        f"  k = {rep.k}",
        f"  interval = [{rep.lower:.6g}, {rep.upper:.6g})  (x_({rep.k + 1}), x_({rep.n - rep.k}))",
        f"  worst-case alpha* = {rep.alpha_achieved:.6f}",
        f"  exact minimum coverage = {rep.min_coverage:.6f}",
    ]
    if rep.command == "test":
        lines += [
            f"  T = {rep.statistic_T}, r_n = {rep.r_n}",
            f"  decision: {'reject' if rep.reject else 'accept'} H0: median = {rep.theta0}",
            f"  contamination tolerance: {rep.tolerance_status}"
            + (f", tau = {rep.tau:.6f}" if rep.tau is not None else ""),
        ]
    lines.append(f"  note: {CONVENTION}")
    lines += [f"  warning: {w}" for w in rep.warnings]
    return "\n".join(lines) + "\n"


def cmd_interval(args) -> str:
    return _format_report(_analyse(args, "interval"), args.format)


def cmd_test(args) -> str:
    return _format_report(_analyse(args, "test"), args.format)


def cmd_tolerance(args) -> str:
    if args.data is not None:
        if args.theta0 is None:
            raise DataError("--theta0 is required with --data")
        sample = Sample(read_data(args.data))
        n = sample.n
        T = sign_statistic(sample, args.theta0).statistic
    elif args.n is not None and args.T is not None:
        n, T = args.n, args.T
    else:
        raise DataError("give either --data with --theta0, or --n with --T")
    res = contamination_tolerance(n, T, args.alpha)
    d = {"n": res.n, "T": T, "r_n": res.r_n, "alpha": res.alpha_target,
         "status": res.status.value, "tau": res.tau}
    if args.format == "json":
        return json.dumps(d, indent=2) + "\n"
    if args.format == "csv":
        return ",".join(d) + "\n" + ",".join("" if v is None else str(v) for v in d.values()) + "\n"
    tau = "-" if res.tau is None else f"{res.tau:.10f}"
    return (f"contamination tolerance: n={res.n} T={T} r_n={res.r_n} alpha={res.alpha_target}\n"
            f"  status = {res.status.value}\n  tau = {tau}\n")


def cmd_coverage(args) -> str:
    cov = min_coverage(args.n, args.k, args.eps)
    if args.format == "json":
        return json.dumps({"n": args.n, "k": args.k, "eps": args.eps, "min_coverage": cov}) + "\n"
    if args.format == "csv":
        return f"n,k,eps,min_coverage\n{args.n},{args.k},{args.eps!r},{cov!r}\n"
    return f"exact minimum coverage of [x_({args.k + 1}), x_({args.n - args.k})) at eps={args.eps}: {cov:.6f}\n"


def cmd_length(args) -> str:
    dist = TargetDistribution(Family(args.family), args.loc, args.scale)
    a, b = asy.optimal_limit_bounds(dist, args.eps)
    d = {
        "family": dist.family.value, "loc": dist.loc, "scale": dist.scale,
        "eps": args.eps, "delta": args.delta,
        "max_asymptotic_length": asy.max_asymptotic_length(dist, args.eps, args.delta),
        "consistency_distance": asy.consistency_distance(dist, args.eps, args.delta),
        "length_breakdown": asy.length_breakdown(args.eps),
        "power_breakdown": asy.power_breakdown(args.eps),
        "is_length_robust": asy.is_length_robust(args.eps),
        "is_power_robust": asy.is_power_robust(args.eps),
        "optimal_lower_limit": a, "optimal_upper_limit": b,
        "parametric_length": asy.parametric_length(args.eps),
    }
    if args.format == "json":
        return json.dumps({k: (None if isinstance(v, float) and math.isinf(v) else v)
                           for k, v in d.items()}, indent=2) + "\n"
    if args.format == "csv":
        return ",".join(d) + "\n" + ",".join(repr(v) if isinstance(v, float) else str(v)
                                             for v in d.values()) + "\n"
    return "".join(f"{k:>22}: {v}\n" for k, v in d.items())


def cmd_table(args) -> str:
    req = TableRequest(
        which=args.which, reps=args.reps, seed=args.seed,
        contamination_value=args.contam_location, format=args.format,
        workers=args.workers, mechanism=args.mechanism,
        n_grid=tuple(args.n_grid) if args.n_grid else None,
        eps_grid=tuple(args.eps_grid) if args.eps_grid else None,
    )
    return render(build_table(req), req.format)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="robust-median",
        description="Robust nonparametric confidence intervals and sign tests for the median.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("text", "csv", "json"), default="text")

    def analysis(sp):
        sp.add_argument("--data", required=True, help="file with one number per line")
        sp.add_argument("--alpha", type=float, default=0.05)
        sp.add_argument("--eps", type=float, default=0.05)
        sp.add_argument("--rule", choices=[r.value for r in SelectionRule], default="argmin")
        sp.add_argument("--format", **fmt)

    sp = sub.add_parser("interval", help="robust confidence interval for the median")
    analysis(sp)
    sp.set_defaults(func=cmd_interval)

    sp = sub.add_parser("test", help="robust two-sided sign test")
    analysis(sp)
    sp.add_argument("--theta0", type=float, required=True)
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("tolerance", help="contamination tolerance of a rejection")
    sp.add_argument("--data")
    sp.add_argument("--theta0", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--T", type=int)
    sp.add_argument("--alpha", type=float, default=0.05)
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_tolerance)

    sp = sub.add_parser("coverage", help="exact minimum coverage for (n, k, eps)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_coverage)

    sp = sub.add_parser("length", help="asymptotic length and breakdown measures")
    sp.add_argument("--family", choices=[f.value for f in Family], default="normal")
    sp.add_argument("--loc", type=float, default=0.0)
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--delta", type=float, default=0.0)
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_length)

    sp = sub.add_parser("table", help="reproduce one of the four tables")
    sp.add_argument("--which", type=int, choices=(1, 2, 3, 4), required=True)
    sp.add_argument("--reps", type=int, default=8000)
    sp.add_argument("--seed", type=int, default=None,
                    help=f"RNG seed (default: ${SEED_ENV} or 0)")
    sp.add_argument("--contam-location", type=float, default=10.0,
                    help="finite stand-in y for contamination at +infinity")
    sp.add_argument("--mechanism", choices=("bernoulli", "fixed"), default="bernoulli")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--n-grid", type=int, nargs="+")
    sp.add_argument("--eps-grid", type=float, nargs="+")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    try:
        out = args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
