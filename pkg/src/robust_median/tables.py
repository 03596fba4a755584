"""Reproduction of the minimum-coverage, coverage/length and asymptotic-length tables.

Analytic cells are computed exactly and never simulated; simulated cells carry
their standard errors.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .asymptotics import max_asymptotic_length, parametric_length
from .design import min_coverage, select_k
from .distributions import ContaminationScenario, TargetDistribution
from .errors import DomainError
from .mc import DEFAULT_REPS, MCConfig, estimate_expected_length

TABLE1_N = (20, 40, 100, 200, 500, 1000, 2000)
TABLE1_EPS = (0.0, 0.05, 0.10, 0.15)
TABLE1_LEVELS = (0.05, 0.10)
TABLE23_N = (20, 40, 60, 80, 100, 200, 500, 1000, 2000)
TABLE23_EPS = (0.0, 0.05, 0.10)
TABLE23_LEVEL = {2: 0.05, 3: 0.10}
TABLE4_EPS = (0.05, 0.10, 0.15, 0.20)

CSV_COLUMNS_23 = ("n", "eps", "k", "cp_exact", "elu_mean", "elu_se", "elc_mean", "elc_se")


@dataclass(frozen=True)
class TableRequest:
    which: int
    n_grid: tuple[int, ...] | None = None
    eps_grid: tuple[float, ...] | None = None
    reps: int = DEFAULT_REPS
    seed: int = 0
    contamination_value: float = 10.0
    format: str = "text"
    workers: int = 1
    mechanism: str = "bernoulli"

    def __post_init__(self):
        if self.which not in (1, 2, 3, 4):
            raise DomainError(f"which must be one of 1, 2, 3, 4; got {self.which!r}")
        if self.format not in ("text", "csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")
        for name in ("n_grid", "eps_grid"):
            grid = getattr(self, name)
            if grid is not None:
                if len(grid) == 0:
                    raise DomainError(f"{name} must be nonempty")
                object.__setattr__(self, name, tuple(sorted(grid)))


@dataclass
class Table:
    title: str
    columns: tuple[str, ...]
    rows: list[dict]
    meta: dict = field(default_factory=dict)


def _eps_label(eps: float) -> str:
    return f"{eps:g}"


def table1(req: TableRequest) -> Table:
    """Minimum coverage of the classical sign-test interval under contamination.

    For each sample size and nominal level the classical index (design
    contamination zero) is selected, then evaluated at every contamination
    fraction in the grid.
    """
    ns = req.n_grid or TABLE1_N
    epss = req.eps_grid or TABLE1_EPS
    cols = ("nominal_coverage", "n", "k") + tuple(f"cov_eps_{_eps_label(e)}" for e in epss)
    rows = []
    for level in TABLE1_LEVELS:
        for n in ns:
            k = select_k(n, level, 0.0).k
            row = {"nominal_coverage": round(1.0 - level, 10), "n": n, "k": k}
            for e in epss:
                row[f"cov_eps_{_eps_label(e)}"] = min_coverage(n, k, e)
            rows.append(row)
    return Table("Minimum coverage probability for contaminated samples", cols, rows,
                 {"which": 1})


def table23(req: TableRequest) -> Table:
    """Exact coverage and simulated expected lengths of the robust interval.

    ELU uses clean standard-normal data; ELC uses actual contamination equal
    to the design fraction, placed at ``req.contamination_value``.
    """
    if req.which not in (2, 3):
        raise DomainError("table23 serves which=2 or which=3")
    alpha = TABLE23_LEVEL[req.which]
    ns = req.n_grid or TABLE23_N
    epss = req.eps_grid or TABLE23_EPS
    dist = TargetDistribution.normal()
    rows = []
    for n in ns:
        for e in epss:
            spec = select_k(n, alpha, e)
            base = dict(dist=dist, n=n, alpha_target=alpha, reps=req.reps, seed=req.seed,
                        contamination_value=req.contamination_value, mechanism=req.mechanism)
            elu = estimate_expected_length(MCConfig(scenario=ContaminationScenario(e, 0.0), **base),
                                           workers=req.workers)
            row = {"n": n, "eps": e, "k": spec.k, "cp_exact": spec.coverage,
                   "elu_mean": elu.mean_length, "elu_se": elu.se_length,
                   "elc_mean": math.nan, "elc_se": math.nan}
            if e > 0.0:
                elc = estimate_expected_length(
                    MCConfig(scenario=ContaminationScenario(e, e, "+inf"), **base),
                    workers=req.workers)
                row["elc_mean"] = elc.mean_length
                row["elc_se"] = elc.se_length
            rows.append(row)
    pct = round(100 * (1 - alpha))
    return Table(
        f"Coverage probability (CP) and expected length (EL), approximate {pct}% coverage",
        CSV_COLUMNS_23, rows,
        {"which": req.which, "alpha": alpha, "reps": req.reps, "seed": req.seed,
         "contamination_value": req.contamination_value, "mechanism": req.mechanism},
    )


def table4(req: TableRequest) -> Table:
    epss = req.eps_grid or TABLE4_EPS
    normal = TargetDistribution.normal()
    rows = []
    for label, actual in (("Standard Normal", False), ("Least Favorable", True)):
        for e in epss:
            rows.append({
                "distribution": label,
                "eps": e,
                "P": parametric_length(e),
                "NP": max_asymptotic_length(normal, e, e if actual else 0.0),
            })
    return Table("Expected length of parametric (P) and nonparametric (NP) robust intervals",
                 ("distribution", "eps", "P", "NP"), rows, {"which": 4})


def build_table(req: TableRequest) -> Table:
    if req.which == 1:
        return table1(req)
    if req.which == 4:
        return table4(req)
    return table23(req)


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return str(v)


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_csv_cell(row[c]) for c in table.columns])
    return buf.getvalue()


def to_json(table: Table) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    payload = {
        "title": table.title,
        "columns": list(table.columns),
        "rows": [{c: clean(r[c]) for c in table.columns} for r in table.rows],
        "meta": table.meta,
    }
    return json.dumps(payload, indent=2) + "\n"


def to_text(table: Table) -> str:
    def fmt(v):
        if isinstance(v, float):
            if math.isnan(v):
                return "-"
            if math.isinf(v):
                return "inf"
            return f"{v:.3f}"
        return str(v)

    cells = [[fmt(r[c]) for c in table.columns] for r in table.rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(table.columns)]
    lines = [table.title,
             "  ".join(c.rjust(w) for c, w in zip(table.columns, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def render(table: Table, fmt: str = "text") -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    return to_text(table)
