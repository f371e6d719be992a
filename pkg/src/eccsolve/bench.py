"""Benchmark harness: run solvers over a directory of instances on the
standard budget grids and tabulate paper-style metrics.

Local budgets are absolute; Robust/Global grids are fractions of |V| (floored
to integers, deduplicated). Aggregates report mean relative error and wall
time per problem, overall and excluding trivial instances.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import solve
from .core import EdgeColoredHypergraph, Problem, ProblemSpec
from .formats import load_instance
from .rational import Q, Q0
from .reports import CSV_FIELDS, RunReport, build_report, report_from_csv_row, report_to_csv_row

DEFAULT_LOCAL_BUDGETS = (1, 2, 3, 4, 5, 8, 16, 32)
DEFAULT_ROBUST_RATIOS = (Q(0), Q(1, 100), Q(1, 20), Q(1, 10), Q(3, 20), Q(1, 5), Q(1, 4))
DEFAULT_GLOBAL_RATIOS = (
    Q(0), Q(1, 10), Q(1, 5), Q(3, 10), Q(2, 5), Q(1, 2),
    Q(1), Q(3, 2), Q(2), Q(5, 2), Q(3), Q(7, 2), Q(4),
)


def grid_budgets(
    problem: Problem, h: EdgeColoredHypergraph, budgets: Optional[Sequence[int]] = None
) -> list[int]:
    """The budget grid for one instance: explicit budgets, or the defaults
    (ratios of |V| for Robust/Global)."""
    if budgets is not None:
        vals = [b for b in budgets if b >= (1 if problem is Problem.LOCAL else 0)]
    elif problem is Problem.LOCAL:
        vals = list(DEFAULT_LOCAL_BUDGETS)
    else:
        ratios = DEFAULT_ROBUST_RATIOS if problem is Problem.ROBUST else DEFAULT_GLOBAL_RATIOS
        vals = [int(r * h.node_count) for r in ratios]
    return sorted(set(vals))


@dataclass
class BenchFailure:
    instance_id: str
    error: str


@dataclass
class Aggregate:
    """Summary statistics (floats; the exact values live in the rows)."""

    problem: str
    count: int
    mean_relative_error: Optional[float]
    mean_wall_time_s: Optional[float]
    nontrivial_count: int
    nontrivial_mean_relative_error: Optional[float]
    nontrivial_mean_wall_time_s: Optional[float]


@dataclass
class BenchResult:
    reports: list[RunReport]
    failures: list[BenchFailure]
    aggregates: list[Aggregate]


def _aggregate(reports: list[RunReport]) -> list[Aggregate]:
    out = []
    for problem in ("local", "robust", "global"):
        rows = [r for r in reports if r.problem == problem]
        if not rows:
            continue
        nontrivial = [r for r in rows if not r.trivial]

        def mean_err(group):
            if not group:
                return None
            return float(sum((r.relative_error for r in group), Q0) / len(group))

        def mean_time(group):
            timed = [r.wall_time_s for r in group if r.wall_time_s is not None]
            return sum(timed) / len(timed) if timed else None

        out.append(
            Aggregate(
                problem=problem,
                count=len(rows),
                mean_relative_error=mean_err(rows),
                mean_wall_time_s=mean_time(rows),
                nontrivial_count=len(nontrivial),
                nontrivial_mean_relative_error=mean_err(nontrivial),
                nontrivial_mean_wall_time_s=mean_time(nontrivial),
            )
        )
    return out


def run_benchmark(
    directory,
    problems: Sequence[Problem] = (Problem.LOCAL, Problem.ROBUST, Problem.GLOBAL),
    budgets: Optional[Sequence[int]] = None,
    fill_heuristic: bool = True,
    timings: bool = True,
) -> BenchResult:
    """One report per (instance, problem, budget); per-file failures are
    recorded and the run continues. Rows come out sorted by keys."""
    paths = sorted(Path(directory).glob("*.ecc"))
    reports: list[RunReport] = []
    failures: list[BenchFailure] = []
    for path in paths:
        try:
            h = load_instance(path)
        except Exception as exc:
            failures.append(BenchFailure(path.name, str(exc)))
            continue
        for problem in problems:
            for b in grid_budgets(problem, h, budgets):
                try:
                    spec = ProblemSpec(problem, b, fill_heuristic=fill_heuristic)
                    start = time.perf_counter()
                    assignment, cert = solve(h, spec)
                    elapsed = time.perf_counter() - start
                    reports.append(
                        build_report(
                            h,
                            spec,
                            assignment,
                            cert,
                            instance_id=path.name,
                            wall_time_s=elapsed if timings else None,
                        )
                    )
                except Exception as exc:
                    failures.append(BenchFailure(f"{path.name}[{problem.value},b={b}]", str(exc)))
    return BenchResult(reports, failures, _aggregate(reports))


_MEAN_ID = "(mean)"
_MEAN_NONTRIVIAL_ID = "(mean excl trivial)"


def write_bench_csv(result: BenchResult, fp) -> None:
    """Data rows, then failure rows (error column set), then aggregate rows;
    aggregate cells are empty-marked when a group has no rows."""
    w = csv.writer(fp)
    w.writerow(CSV_FIELDS)
    for r in result.reports:
        w.writerow(report_to_csv_row(r))
    blank = {name: "" for name in CSV_FIELDS}
    for f in result.failures:
        row = dict(blank, instance_id=f.instance_id, error=f.error)
        w.writerow([row[name] for name in CSV_FIELDS])
    for agg in result.aggregates:
        for mean_id, err, t in (
            (_MEAN_ID, agg.mean_relative_error, agg.mean_wall_time_s),
            (_MEAN_NONTRIVIAL_ID, agg.nontrivial_mean_relative_error, agg.nontrivial_mean_wall_time_s),
        ):
            row = dict(
                blank,
                instance_id=mean_id,
                problem=agg.problem,
                relative_error="" if err is None else repr(err),
                wall_time_s="" if t is None else repr(t),
            )
            w.writerow([row[name] for name in CSV_FIELDS])


def read_bench_csv(fp) -> tuple[list[RunReport], list[BenchFailure]]:
    """Parse back the data and failure rows; aggregates are derived data and
    are recomputed via _aggregate when needed."""
    rows = list(csv.reader(fp))
    assert rows and tuple(rows[0]) == CSV_FIELDS, "unrecognized bench CSV header"
    reports, failures = [], []
    for row in rows[1:]:
        cells = dict(zip(CSV_FIELDS, row))
        if cells["instance_id"] in (_MEAN_ID, _MEAN_NONTRIVIAL_ID):
            continue
        if cells["error"]:
            failures.append(BenchFailure(cells["instance_id"], cells["error"]))
        else:
            reports.append(report_from_csv_row(row))
    return reports, failures
