"""Run reports: per-run metrics plus the embedded certificate and assignment.

A report is self-contained evidence: `verify_report` re-checks the embedded
certificate against the instance and recomputes every derived number, so a
saved report can be audited independently of the solver that produced it.
JSON emission is canonical (sorted keys, fixed separators); wall time is None
unless timings were requested, keeping reports byte-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .core import (
    Assignment,
    EdgeColoredHypergraph,
    MultiColoring,
    Problem,
    ProblemSpec,
    RobustColoring,
    count_mistakes,
    is_trivial,
    relative_error,
)
from .dual import DualCertificate, dual_objective, verify_dual
from .rational import Q, format_q, parse_q

SCHEMA = "ecc-report/1"
BOUND_DUAL = "dual-certificate"
BOUND_ORACLE = "exact-oracle"


def claimed_ratio_bound(spec: ProblemSpec) -> Q:
    """The certificate ratio the solver guarantees: mistakes <= bound * dual
    objective. Local: 1 + b_max/(tau+1); Robust/Global: 2 + 2b/(tau+1).
    With tau = 0 these are b_max+1 and 2b+2."""
    t = spec.threshold_extra + 1
    if spec.kind is Problem.LOCAL:
        return 1 + Q(spec.max_budget(), t)
    return 2 + Q(2 * spec.budget, t)


# -- JSON codecs ----------------------------------------------------------------


def _opt_q(q: Optional[Q]) -> Optional[str]:
    return None if q is None else format_q(q)


def assignment_to_obj(a: Assignment) -> dict:
    if isinstance(a, MultiColoring):
        return {"type": "multi", "colors": [sorted(s) for s in a.colors]}
    return {
        "type": "robust",
        "removed": sorted(a.removed),
        "colors": list(a.color),
    }


def assignment_from_obj(d: dict) -> Assignment:
    if d["type"] == "multi":
        return MultiColoring(tuple(frozenset(s) for s in d["colors"]))
    if d["type"] == "robust":
        return RobustColoring(frozenset(d["removed"]), tuple(d["colors"]))
    raise ValueError(f"unknown assignment type {d['type']!r}")


def certificate_to_obj(cert: DualCertificate) -> dict:
    return {
        "alpha": [format_q(a) for a in cert.alpha],
        "beta": [[format_q(b) for b in row] for row in cert.beta],
        "lambda": format_q(cert.lam),
        "levels": [format_q(l) for l in cert.levels],
    }


def certificate_from_obj(d: dict) -> DualCertificate:
    return DualCertificate(
        alpha=tuple(parse_q(a) for a in d["alpha"]),
        beta=tuple(tuple(parse_q(b) for b in row) for row in d["beta"]),
        lam=parse_q(d["lambda"]),
        levels=tuple(parse_q(l) for l in d["levels"]),
    )


# -- the report -----------------------------------------------------------------


@dataclass
class RunReport:
    instance_id: str
    nodes: int
    edges: int
    colors: int
    problem: str
    budget: Optional[int]
    node_budgets: Optional[tuple[int, ...]]
    epsilon: Optional[Q]
    tau: int
    fill_heuristic: bool
    order_seed: Optional[int]
    trivial: bool
    mistake_weight: Q
    lower_bound: Q
    bound_source: str
    relative_error: Q
    claimed_ratio: Q
    measured_ratio: Optional[Q]
    wall_time_s: Optional[float]
    assignment: Assignment
    certificate: DualCertificate

    def spec(self) -> ProblemSpec:
        return ProblemSpec(
            kind=Problem(self.problem),
            budget=self.budget,
            node_budgets=self.node_budgets,
            threshold_extra=self.tau,
            fill_heuristic=self.fill_heuristic,
        )

    def to_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "instance_id": self.instance_id,
            "nodes": self.nodes,
            "edges": self.edges,
            "colors": self.colors,
            "problem": self.problem,
            "budget": self.budget,
            "node_budgets": list(self.node_budgets) if self.node_budgets is not None else None,
            "epsilon": _opt_q(self.epsilon),
            "tau": self.tau,
            "fill_heuristic": self.fill_heuristic,
            "order_seed": self.order_seed,
            "trivial": self.trivial,
            "mistake_weight": format_q(self.mistake_weight),
            "lower_bound": format_q(self.lower_bound),
            "bound_source": self.bound_source,
            "relative_error": format_q(self.relative_error),
            "claimed_ratio": format_q(self.claimed_ratio),
            "measured_ratio": _opt_q(self.measured_ratio),
            "wall_time_s": self.wall_time_s,
            "assignment": assignment_to_obj(self.assignment),
            "certificate": certificate_to_obj(self.certificate),
        }

    @classmethod
    def from_obj(cls, d: dict) -> "RunReport":
        return cls(
            instance_id=d["instance_id"],
            nodes=d["nodes"],
            edges=d["edges"],
            colors=d["colors"],
            problem=d["problem"],
            budget=d["budget"],
            node_budgets=tuple(d["node_budgets"]) if d["node_budgets"] is not None else None,
            epsilon=parse_q(d["epsilon"]) if d["epsilon"] is not None else None,
            tau=d["tau"],
            fill_heuristic=d["fill_heuristic"],
            order_seed=d["order_seed"],
            trivial=d["trivial"],
            mistake_weight=parse_q(d["mistake_weight"]),
            lower_bound=parse_q(d["lower_bound"]),
            bound_source=d["bound_source"],
            relative_error=parse_q(d["relative_error"]),
            claimed_ratio=parse_q(d["claimed_ratio"]),
            measured_ratio=parse_q(d["measured_ratio"]) if d["measured_ratio"] is not None else None,
            wall_time_s=d["wall_time_s"],
            assignment=assignment_from_obj(d["assignment"]),
            certificate=certificate_from_obj(d["certificate"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_obj(json.loads(text))


CSV_FIELDS = (
    "instance_id",
    "problem",
    "budget",
    "node_budgets",
    "epsilon",
    "tau",
    "fill_heuristic",
    "order_seed",
    "nodes",
    "edges",
    "colors",
    "trivial",
    "mistake_weight",
    "lower_bound",
    "bound_source",
    "relative_error",
    "claimed_ratio",
    "measured_ratio",
    "wall_time_s",
    "assignment",
    "certificate",
    "error",
)


def report_to_csv_row(r: RunReport) -> list[str]:
    obj = r.to_obj()

    def cell(name: str) -> str:
        if name == "error":
            return ""
        val = obj[name]
        if val is None:
            return ""
        if name in ("assignment", "certificate", "node_budgets"):
            return json.dumps(val, sort_keys=True, separators=(",", ":"))
        if isinstance(val, bool):
            return "true" if val else "false"
        if isinstance(val, float):
            return repr(val)
        return str(val)

    return [cell(name) for name in CSV_FIELDS]


def report_from_csv_row(row: list[str]) -> RunReport:
    cells = dict(zip(CSV_FIELDS, row))

    def opt(name, conv):
        return conv(cells[name]) if cells[name] != "" else None

    d = {
        "schema": SCHEMA,
        "instance_id": cells["instance_id"],
        "problem": cells["problem"],
        "budget": opt("budget", int),
        "node_budgets": opt("node_budgets", json.loads),
        "epsilon": opt("epsilon", str),
        "tau": int(cells["tau"]),
        "fill_heuristic": cells["fill_heuristic"] == "true",
        "order_seed": opt("order_seed", int),
        "nodes": int(cells["nodes"]),
        "edges": int(cells["edges"]),
        "colors": int(cells["colors"]),
        "trivial": cells["trivial"] == "true",
        "mistake_weight": cells["mistake_weight"],
        "lower_bound": cells["lower_bound"],
        "bound_source": cells["bound_source"],
        "relative_error": cells["relative_error"],
        "claimed_ratio": cells["claimed_ratio"],
        "measured_ratio": opt("measured_ratio", str),
        "wall_time_s": opt("wall_time_s", float),
        "assignment": json.loads(cells["assignment"]),
        "certificate": json.loads(cells["certificate"]),
    }
    return RunReport.from_obj(d)


def build_report(
    h: EdgeColoredHypergraph,
    spec: ProblemSpec,
    assignment: Assignment,
    cert: DualCertificate,
    *,
    instance_id: str,
    epsilon: Optional[Q] = None,
    order_seed: Optional[int] = None,
    wall_time_s: Optional[float] = None,
    lower_bound: Optional[Q] = None,
    bound_source: str = BOUND_DUAL,
) -> RunReport:
    """Assemble a report from a solver run; `lower_bound` overrides the dual
    objective when the exact oracle supplied L."""
    mistakes = count_mistakes(h, spec, assignment)
    if lower_bound is None:
        lower_bound = dual_objective(h, spec, cert)
        bound_source = BOUND_DUAL
    return RunReport(
        instance_id=instance_id,
        nodes=h.node_count,
        edges=h.num_edges,
        colors=h.num_colors,
        problem=spec.kind.value,
        budget=spec.budget,
        node_budgets=spec.node_budgets,
        epsilon=epsilon,
        tau=spec.threshold_extra,
        fill_heuristic=spec.fill_heuristic,
        order_seed=order_seed,
        trivial=is_trivial(h, spec),
        mistake_weight=mistakes,
        lower_bound=lower_bound,
        bound_source=bound_source,
        relative_error=relative_error(mistakes, lower_bound),
        claimed_ratio=claimed_ratio_bound(spec),
        measured_ratio=(mistakes / lower_bound) if lower_bound != 0 else None,
        wall_time_s=wall_time_s,
        assignment=assignment,
        certificate=cert,
    )


def verify_report(h: EdgeColoredHypergraph, report: RunReport) -> list[str]:
    """Independently re-check a saved report against its instance.

    Returns a list of problems (empty means the report verifies): certificate
    feasibility, assignment feasibility and mistake weight, the lower bound's
    provenance, and the derived ratio/error fields.
    """
    problems: list[str] = []
    if (report.nodes, report.edges, report.colors) != (
        h.node_count,
        h.num_edges,
        h.num_colors,
    ):
        problems.append("instance shape does not match the report")
        return problems
    spec = report.spec()
    verdict = verify_dual(h, spec, report.certificate)
    if not verdict.feasible:
        problems.extend(f"dual: {v}" for v in verdict.violations)
        return problems
    try:
        mistakes = count_mistakes(h, spec, report.assignment)
    except Exception as exc:  # infeasible assignment
        problems.append(f"assignment: {exc}")
        return problems
    if mistakes != report.mistake_weight:
        problems.append(
            f"mistake weight {report.mistake_weight} != recomputed {mistakes}"
        )
    obj = dual_objective(h, spec, report.certificate)
    if report.bound_source == BOUND_DUAL:
        if obj != report.lower_bound:
            problems.append(f"lower bound {report.lower_bound} != dual objective {obj}")
    else:
        if not obj <= report.lower_bound <= mistakes:
            problems.append(
                f"oracle bound {report.lower_bound} outside [dual {obj}, mistakes {mistakes}]"
            )
    if report.relative_error != relative_error(report.mistake_weight, report.lower_bound):
        problems.append("relative error does not match (A - L)/L")
    if report.claimed_ratio != claimed_ratio_bound(spec):
        problems.append("claimed ratio does not match the solver guarantee for these parameters")
    if report.lower_bound != 0:
        measured = report.mistake_weight / report.lower_bound
        if report.measured_ratio != measured:
            problems.append("measured ratio does not match A/L")
        if measured > report.claimed_ratio:
            problems.append(
                f"measured ratio {measured} exceeds claimed {report.claimed_ratio}"
            )
    elif report.measured_ratio is not None:
        problems.append("measured ratio must be null when the lower bound is 0")
    return problems
