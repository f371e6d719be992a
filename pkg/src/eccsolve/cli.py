"""Command-line interface.

Subcommands: solve, oracle, gen (ig-local | ig-robust | ig-global | random |
ekvc), stats, bench, verify, import. Exit codes: 0 ok, 2 parse error,
3 validation error, 4 certificate-verification failure, 5 oracle limits
exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional

from . import solve
from .bench import run_benchmark, write_bench_csv
from .core import Problem, ProblemSpec, ValidationError, compute_stats
from .dual import CertificateError, FractionalSolution, verify_dual
from .formats import FormatError, emit_instance, import_simple, load_instance
from .generators import (
    KUniformHypergraph,
    gen_ig_global,
    gen_ig_local,
    gen_ig_robust,
    gen_random,
    reduce_ekvc,
)
from .global_budget import global_bicriteria_threshold
from .local import local_bicriteria_threshold
from .oracle import OracleLimitError, brute_global, brute_local, brute_robust
from .robust import robust_bicriteria_threshold
from .rational import Q, format_q, parse_q
from .reports import (
    BOUND_ORACLE,
    CSV_FIELDS,
    RunReport,
    assignment_to_obj,
    build_report,
    report_to_csv_row,
    verify_report,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CERTIFICATE = 4
EXIT_ORACLE_LIMIT = 5


def _write_text(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_budgets_file(path: str) -> tuple[int, ...]:
    toks = Path(path).read_text(encoding="utf-8").split()
    try:
        return tuple(int(t) for t in toks)
    except ValueError as exc:
        raise FormatError(f"budgets file {path}: {exc}") from None


def _parse_epsilon(text: str) -> Q:
    try:
        return parse_q(text)
    except ValueError:
        raise ValidationError(f"bad epsilon {text!r}; expected an integer or num/den") from None


_THRESHOLDS = {
    Problem.LOCAL: local_bicriteria_threshold,
    Problem.ROBUST: robust_bicriteria_threshold,
    Problem.GLOBAL: global_bicriteria_threshold,
}


def _build_spec(args) -> tuple[ProblemSpec, Optional[Q]]:
    problem = Problem(args.problem)
    node_budgets = _read_budgets_file(args.budgets_file) if args.budgets_file else None
    budget = args.budget
    if problem is Problem.LOCAL:
        if budget is None and node_budgets is None:
            raise ValidationError("local solve needs --budget or --budgets-file")
        if budget is not None and node_budgets is not None:
            raise ValidationError("--budget and --budgets-file are mutually exclusive")
    elif budget is None:
        raise ValidationError(f"{problem.value} solve needs --budget")
    epsilon = _parse_epsilon(args.epsilon) if args.epsilon is not None else None
    tau = args.tau or 0
    if epsilon is not None:
        if args.tau:
            raise ValidationError("--epsilon derives tau; do not also pass --tau")
        if node_budgets is not None:
            raise ValidationError("--epsilon needs a uniform --budget, not --budgets-file")
        tau = _THRESHOLDS[problem](budget, epsilon)
    spec = ProblemSpec(
        kind=problem,
        budget=budget,
        node_budgets=node_budgets,
        threshold_extra=tau,
        fill_heuristic=not args.no_fill,
    )
    return spec, epsilon


def _emit_report(report: RunReport, args) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(CSV_FIELDS)
        w.writerow(report_to_csv_row(report))
        _write_text(buf.getvalue(), args.output)
    else:
        _write_text(report.to_json(), args.output)


def cmd_solve(args) -> int:
    h = load_instance(args.input)
    spec, epsilon = _build_spec(args)
    start = time.perf_counter()
    assignment, cert = solve(h, spec, order_seed=args.seed)
    elapsed = time.perf_counter() - start
    verdict = verify_dual(h, spec, cert)
    if not verdict.feasible:
        raise CertificateError(
            "solver certificate failed verification: " + "; ".join(verdict.violations)
        )
    lower = None
    source = None
    if args.oracle:
        if spec.kind is Problem.LOCAL:
            budgets = spec.node_budgets if spec.node_budgets is not None else spec.budget
            lower, _ = brute_local(h, budgets)
        elif spec.kind is Problem.ROBUST:
            lower, _ = brute_robust(h, spec.budget)
        else:
            lower, _ = brute_global(h, spec.budget)
        source = BOUND_ORACLE
    report = build_report(
        h,
        spec,
        assignment,
        cert,
        instance_id=Path(args.input).name,
        epsilon=epsilon,
        order_seed=args.seed if spec.kind is Problem.LOCAL else None,
        wall_time_s=elapsed if args.timings else None,
        lower_bound=lower,
        bound_source=source or "dual-certificate",
    )
    _emit_report(report, args)
    return EXIT_OK


def cmd_oracle(args) -> int:
    h = load_instance(args.input)
    problem = Problem(args.problem)
    if problem is Problem.LOCAL:
        budgets = _read_budgets_file(args.budgets_file) if args.budgets_file else args.budget
        if budgets is None:
            raise ValidationError("oracle local needs --budget or --budgets-file")
        cost, assignment = brute_local(h, budgets)
    else:
        if args.budget is None:
            raise ValidationError(f"oracle {problem.value} needs --budget")
        fn = brute_robust if problem is Problem.ROBUST else brute_global
        cost, assignment = fn(h, args.budget)
    obj = {
        "instance_id": Path(args.input).name,
        "problem": problem.value,
        "budget": args.budget,
        "optimum": format_q(cost),
        "assignment": assignment_to_obj(assignment),
    }
    _write_text(_json_text(obj), args.output)
    return EXIT_OK


def _frac_to_obj(frac: FractionalSolution) -> dict:
    return {
        "x": {f"{v},{c}": format_q(val) for (v, c), val in sorted(frac.x.items())},
        "y": [format_q(val) for val in frac.y],
        "z": [format_q(val) for val in frac.z] if frac.z is not None else None,
    }


def cmd_gen(args) -> int:
    frac = None
    extra_note = None
    if args.family == "ig-local":
        h, frac = gen_ig_local(args.budget, args.edges)
    elif args.family == "ig-robust":
        h, frac = gen_ig_robust(args.budget)
    elif args.family == "ig-global":
        h, frac = gen_ig_global(args.budget)
    elif args.family == "random":
        h = gen_random(args.nodes, args.edges, args.colors, args.max_rank, args.seed)
    else:  # ekvc
        k_input = load_instance(args.input)
        sizes = {len(m) for m in k_input.edge_members}
        if len(sizes) > 1:
            raise ValidationError(f"input hypergraph is not uniform: edge sizes {sorted(sizes)}")
        k = args.k if args.k is not None else (sizes.pop() if sizes else None)
        if k is None:
            raise ValidationError("edgeless input: pass --k explicitly")
        K = KUniformHypergraph(
            k_input.node_count, k, tuple(k_input.edge_members)
        )
        red = reduce_ekvc(K)
        h = red.instance
        extra_note = f"reduced vertex-cover instance; solve with: local --budget {red.budget}"
        if args.maps:
            Path(args.maps).write_text(
                _json_text(
                    {
                        "budget": red.budget,
                        "edge_to_vertex": list(red.edge_to_vertex),
                        "dropped_vertices": list(red.dropped_vertices),
                    }
                ),
                encoding="utf-8",
            )
    _write_text(emit_instance(h), args.output)
    if frac is not None and args.fractional:
        Path(args.fractional).write_text(_json_text(_frac_to_obj(frac)), encoding="utf-8")
    if extra_note:
        print(extra_note, file=sys.stderr)
    return EXIT_OK


def cmd_stats(args) -> int:
    h = load_instance(args.input)
    s = compute_stats(h)
    obj = {
        "nodes": s.nodes,
        "edges": s.edges,
        "colors": s.colors,
        "rank": s.rank,
        "avg_degree": format_q(s.avg_degree),
        "avg_degree_float": float(s.avg_degree),
        "max_color_degree": s.max_color_degree,
        "avg_color_degree": format_q(s.avg_color_degree),
        "avg_color_degree_float": float(s.avg_color_degree),
        "intersect_ratio": format_q(s.intersect_ratio),
        "intersect_ratio_float": float(s.intersect_ratio),
    }
    _write_text(_json_text(obj), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    problems = []
    for name in args.problems.split(","):
        name = name.strip()
        if name:
            problems.append(Problem(name))
    budgets = None
    if args.budgets:
        budgets = [int(t) for t in args.budgets.replace(",", " ").split()]
    result = run_benchmark(
        args.input_dir,
        problems=problems,
        budgets=budgets,
        fill_heuristic=not args.no_fill,
        timings=not args.no_timings,
    )
    if args.format == "json":
        obj = {
            "reports": [r.to_obj() for r in result.reports],
            "failures": [{"instance_id": f.instance_id, "error": f.error} for f in result.failures],
        }
        _write_text(_json_text(obj), args.output)
    else:
        buf = io.StringIO()
        write_bench_csv(result, buf)
        _write_text(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    h = load_instance(args.input)
    try:
        report = RunReport.from_json(Path(args.report).read_text(encoding="utf-8"))
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"unreadable report {args.report}: {exc}") from None
    problems = verify_report(h, report)
    if problems:
        raise CertificateError("; ".join(problems))
    print(
        f"report verifies: mistakes={format_q(report.mistake_weight)} "
        f"lower_bound={format_q(report.lower_bound)} ({report.bound_source}) "
        f"claimed_ratio={format_q(report.claimed_ratio)}"
    )
    return EXIT_OK


def cmd_import(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    if args.mode != "simple":
        raise ValidationError(f"unknown import mode {args.mode!r}")
    h, node_labels, color_labels = import_simple(text)
    _write_text(emit_instance(h), args.output)
    if args.labels:
        Path(args.labels).write_text(
            _json_text({"nodes": node_labels, "colors": color_labels}), encoding="utf-8"
        )
    print(
        f"imported {h.node_count} nodes, {h.num_edges} edges, {h.num_colors} colors",
        file=sys.stderr,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="eccsolve", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_io(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="instance file (v1 format)")
        p.add_argument("--output", default=None, help="output path (default: stdout)")

    p = sub.add_parser("solve", help="run a primal-dual solver, emit a certified report")
    p.add_argument("problem", choices=[k.value for k in Problem])
    add_io(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--budgets-file", default=None, help="per-node local budgets, whitespace-separated")
    p.add_argument("--epsilon", default=None, help="bicriteria epsilon (int or num/den); derives tau")
    p.add_argument("--tau", type=int, default=0, help="explicit budget slack tau")
    p.add_argument("--no-fill", action="store_true", help="disable the fill heuristic")
    p.add_argument("--seed", type=int, default=None, help="shuffle local node order")
    p.add_argument("--oracle", action="store_true", help="lower bound from the exact oracle")
    p.add_argument("--timings", action="store_true", help="include wall time in the report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search (tiny instances)")
    p.add_argument("problem", choices=[k.value for k in Problem])
    add_io(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--budgets-file", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit generated instances in the v1 format")
    fam = p.add_subparsers(dest="family", required=True)
    g = fam.add_parser("ig-local", help="local worst-case family")
    g.add_argument("--budget", type=int, required=True)
    g.add_argument("--edges", type=int, required=True)
    g.add_argument("--fractional", default=None, help="write the companion fractional solution (JSON)")
    add_io(g, needs_input=False)
    g.set_defaults(func=cmd_gen)
    for name in ("ig-robust", "ig-global"):
        g = fam.add_parser(name, help=f"{name[3:]} worst-case family")
        g.add_argument("--budget", type=int, required=True)
        g.add_argument("--fractional", default=None)
        add_io(g, needs_input=False)
        g.set_defaults(func=cmd_gen)
    g = fam.add_parser("random", help="seeded random instance (SplitMix64)")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--edges", type=int, required=True)
    g.add_argument("--colors", type=int, default=3)
    g.add_argument("--max-rank", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    add_io(g, needs_input=False)
    g.set_defaults(func=cmd_gen, fractional=None)
    g = fam.add_parser("ekvc", help="vertex-cover reduction (budget k-1)")
    g.add_argument("--input", required=True, help="k-uniform hypergraph, v1 format (colors ignored)")
    g.add_argument("--k", type=int, default=None, help="uniformity (required when edgeless)")
    g.add_argument("--maps", default=None, help="write edge/vertex correspondence (JSON)")
    g.add_argument("--output", default=None)
    g.set_defaults(func=cmd_gen, fractional=None)

    p = sub.add_parser("stats", help="instance statistics")
    add_io(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="run the benchmark harness over a directory")
    p.add_argument("--input-dir", required=True)
    p.add_argument("--problems", default="local,robust,global")
    p.add_argument("--budgets", default=None, help="override budget grid, e.g. '1,2,4'")
    p.add_argument("--no-fill", action="store_true")
    p.add_argument("--no-timings", action="store_true", help="deterministic output (no wall times)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="re-check a saved report against its instance")
    p.add_argument("--input", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("import", help="import third-party data (color<TAB>node,node,...)")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", default="simple")
    p.add_argument("--labels", default=None, help="write label tables (JSON)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_import)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CertificateError as exc:
        print(f"certificate verification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_LIMIT
    except BrokenPipeError:
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 0
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
