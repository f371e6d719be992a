"""Primal-dual solvers with per-run dual certificates for Local, Robust and
Global edge-colored clustering on hypergraphs."""

from __future__ import annotations

from typing import Optional

from .core import (
    Assignment,
    EdgeColoredHypergraph,
    InstanceStats,
    MultiColoring,
    Problem,
    ProblemSpec,
    RobustColoring,
    ValidationError,
    build_instance,
    check_feasible,
    compute_stats,
    count_mistakes,
    is_trivial,
    is_trivial_per_node,
    mistake_weight,
    relative_error,
)
from .dual import (
    CertificateError,
    DualCertificate,
    DualVerdict,
    FractionalSolution,
    FractionalVerdict,
    dual_objective,
    mistakes_are_tight,
    verify_dual,
    verify_fractional,
)
from .generators import (
    EkvcReduction,
    KUniformHypergraph,
    SplitMix64,
    gen_ig_global,
    gen_ig_local,
    gen_ig_robust,
    gen_random,
    reduce_ekvc,
)
from .global_budget import global_bicriteria_threshold, solve_global
from .local import local_bicriteria_threshold, select_kth_largest, solve_local
from .oracle import (
    DEFAULT_LIMITS,
    OracleLimitError,
    OracleLimits,
    brute_global,
    brute_local,
    brute_robust,
    optimum_table,
)
from .rational import Q, as_q, format_q, parse_q
from .robust import robust_bicriteria_threshold, solve_robust

__version__ = "0.1.0"


def solve(
    h: EdgeColoredHypergraph,
    spec: ProblemSpec,
    *,
    order_seed: Optional[int] = None,
):
    """Dispatch to the solver for spec.kind; returns (assignment, certificate).

    order_seed shuffles the local solver's node order and is ignored by the
    other two (their growth is simultaneous over all candidates).
    """
    if spec.kind is Problem.LOCAL:
        return solve_local(h, spec, order_seed=order_seed)
    if spec.kind is Problem.ROBUST:
        return solve_robust(h, spec)
    return solve_global(h, spec)
