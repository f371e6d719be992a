"""Discretized primal-dual solver for Global ECC.

Same growth loop as the robust solver with the global dual's rates (alpha of
every candidate moves with lambda) and a different stopping metric: the total
extra-color demand sum_{v in R}(chi_v - 1) must fit the budget. Candidate
nodes then keep all their loose colors.
"""

from __future__ import annotations

from typing import Callable, Optional

from ._stepper import GrowthState, freeze_certificate, grow_duals, majority_color
from .core import (
    EdgeColoredHypergraph,
    MultiColoring,
    Problem,
    ProblemSpec,
    ValidationError,
)
from .dual import DualCertificate
from .rational import Q, QLike, as_q, ceil_q


def global_bicriteria_threshold(budget: int, epsilon: QLike) -> int:
    """tau = ceil(2b/eps) - 1 for eps in (0, 2b], b >= 1; budget violation
    factor stays below 1 + 2/eps."""
    eps = as_q(epsilon)
    if budget < 1:
        raise ValidationError(f"bicriteria global budget must be >= 1, got {budget}")
    if not 0 < eps <= 2 * budget:
        raise ValidationError(f"epsilon must lie in (0, {2 * budget}], got {eps}")
    return ceil_q(Q(2 * budget) / eps) - 1


def solve_global(
    h: EdgeColoredHypergraph,
    spec: ProblemSpec,
    *,
    on_step: Optional[Callable[[GrowthState], None]] = None,
) -> tuple[MultiColoring, DualCertificate]:
    """Return (multi-coloring, dual certificate).

    Every node keeps all its loose colors; the stop condition already charges
    candidates' extra colors to the budget, so sum_v max(|sigma(v)|-1, 0)
    <= b + tau. Nodes with no loose color get one majority color (heuristic
    on) or stay empty (off).
    """
    if spec.kind is not Problem.GLOBAL:
        raise ValidationError(f"solve_global needs a global spec, got {spec.kind.value}")
    spec.validate_for(h)
    state = grow_duals(h, Problem.GLOBAL, spec.budget + spec.threshold_extra, on_step)
    sigma: list[frozenset[int]] = []
    for v in range(h.node_count):
        live = state.live_colors[v]
        if v not in state.removal_set:
            # sentinel: R bookkeeping broke if a non-candidate still holds >= 2
            assert len(live) <= 1, "non-candidate node kept several loose colors"
        if live:
            sigma.append(frozenset(live))
        elif spec.fill_heuristic:
            sigma.append(frozenset((majority_color(h, v),)))
        else:
            sigma.append(frozenset())
    return MultiColoring(tuple(sigma)), freeze_certificate(h, state)
