"""Discretized primal-dual solver for Robust ECC.

Grows the duals of every candidate node (>= 2 loose colors) simultaneously
until at most b + tau candidates remain, removes them, and single-colors each
survivor with its unique loose color.
"""

from __future__ import annotations

from typing import Callable, Optional

from ._stepper import GrowthState, freeze_certificate, grow_duals, majority_color
from .core import (
    EdgeColoredHypergraph,
    Problem,
    ProblemSpec,
    RobustColoring,
    ValidationError,
)
from .dual import DualCertificate
from .rational import Q, QLike, as_q, ceil_q


def robust_bicriteria_threshold(budget: int, epsilon: QLike) -> int:
    """tau = ceil(2b/eps) - 1 for eps in (0, 2b], b >= 1; gives a (2+eps)
    cost guarantee with at most b + tau removals."""
    eps = as_q(epsilon)
    if budget < 1:
        raise ValidationError(f"bicriteria robust budget must be >= 1, got {budget}")
    if not 0 < eps <= 2 * budget:
        raise ValidationError(f"epsilon must lie in (0, {2 * budget}], got {eps}")
    return ceil_q(Q(2 * budget) / eps) - 1


def solve_robust(
    h: EdgeColoredHypergraph,
    spec: ProblemSpec,
    *,
    on_step: Optional[Callable[[GrowthState], None]] = None,
) -> tuple[RobustColoring, DualCertificate]:
    """Return (removals + survivor coloring, dual certificate).

    Survivors with no loose color get the majority-weight incident color
    (ties to the smallest id) when the fill heuristic is on, else stay
    uncolored; neither affects the certificate. Only the final candidate set
    is removed, never padded up to the budget.
    """
    if spec.kind is not Problem.ROBUST:
        raise ValidationError(f"solve_robust needs a robust spec, got {spec.kind.value}")
    spec.validate_for(h)
    state = grow_duals(h, Problem.ROBUST, spec.budget + spec.threshold_extra, on_step)
    removed = state.removal_set
    color: list[Optional[int]] = [None] * h.node_count
    for v in range(h.node_count):
        if v in removed:
            continue
        live = state.live_colors[v]
        assert len(live) <= 1, "non-candidate node kept several loose colors"
        if live:
            (color[v],) = live
        elif spec.fill_heuristic:
            color[v] = majority_color(h, v)
    return RobustColoring(removed, tuple(color)), freeze_certificate(h, state)
