"""Discretized primal-dual solver for Local ECC.

One pass over the nodes; at each node whose loose color-degree exceeds its
budget, the duals advance in a single discrete step sized by the
(b_v + tau + 1)-st largest per-color slack, tightening every color at or
below that slack. Total work is O(sum_v d_v).
"""

from __future__ import annotations

import random
from typing import Iterable, Optional

from .core import (
    EdgeColoredHypergraph,
    MultiColoring,
    Problem,
    ProblemSpec,
    ValidationError,
)
from .dual import DualCertificate
from .rational import Q, Q0, QLike, as_q, ceil_q


def select_kth_largest(values: Iterable[QLike], k: int) -> QLike:
    """k-th largest element counting multiplicity, worst-case linear time.

    Quickselect with a median-of-medians (groups of 5) pivot, so the bound
    holds in the worst case, not just in expectation; inputs of bounded size
    (<= 32) are simply sorted. Duplicates count:
    select_kth_largest([5,3,3,1], 2) == 3.
    """
    vals = list(values)
    if not 1 <= k <= len(vals):
        raise ValidationError(f"k={k} out of range for {len(vals)} values")
    if len(vals) <= 32:
        vals.sort(reverse=True)
        return vals[k - 1]
    return _select_smallest(vals, len(vals) - k)


def _median5(chunk) -> QLike:
    chunk.sort()
    return chunk[len(chunk) // 2]


def _select_smallest(vals, idx):
    """idx-th smallest (0-based); destructive on vals."""
    while True:
        if len(vals) <= 5:
            vals.sort()
            return vals[idx]
        medians = [_median5(vals[i : i + 5]) for i in range(0, len(vals), 5)]
        pivot = _select_smallest(medians, len(medians) // 2)
        below = [x for x in vals if x < pivot]
        above = [x for x in vals if x > pivot]
        n_equal = len(vals) - len(below) - len(above)
        if idx < len(below):
            vals = below
        elif idx < len(below) + n_equal:
            return pivot
        else:
            idx -= len(below) + n_equal
            vals = above


def local_bicriteria_threshold(budget: int, epsilon: QLike) -> int:
    """tau = ceil(b/eps) - 1 for eps in (0, b]; trades budget slack for a
    (1+eps) cost guarantee."""
    eps = as_q(epsilon)
    if budget < 1:
        raise ValidationError(f"local budget must be >= 1, got {budget}")
    if not 0 < eps <= budget:
        raise ValidationError(f"epsilon must lie in (0, {budget}], got {eps}")
    return ceil_q(Q(budget) / eps) - 1


def solve_local(
    h: EdgeColoredHypergraph,
    spec: ProblemSpec,
    *,
    order_seed: Optional[int] = None,
) -> tuple[MultiColoring, DualCertificate]:
    """Run the discretized primal-dual pass and return (coloring, certificate).

    The guarantee mistakes <= (b_max + tau + 1)/(tau + 1) * dual_objective
    holds for any node order; ascending ids by default, order_seed shuffles.
    beta within a color class is split proportionally to residual w_e - l_e
    (the split the level update induces), for reproducibility.
    """
    if spec.kind is not Problem.LOCAL:
        raise ValidationError(f"solve_local needs a local spec, got {spec.kind.value}")
    spec.validate_for(h)
    tau = spec.threshold_extra
    n, m = h.node_count, h.num_edges
    weights = h.edge_weights
    loose = [w > 0 for w in weights]
    level: list[Q] = [Q0] * m
    alpha: list[Q] = [Q0] * n
    beta_rows: list[Optional[list[Q]]] = [None] * m

    order = list(range(n))
    if order_seed is not None:
        random.Random(order_seed).shuffle(order)

    sigma: list[frozenset[int]] = [frozenset()] * n
    for v in order:
        # collect loose incidences per color first; slacks only matter when
        # the node is over budget, so the common case stays arithmetic-free
        loose_pairs: dict[int, list[tuple[int, int]]] = {}
        for c, pairs in h._color_pairs[v].items():
            live = None
            for pair in pairs:
                if loose[pair[0]]:
                    if live is None:
                        loose_pairs[c] = live = [pair]
                    else:
                        live.append(pair)
        cap = spec.budget_for(v) + tau
        if len(loose_pairs) <= cap:
            sigma[v] = frozenset(loose_pairs)
            continue
        slack: dict[int, Q] = {}
        for c, live in loose_pairs.items():
            s = Q0
            for e, _ in live:
                s += weights[e] - level[e]
            assert s > 0, "loose colors always have positive residual slack"
            slack[c] = s
        s_star = select_kth_largest(slack.values(), cap + 1)
        kept: list[int] = []
        for c, s in slack.items():
            if s <= s_star:
                # exhausted color: raise each edge to its weight, drop from L
                for e, slot in loose_pairs[c]:
                    delta = weights[e] - level[e]
                    level[e] = weights[e]
                    row = beta_rows[e]
                    if row is None:
                        row = beta_rows[e] = [Q0] * len(h.edge_members[e])
                    row[slot] += delta
                    loose[e] = False
            else:
                ratio = s_star / s
                for e, slot in loose_pairs[c]:
                    delta = ratio * (weights[e] - level[e])
                    level[e] += delta
                    row = beta_rows[e]
                    if row is None:
                        row = beta_rows[e] = [Q0] * len(h.edge_members[e])
                    row[slot] += delta
                kept.append(c)
        alpha[v] = s_star
        sigma[v] = frozenset(kept)

    if spec.fill_heuristic:
        _fill_unused_budget(h, spec, sigma)

    cert = DualCertificate(
        alpha=tuple(alpha),
        beta=tuple(
            tuple(row) if row is not None else (Q0,) * len(mem)
            for row, mem in zip(beta_rows, h.edge_members)
        ),
        lam=Q0,
        levels=tuple(level),
    )
    return MultiColoring(tuple(sigma)), cert


def _fill_unused_budget(
    h: EdgeColoredHypergraph, spec: ProblemSpec, sigma: list[frozenset[int]]
) -> None:
    """Top up under-budget nodes with incident colors, most fixable mistake
    weight first (ties by color id). Never affects the certificate."""
    tau = spec.threshold_extra
    # per edge: how many members currently lack the edge color
    missing = [0] * h.num_edges
    edge_colors, edge_members = h.edge_colors, h.edge_members
    for e in range(h.num_edges):
        c = edge_colors[e]
        cnt = 0
        for v in edge_members[e]:
            if c not in sigma[v]:
                cnt += 1
        missing[e] = cnt
    for v in range(h.node_count):
        cap = spec.budget_for(v) + tau - len(sigma[v])
        if cap <= 0:
            continue
        candidates = []
        for c, pairs in h._color_pairs[v].items():
            if c in sigma[v]:
                continue
            gain = Q0
            for e, _ in pairs:
                if missing[e] == 1:  # v is the only member still lacking c
                    gain += h.edge_weights[e]
            candidates.append((gain, c))
        if not candidates:
            continue
        candidates.sort(key=lambda gc: (-gc[0], gc[1]))
        added = [c for _, c in candidates[:cap]]
        for c in added:
            for e, _ in h._color_pairs[v][c]:
                missing[e] -= 1
        sigma[v] = sigma[v] | frozenset(added)
