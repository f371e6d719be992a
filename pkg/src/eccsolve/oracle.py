"""Exact exponential-time solvers for tiny instances, used as ground truth.

All three problems reduce to one enumeration: a set T of edges can be made
simultaneously satisfied iff the per-node color requirements chi_T(v) :=
{colors of T's edges at v} fit the budget --

  local:  |chi_T(v)| <= b_v for every v,
  robust: #{v : |chi_T(v)| >= 2} <= b   (those nodes are removed),
  global: sum_v max(|chi_T(v)| - 1, 0) <= b,

and conversely the satisfied set of any feasible solution has that property.
So OPT = total weight - max weight of a satisfiable T, found by scanning all
2^|E| subsets; the search space is 2^|E| regardless of node count, which the
limits below cap at 10^8.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .core import (
    EdgeColoredHypergraph,
    MultiColoring,
    RobustColoring,
    ValidationError,
)
from .rational import Q, Q0


class OracleLimitError(Exception):
    """Instance outside the exact-search caps (CLI exit code 5)."""


@dataclass(frozen=True)
class OracleLimits:
    """Hard caps; the enumerated search space is 2^max_edges subsets."""

    max_nodes: int = 4096
    max_edges: int = 26
    max_colors: int = 256
    max_budget: int = 1 << 20
    max_search_space: int = 10**8


DEFAULT_LIMITS = OracleLimits()


def _check_limits(h: EdgeColoredHypergraph, budget: int, limits: OracleLimits) -> None:
    if h.num_edges > limits.max_edges or (1 << h.num_edges) > limits.max_search_space:
        raise OracleLimitError(
            f"{h.num_edges} edges: search space 2^{h.num_edges} exceeds the exact-solver caps"
        )
    if h.node_count > limits.max_nodes:
        raise OracleLimitError(f"{h.node_count} nodes exceed the cap {limits.max_nodes}")
    if h.num_colors > limits.max_colors:
        raise OracleLimitError(f"{h.num_colors} colors exceed the cap {limits.max_colors}")
    if budget > limits.max_budget:
        raise OracleLimitError(f"budget {budget} exceeds the cap {limits.max_budget}")


def _subset_palettes(h: EdgeColoredHypergraph, mask: int) -> dict[int, set[int]]:
    """chi_T per node touched by the edge subset encoded in mask."""
    palettes: dict[int, set[int]] = {}
    e = 0
    while mask:
        if mask & 1:
            c = h.edge_colors[e]
            for v in h.edge_members[e]:
                palettes.setdefault(v, set()).add(c)
        mask >>= 1
        e += 1
    return palettes


def _mask_weight(h: EdgeColoredHypergraph, mask: int) -> Q:
    total = Q0
    e = 0
    while mask:
        if mask & 1:
            total += h.edge_weights[e]
        mask >>= 1
        e += 1
    return total


def brute_local(
    h: EdgeColoredHypergraph,
    budgets: Union[int, Sequence[int]],
    limits: OracleLimits = DEFAULT_LIMITS,
) -> tuple[Q, MultiColoring]:
    """Exact Local ECC optimum and the lexicographically smallest optimal
    coloring (per-node sorted color tuples compared node by node)."""
    if isinstance(budgets, int):
        b = [budgets] * h.node_count
    else:
        b = list(budgets)
        if len(b) != h.node_count:
            raise ValidationError(f"{len(b)} budgets for {h.node_count} nodes")
    if any(bv < 1 for bv in b):
        raise ValidationError("local budgets must all be >= 1")
    _check_limits(h, max(b, default=1), limits)
    total = h.total_weight()
    best_missed: Optional[Q] = None
    best_key = None
    for mask in range(1 << h.num_edges):
        palettes = _subset_palettes(h, mask)
        if any(len(s) > b[v] for v, s in palettes.items()):
            continue
        missed = total - _mask_weight(h, mask)
        if best_missed is not None and missed > best_missed:
            continue
        key = tuple(
            tuple(sorted(palettes.get(v, ()))) for v in range(h.node_count)
        )
        if best_missed is None or missed < best_missed or key < best_key:
            best_missed, best_key = missed, key
    assert best_missed is not None  # the empty subset is always satisfiable
    coloring = MultiColoring(tuple(frozenset(cs) for cs in best_key))
    return best_missed, coloring


def brute_robust(
    h: EdgeColoredHypergraph, budget: int, limits: OracleLimits = DEFAULT_LIMITS
) -> tuple[Q, RobustColoring]:
    """Exact Robust ECC optimum with a deterministic optimal solution
    (smallest edge-subset bitmask; survivors without a forced color stay
    uncolored)."""
    if budget < 0:
        raise ValidationError(f"robust budget must be >= 0, got {budget}")
    _check_limits(h, budget, limits)
    total = h.total_weight()
    best_missed: Optional[Q] = None
    best_palettes: dict[int, set[int]] = {}
    for mask in range(1 << h.num_edges):
        palettes = _subset_palettes(h, mask)
        if sum(1 for s in palettes.values() if len(s) >= 2) > budget:
            continue
        missed = total - _mask_weight(h, mask)
        if best_missed is None or missed < best_missed:
            best_missed, best_palettes = missed, palettes
    assert best_missed is not None
    removed = frozenset(v for v, s in best_palettes.items() if len(s) >= 2)
    color: list[Optional[int]] = [None] * h.node_count
    for v, s in best_palettes.items():
        if len(s) == 1:
            (color[v],) = s
    return best_missed, RobustColoring(removed, tuple(color))


def brute_global(
    h: EdgeColoredHypergraph, budget: int, limits: OracleLimits = DEFAULT_LIMITS
) -> tuple[Q, MultiColoring]:
    """Exact Global ECC optimum with a deterministic optimal coloring (every
    node gets at least one color; the fallback is color 0)."""
    if budget < 0:
        raise ValidationError(f"global budget must be >= 0, got {budget}")
    _check_limits(h, budget, limits)
    total = h.total_weight()
    best_missed: Optional[Q] = None
    best_palettes: dict[int, set[int]] = {}
    for mask in range(1 << h.num_edges):
        palettes = _subset_palettes(h, mask)
        if sum(len(s) - 1 for s in palettes.values()) > budget:
            continue
        missed = total - _mask_weight(h, mask)
        if best_missed is None or missed < best_missed:
            best_missed, best_palettes = missed, palettes
    assert best_missed is not None
    sigma = tuple(
        frozenset(best_palettes[v]) if v in best_palettes else frozenset((0,))
        for v in range(h.node_count)
    )
    return best_missed, MultiColoring(sigma)


def optimum_table(
    h: EdgeColoredHypergraph,
    local_budgets: Sequence[int] = (),
    robust_budgets: Sequence[int] = (),
    global_budgets: Sequence[int] = (),
    limits: OracleLimits = DEFAULT_LIMITS,
) -> dict[tuple[str, int], Q]:
    """Exact optima for many (problem, budget) pairs from one subset scan.

    Local budgets here are uniform. Keys are ('local'|'robust'|'global', b).
    """
    top = max(list(local_budgets) + list(robust_budgets) + list(global_budgets), default=0)
    _check_limits(h, top, limits)
    max_l = max(local_budgets, default=0)
    max_r = max(robust_budgets, default=0)
    max_g = max(global_budgets, default=0)
    # best satisfiable weight per exact requirement level
    best_l: list[Optional[Q]] = [None] * (max_l + 1)
    best_r: list[Optional[Q]] = [None] * (max_r + 1)
    best_g: list[Optional[Q]] = [None] * (max_g + 1)
    for mask in range(1 << h.num_edges):
        palettes = _subset_palettes(h, mask)
        w = None
        sizes = [len(s) for s in palettes.values()]
        need_l = max(sizes, default=0)
        if local_budgets and need_l <= max_l:
            w = _mask_weight(h, mask)
            if best_l[need_l] is None or w > best_l[need_l]:
                best_l[need_l] = w
        if robust_budgets:
            need_r = sum(1 for s in sizes if s >= 2)
            if need_r <= max_r:
                w = _mask_weight(h, mask) if w is None else w
                if best_r[need_r] is None or w > best_r[need_r]:
                    best_r[need_r] = w
        if global_budgets:
            need_g = sum(s - 1 for s in sizes)
            if need_g <= max_g:
                w = _mask_weight(h, mask) if w is None else w
                if best_g[need_g] is None or w > best_g[need_g]:
                    best_g[need_g] = w
    total = h.total_weight()

    def answer(best: list[Optional[Q]], b: int) -> Q:
        sat = Q0
        for need in range(min(b, len(best) - 1) + 1):
            if best[need] is not None and best[need] > sat:
                sat = best[need]
        return total - sat

    out: dict[tuple[str, int], Q] = {}
    for b in local_budgets:
        out[("local", b)] = answer(best_l, b)
    for b in robust_budgets:
        out[("robust", b)] = answer(best_r, b)
    for b in global_budgets:
        out[("global", b)] = answer(best_g, b)
    return out
