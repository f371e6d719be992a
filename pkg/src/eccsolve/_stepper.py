"""Shared discretized dual-growth loop for the Robust and Global solvers.

Both algorithms grow lambda at unit rate and the duals of every candidate
node in R simultaneously until enough edges are tight; they differ only in
the per-edge growth rates and the stopping metric:

  robust: stop when |R| <= K;                    per-(v,c) color rate
          1/(chi_v - 1), split evenly over the loose edges of that color.
  global: stop when sum_{v in R}(chi_v - 1) <= K; per-(v,c) color rate 1,
          split evenly likewise.

chi_v is the live loose color-degree |colors(delta(v) cap L)|. Loose color
counts are cached per (node, color) and decremented as edges tighten, so one
iteration costs O(sum_{v in R} d_v) without rescans; every iteration tightens
at least one edge, so there are at most |E| iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import EdgeColoredHypergraph, Problem
from .rational import Q, Q0, Q1


@dataclass
class GrowthState:
    """Mutable solver state; frozen into a DualCertificate by the callers."""

    loose: list[bool]
    level: list[Q]
    alpha: list[Q]
    beta_rows: list[Optional[list[Q]]]
    lam: Q
    live_colors: list[dict[int, int]]  # per node: loose color -> loose count
    candidates: set[int]  # R, live view
    removal_set: frozenset[int]  # final R
    iterations: int

    def beta_add(self, h: EdgeColoredHypergraph, e: int, slot: int, delta: Q) -> None:
        row = self.beta_rows[e]
        if row is None:
            row = self.beta_rows[e] = [Q0] * len(h.edge_members[e])
        row[slot] += delta


def _inv_cache() -> Callable[[int], Q]:
    cache: dict[int, Q] = {}

    def inv(k: int) -> Q:
        q = cache.get(k)
        if q is None:
            q = cache[k] = Q(1, k)
        return q

    return inv


def grow_duals(
    h: EdgeColoredHypergraph,
    kind: Problem,
    stop_budget: int,
    on_step: Optional[Callable[["GrowthState"], None]] = None,
) -> GrowthState:
    """Run the while-loop until the stopping metric is within stop_budget.

    on_step, if given, is invoked after every t* advance (debug hook for
    step-boundary certificate checks).
    """
    assert kind in (Problem.ROBUST, Problem.GLOBAL)
    n, m = h.node_count, h.num_edges
    weights = h.edge_weights
    loose = [w > 0 for w in weights]
    level: list[Q] = [Q0] * m
    live_colors: list[dict[int, int]] = []
    for v in range(n):
        counts = {}
        for c, pairs in h._color_pairs[v].items():
            k = sum(1 for e, _ in pairs if loose[e])
            if k:
                counts[c] = k
        live_colors.append(counts)
    candidates = {v for v in range(n) if len(live_colors[v]) >= 2}
    demand = sum(len(live_colors[v]) - 1 for v in candidates)  # global metric

    state = GrowthState(
        loose=loose,
        level=level,
        alpha=[Q0] * n,
        beta_rows=[None] * m,
        lam=Q0,
        live_colors=live_colors,
        candidates=candidates,
        removal_set=frozenset(),
        iterations=0,
    )
    inv = _inv_cache()
    robust = kind is Problem.ROBUST
    color_pairs = h._color_pairs

    while (len(candidates) if robust else demand) > stop_budget:
        rate: dict[int, Q] = {}
        contribs: list[tuple[int, int, Q]] = []
        alpha_rates: list[tuple[int, Q]] = []
        for v in candidates:
            counts = live_colors[v]
            chi = len(counts)
            # every candidate keeps >= 2 loose colors, hence positive rates
            assert chi >= 2, "candidate set out of sync with loose color counts"
            alpha_rates.append((v, inv(chi - 1) if robust else Q1))
            pairs_v = color_pairs[v]
            for c, k in counts.items():
                share = inv((chi - 1) * k) if robust else inv(k)
                for e, slot in pairs_v[c]:
                    if loose[e]:
                        r = rate.get(e)
                        rate[e] = share if r is None else r + share
                        contribs.append((e, slot, share))

        t_star = None
        for e, r in rate.items():
            t = (weights[e] - level[e]) / r
            if t_star is None or t < t_star:
                t_star = t
        assert t_star is not None and t_star > 0, "no growing loose edge while over budget"

        state.lam += t_star
        for v, ar in alpha_rates:
            state.alpha[v] += t_star * ar
        for e, slot, share in contribs:
            state.beta_add(h, e, slot, t_star * share)
        tightened: list[int] = []
        for e, r in rate.items():
            level[e] += t_star * r
            if level[e] == weights[e]:
                loose[e] = False
                tightened.append(e)
        assert tightened, "a minimizing edge must become exactly tight"

        for e in tightened:
            c = h.edge_colors[e]
            for v in h.edge_members[e]:
                counts = live_colors[v]
                k = counts[c] - 1
                if k:
                    counts[c] = k
                else:
                    del counts[c]
                    if v in candidates:
                        demand -= 1
                        if len(counts) <= 1:
                            candidates.discard(v)
        state.iterations += 1
        if on_step is not None:
            on_step(state)

    state.removal_set = frozenset(candidates)
    return state


def majority_color(h: EdgeColoredHypergraph, v: int) -> int:
    """Largest total incident weight among v's original edge colors, ties to
    the smallest color id; color 0 for isolated nodes."""
    best_c, best_w = 0, None
    for c in sorted(h._color_pairs[v]):
        total = Q0
        for e, _ in h._color_pairs[v][c]:
            total += h.edge_weights[e]
        if best_w is None or total > best_w:
            best_c, best_w = c, total
    return best_c


def freeze_certificate(h: EdgeColoredHypergraph, state: GrowthState):
    from .dual import DualCertificate

    return DualCertificate(
        alpha=tuple(state.alpha),
        beta=tuple(
            tuple(row) if row is not None else (Q0,) * len(mem)
            for row, mem in zip(state.beta_rows, h.edge_members)
        ),
        lam=state.lam,
        levels=tuple(state.level),
    )
