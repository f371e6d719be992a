"""Shared test helpers: independent reference oracles and instance strategies."""

from __future__ import annotations

from itertools import combinations

import hypothesis.strategies as st

from eccsolve import (
    MultiColoring,
    RobustColoring,
    build_instance,
    gen_random,
)
from eccsolve.generators import KUniformHypergraph, SplitMix64
from eccsolve.rational import Q, Q0


def mistake_edges(h, assignment) -> list[int]:
    """Indices of mistaken edges under an assignment (either variant)."""
    out = []
    if isinstance(assignment, RobustColoring):
        for e in range(h.num_edges):
            alive = [v for v in h.edge_members[e] if v not in assignment.removed]
            if alive and any(assignment.color[v] != h.edge_colors[e] for v in alive):
                out.append(e)
    else:
        for e in range(h.num_edges):
            if any(h.edge_colors[e] not in assignment.colors[v] for v in h.edge_members[e]):
                out.append(e)
    return out


def ref_mistake_weight(h, assignment):
    """Reference mistake counter straight from the definition, kept separate
    from the library implementation on purpose."""
    total = Q0
    if isinstance(assignment, RobustColoring):
        for e in range(h.num_edges):
            alive = [v for v in h.edge_members[e] if v not in assignment.removed]
            if alive and not all(assignment.color[v] == h.edge_colors[e] for v in alive):
                total += h.edge_weights[e]
    else:
        for e in range(h.num_edges):
            ok = all(h.edge_colors[e] in assignment.colors[v] for v in h.edge_members[e])
            if not ok:
                total += h.edge_weights[e]
    return total


def assignment_brute_local(h, budgets):
    """Local optimum by direct per-node enumeration over palette subsets of
    size <= b_v; structurally independent of the library's subset oracle."""
    from itertools import combinations, product

    if isinstance(budgets, int):
        budgets = [budgets] * h.node_count
    options = []
    for v in range(h.node_count):
        palette = sorted(h.palette(v))
        opts = [frozenset()]
        for size in range(1, min(budgets[v], len(palette)) + 1):
            opts.extend(frozenset(c) for c in combinations(palette, size))
        options.append(opts)
    best = None
    for choice in product(*options):
        cost = ref_mistake_weight(h, MultiColoring(tuple(choice)))
        if best is None or cost < best:
            best = cost
    return best if best is not None else Q0


def assignment_brute_robust(h, budget):
    """Robust optimum by enumerating removal sets and per-survivor colors."""
    from itertools import combinations, product

    best = None
    nodes = range(h.node_count)
    for r in range(min(budget, h.node_count) + 1):
        for removed in combinations(nodes, r):
            rem = frozenset(removed)
            options = []
            for v in nodes:
                if v in rem:
                    options.append([None])
                else:
                    palette = sorted(h.palette(v))
                    options.append(palette if palette else [None])
            for colors in product(*options):
                cost = ref_mistake_weight(h, RobustColoring(rem, colors))
                if best is None or cost < best:
                    best = cost
    return best if best is not None else Q0


def assignment_brute_global(h, budget):
    """Global optimum by DFS over per-node nonempty palette subsets with the
    extra-color total capped by the budget."""
    from itertools import combinations

    best = [None]
    options = []
    for v in range(h.node_count):
        palette = sorted(h.palette(v))
        if palette:
            opts = []
            for size in range(1, len(palette) + 1):
                opts.extend((size - 1, frozenset(c)) for c in combinations(palette, size))
        else:
            opts = [(0, frozenset((0,)))]
        options.append(opts)

    chosen = [None] * h.node_count

    def dfs(v, left):
        if v == h.node_count:
            cost = ref_mistake_weight(h, MultiColoring(tuple(chosen)))
            if best[0] is None or cost < best[0]:
                best[0] = cost
            return
        for extra, colors in options[v]:
            if extra <= left:
                chosen[v] = colors
                dfs(v + 1, left - extra)
        chosen[v] = None

    dfs(0, budget)
    return best[0] if best[0] is not None else Q0


def min_vertex_cover_size(K: KUniformHypergraph) -> int:
    """Brute-force minimum vertex cover of a k-uniform hypergraph."""
    if not K.edges:
        return 0
    for size in range(K.vertex_count + 1):
        for cover in combinations(range(K.vertex_count), size):
            cset = set(cover)
            if all(cset & set(f) for f in K.edges):
                return size
    return K.vertex_count


def seeded_instance(i: int, max_nodes=50, max_edges=100, max_colors=8, max_rank=4):
    """Deterministic family of random instances with varied shapes."""
    rng = SplitMix64(i * 2654435761 + 987654321)
    n = 1 + rng.below(max_nodes)
    m = 1 + rng.below(max_edges)
    colors = 1 + rng.below(max_colors)
    rank = 1 + rng.below(max_rank)
    return gen_random(n, m, colors, rank, seed=i)


def seeded_weighted_instance(i: int, max_nodes=30, max_edges=60, max_colors=6):
    """Like seeded_instance but with ragged rational weights (including a few
    zero-weight edges), to stress the exact-tightness arithmetic."""
    base = seeded_instance(i, max_nodes, max_edges, max_colors)
    rng = SplitMix64(i ^ 0xD1B54A32D192ED03)
    edges = []
    for e in range(base.num_edges):
        num = rng.below(9)  # 0..8, zeros allowed
        den = 1 + rng.below(7)
        edges.append((base.edge_members[e], base.edge_colors[e], Q(num, den)))
    return build_instance(base.node_count, base.num_colors, edges)


# -- hypothesis strategies -------------------------------------------------------


@st.composite
def instances(draw, max_nodes=6, max_edges=6, max_colors=3, rational_weights=False):
    n = draw(st.integers(min_value=0, max_value=max_nodes))
    colors = draw(st.integers(min_value=1, max_value=max_colors))
    if n == 0:
        return build_instance(0, colors, [])
    m = draw(st.integers(min_value=0, max_value=max_edges))
    if rational_weights:
        weight = st.tuples(st.integers(0, 4), st.integers(1, 4)).map(lambda t: Q(t[0], t[1]))
    else:
        weight = st.just(Q(1))
    edges = []
    for _ in range(m):
        members = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))
        edges.append((members, draw(st.integers(0, colors - 1)), draw(weight)))
    return build_instance(n, colors, edges)


@st.composite
def multi_colorings(draw, h, max_per_node=3):
    cols = []
    for _ in range(h.node_count):
        cols.append(
            frozenset(
                draw(st.sets(st.integers(0, h.num_colors - 1), max_size=max_per_node))
            )
        )
    return MultiColoring(tuple(cols))


@st.composite
def robust_colorings(draw, h, max_removed=2):
    removed = frozenset(
        draw(st.sets(st.integers(0, max(h.node_count - 1, 0)), max_size=max_removed))
        if h.node_count
        else set()
    )
    color = tuple(
        None if v in removed else draw(st.integers(0, h.num_colors - 1))
        for v in range(h.node_count)
    )
    return RobustColoring(removed, color)
