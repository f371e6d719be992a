"""Instance constructors: worst-case gap families, the vertex-cover
reduction, and seeded random instances.

The gap families ship with companion fractional LP solutions so the measured
integrality gap (exact optimum / fractional cost) can be checked per run.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from .core import EdgeColoredHypergraph, ValidationError, build_instance
from .dual import FractionalSolution
from .rational import Q


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny documented PRNG so generated instances are reproducible across
    implementations, not just across runs.

    state <- state + 0x9E3779B97F4A7C15 (mod 2^64); the output mixes the new
    state with xor-shift-multiply (constants 0xBF58476D1CE4E5B9,
    0x94D049BB133111EB, shifts 30/27/31). below(n) is next() mod n.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n


def _colex_key(subset: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(subset))


def gen_ig_local(
    budget: int, num_edges: int, max_nodes: int = 10**6
) -> tuple[EdgeColoredHypergraph, FractionalSolution]:
    """Worst-case Local family: m distinct-colored unit edges, one node per
    (b+1)-subset of edges incident to exactly that subset.

    Any coloring satisfies at most b edges, so OPT = m - b, while the
    companion fractional solution (x = b/(b+1) on incidences, y = 1/(b+1))
    costs m/(b+1); the gap approaches b+1 as m grows. Node ids follow
    colexicographic subset order.
    """
    if budget < 1:
        raise ValidationError(f"budget must be >= 1, got {budget}")
    if num_edges < budget + 1:
        raise ValidationError(f"need at least b+1 = {budget + 1} edges, got {num_edges}")
    subsets = sorted(combinations(range(num_edges), budget + 1), key=_colex_key)
    if len(subsets) > max_nodes:
        raise ValidationError(
            f"C({num_edges}, {budget + 1}) = {len(subsets)} nodes exceed the cap {max_nodes}"
        )
    members: list[list[int]] = [[] for _ in range(num_edges)]
    x: dict[tuple[int, int], Q] = {}
    x_val = Q(budget, budget + 1)
    for node, subset in enumerate(subsets):
        for e in subset:
            members[e].append(node)
            x[(node, e)] = x_val  # edge e carries color e
    h = build_instance(
        len(subsets), num_edges, [(members[e], e, 1) for e in range(num_edges)]
    )
    frac = FractionalSolution(x=x, y=(Q(1, budget + 1),) * num_edges, z=None)
    return h, frac


def _two_parallel_edges(node_count: int) -> EdgeColoredHypergraph:
    nodes = range(node_count)
    return build_instance(node_count, 2, [(nodes, 0, 1), (nodes, 1, 1)])


def gen_ig_robust(budget: int) -> tuple[EdgeColoredHypergraph, FractionalSolution]:
    """Worst-case Robust family: b+1 nodes, two parallel full edges with
    distinct colors. OPT = 1 (some node survives and misses one color), the
    companion fractional solution costs 1/(b+1), so the gap is exactly b+1.
    """
    if budget < 0:
        raise ValidationError(f"budget must be >= 0, got {budget}")
    n = budget + 1
    h = _two_parallel_edges(n)
    half = Q(1, 2 * (budget + 1))
    x = {(v, c): half for v in range(n) for c in (0, 1)}
    frac = FractionalSolution(x=x, y=(half, half), z=(Q(budget, budget + 1),) * n)
    return h, frac


def gen_ig_global(budget: int) -> tuple[EdgeColoredHypergraph, FractionalSolution]:
    """Worst-case Global family: same hypergraph as the robust one; the
    fractional solution spends z = b/(b+1) per node on extra colors
    (x = (2b+1)/(2(b+1)) per color) and costs 1/(b+1)."""
    if budget < 0:
        raise ValidationError(f"budget must be >= 0, got {budget}")
    n = budget + 1
    h = _two_parallel_edges(n)
    x_val = Q(2 * budget + 1, 2 * (budget + 1))
    half = Q(1, 2 * (budget + 1))
    x = {(v, c): x_val for v in range(n) for c in (0, 1)}
    frac = FractionalSolution(x=x, y=(half, half), z=(Q(budget, budget + 1),) * n)
    return h, frac


# -- vertex-cover reduction ----------------------------------------------------


@dataclass(frozen=True)
class KUniformHypergraph:
    """A hypergraph whose edges all have exactly k members."""

    vertex_count: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        for i, f in enumerate(self.edges):
            mset = sorted(set(f))
            if len(mset) != self.k:
                raise ValidationError(f"hyperedge {i} has {len(mset)} distinct members, not {self.k}")
            if mset[0] < 0 or mset[-1] >= self.vertex_count:
                raise ValidationError(f"hyperedge {i}: vertex id out of range")


@dataclass(frozen=True)
class EkvcReduction:
    """Local ECC image of a k-uniform vertex-cover instance.

    ECC node i stands for input hyperedge i; ECC edge j (color j) stands for
    the kept input vertex edge_to_vertex[j]. Isolated input vertices produce
    empty ECC edges and are dropped (they are never required by any cover).
    The minimum mistake count of `instance` under `budget` equals the minimum
    vertex cover size of the input.
    """

    instance: EdgeColoredHypergraph
    budget: int
    edge_to_vertex: tuple[int, ...]
    dropped_vertices: tuple[int, ...]


def reduce_ekvc(K: KUniformHypergraph) -> EkvcReduction:
    """Approximation-preserving reduction from k-uniform vertex cover to
    Local ECC with budget k-1."""
    if K.k < 2:
        raise ValidationError(f"the reduction needs k >= 2, got k = {K.k}")
    incident: list[list[int]] = [[] for _ in range(K.vertex_count)]
    for i, f in enumerate(K.edges):
        for w in f:
            incident[w].append(i)
    kept = [w for w in range(K.vertex_count) if incident[w]]
    dropped = tuple(w for w in range(K.vertex_count) if not incident[w])
    edge_list = [(incident[w], j, 1) for j, w in enumerate(kept)]
    h = build_instance(len(K.edges), max(len(kept), 1), edge_list)
    return EkvcReduction(h, K.k - 1, tuple(kept), dropped)


# -- seeded random instances ---------------------------------------------------


def gen_random(
    nodes: int, edges: int, colors: int, max_rank: int, seed: int
) -> EdgeColoredHypergraph:
    """Reproducible random instance (SplitMix64, draw order documented).

    Per edge, in order: size = 1 + below(min(max_rank, nodes)); then repeated
    below(nodes) draws until `size` distinct members are collected (insertion
    order kept, members sorted by the instance builder); then color =
    below(colors). All weights are 1.
    """
    if nodes < 1 or edges < 1 or colors < 1 or max_rank < 1:
        raise ValidationError("nodes, edges, colors and max_rank must all be >= 1")
    rng = SplitMix64(seed)
    cap = min(max_rank, nodes)
    edge_list = []
    for _ in range(edges):
        size = 1 + rng.below(cap)
        picked: list[int] = []
        while len(picked) < size:
            v = rng.below(nodes)
            if v not in picked:
                picked.append(v)
        edge_list.append((picked, rng.below(colors), 1))
    return build_instance(nodes, colors, edge_list)
