"""Core data model: edge-colored hypergraphs, problem specs, solutions, stats.

Everything here is immutable after construction and safe to share across
threads/processes. Weights are exact rationals (see eccsolve.rational).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from .rational import Q, Q0, QLike, as_q


class ValidationError(ValueError):
    """Bad instance data, spec, or assignment (CLI exit code 3)."""


class Problem(str, Enum):
    LOCAL = "local"
    ROBUST = "robust"
    GLOBAL = "global"


class EdgeColoredHypergraph:
    """A hypergraph with colored, weighted edges and prebuilt incidence indices.

    Edges are identified by index; duplicate (parallel) edges are first-class,
    which the worst-case constructions rely on. Member lists are stored as
    sorted tuples (set semantics, duplicates collapsed).
    """

    __slots__ = (
        "node_count",
        "num_colors",
        "edge_members",
        "edge_colors",
        "edge_weights",
        "_inc_pairs",
        "_color_pairs",
    )

    def __init__(
        self,
        node_count: int,
        num_colors: int,
        edge_members: tuple[tuple[int, ...], ...],
        edge_colors: tuple[int, ...],
        edge_weights: tuple[Q, ...],
    ):
        self.node_count = node_count
        self.num_colors = num_colors
        self.edge_members = edge_members
        self.edge_colors = edge_colors
        self.edge_weights = edge_weights
        # incidence: per node, ((edge, slot), ...) where slot is the member
        # position of the node inside the edge; plus the per-color split.
        inc: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
        by_color: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(node_count)]
        for e, members in enumerate(edge_members):
            c = edge_colors[e]
            for slot, v in enumerate(members):
                inc[v].append((e, slot))
                by_color[v].setdefault(c, []).append((e, slot))
        self._inc_pairs = tuple(tuple(lst) for lst in inc)
        self._color_pairs = tuple(
            {c: tuple(lst) for c, lst in d.items()} for d in by_color
        )

    # -- basic counts ------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edge_members)

    def total_weight(self) -> Q:
        return sum(self.edge_weights, Q0)

    def incidence_size(self) -> int:
        """Sum of degrees (the instance size the solvers are linear in)."""
        return sum(len(m) for m in self.edge_members)

    # -- incidence views ---------------------------------------------------

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """delta(v): ids of edges containing v."""
        return tuple(e for e, _ in self._inc_pairs[v])

    def incident_edges_by_color(self, v: int, c: int) -> tuple[int, ...]:
        """delta_c(v): ids of incident edges with color c."""
        return tuple(e for e, _ in self._color_pairs[v].get(c, ()))

    def degree(self, v: int) -> int:
        return len(self._inc_pairs[v])

    def palette(self, v: int) -> frozenset[int]:
        """chi(delta(v)): the distinct colors incident to v."""
        return frozenset(self._color_pairs[v].keys())

    def color_degree(self, v: int) -> int:
        return len(self._color_pairs[v])

    def __repr__(self) -> str:
        return (
            f"EdgeColoredHypergraph(nodes={self.node_count}, "
            f"edges={self.num_edges}, colors={self.num_colors})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoredHypergraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.num_colors == other.num_colors
            and self.edge_members == other.edge_members
            and self.edge_colors == other.edge_colors
            and self.edge_weights == other.edge_weights
        )

    def __hash__(self):
        return hash((self.node_count, self.num_colors, self.edge_members, self.edge_colors))


EdgeInput = tuple[Iterable[int], int, QLike]


def build_instance(
    node_count: int, num_colors: int, edge_list: Sequence[EdgeInput]
) -> EdgeColoredHypergraph:
    """Validate and index an instance. Errors name the offending edge index."""
    if node_count < 0:
        raise ValidationError(f"node_count must be >= 0, got {node_count}")
    if num_colors < 1:
        raise ValidationError(f"need at least one color, got {num_colors}")
    members_out: list[tuple[int, ...]] = []
    colors_out: list[int] = []
    weights_out: list[Q] = []
    for i, (members, color, weight) in enumerate(edge_list):
        mset = sorted(set(members))
        if not mset:
            raise ValidationError(f"edge {i}: empty member set")
        if mset[0] < 0 or mset[-1] >= node_count:
            bad = mset[0] if mset[0] < 0 else mset[-1]
            raise ValidationError(f"edge {i}: node id {bad} out of range [0, {node_count})")
        if not 0 <= color < num_colors:
            raise ValidationError(f"edge {i}: color id {color} out of range [0, {num_colors})")
        w = as_q(weight)
        if w < 0:
            raise ValidationError(f"edge {i}: negative weight {w}")
        members_out.append(tuple(mset))
        colors_out.append(color)
        weights_out.append(w)
    return EdgeColoredHypergraph(
        node_count, num_colors, tuple(members_out), tuple(colors_out), tuple(weights_out)
    )


# -- problem specification --------------------------------------------------


@dataclass(frozen=True)
class ProblemSpec:
    """Which problem to solve, with budgets and bicriteria slack tau.

    Local uses a uniform budget or per-node budgets (b_v >= 1); Robust and
    Global take a single budget b >= 0. threshold_extra is the bicriteria
    slack tau (0 for the plain algorithms).
    """

    kind: Problem
    budget: Optional[int] = None
    node_budgets: Optional[tuple[int, ...]] = None
    threshold_extra: int = 0
    fill_heuristic: bool = True

    def __post_init__(self):
        if self.threshold_extra < 0:
            raise ValidationError(f"threshold_extra must be >= 0, got {self.threshold_extra}")
        if self.kind is Problem.LOCAL:
            if self.budget is None and self.node_budgets is None:
                raise ValidationError("local spec needs a budget or per-node budgets")
            if self.budget is not None and self.budget < 1:
                raise ValidationError(f"local budget must be >= 1, got {self.budget}")
            if self.node_budgets is not None and any(b < 1 for b in self.node_budgets):
                raise ValidationError("per-node budgets must all be >= 1")
        else:
            if self.node_budgets is not None:
                raise ValidationError("per-node budgets only apply to the local problem")
            if self.budget is None or self.budget < 0:
                raise ValidationError(f"{self.kind.value} budget must be >= 0, got {self.budget}")

    @classmethod
    def local(
        cls,
        budget: Optional[int] = None,
        node_budgets: Optional[Sequence[int]] = None,
        tau: int = 0,
        fill_heuristic: bool = True,
    ) -> "ProblemSpec":
        nb = tuple(node_budgets) if node_budgets is not None else None
        return cls(Problem.LOCAL, budget, nb, tau, fill_heuristic)

    @classmethod
    def robust(cls, budget: int, tau: int = 0, fill_heuristic: bool = True) -> "ProblemSpec":
        return cls(Problem.ROBUST, budget, None, tau, fill_heuristic)

    @classmethod
    def global_budget(cls, budget: int, tau: int = 0, fill_heuristic: bool = True) -> "ProblemSpec":
        return cls(Problem.GLOBAL, budget, None, tau, fill_heuristic)

    def budget_for(self, v: int) -> int:
        """Per-node local budget b_v."""
        if self.node_budgets is not None:
            return self.node_budgets[v]
        assert self.budget is not None
        return self.budget

    def max_budget(self) -> int:
        """b_max, the budget entering the local approximation ratio."""
        if self.node_budgets is not None:
            return max(self.node_budgets, default=0)
        assert self.budget is not None
        return self.budget

    def validate_for(self, h: EdgeColoredHypergraph) -> None:
        if self.node_budgets is not None and len(self.node_budgets) != h.node_count:
            raise ValidationError(
                f"{len(self.node_budgets)} per-node budgets for {h.node_count} nodes"
            )


# -- solutions ---------------------------------------------------------------


@dataclass(frozen=True)
class MultiColoring:
    """sigma: V -> 2^C for Local/Global. Empty sets only arise with the fill
    heuristic off (or for nodes with no incident edges)."""

    colors: tuple[frozenset[int], ...]

    def extra_colors(self) -> int:
        """sum_v max(|sigma(v)|-1, 0), the global budget usage."""
        return sum(max(len(s) - 1, 0) for s in self.colors)

    def max_colors(self) -> int:
        return max((len(s) for s in self.colors), default=0)


@dataclass(frozen=True)
class RobustColoring:
    """Removed node set plus a single color per survivor.

    color[v] is None for removed nodes and for survivors left uncolored
    (heuristic off, no forced color); an uncolored survivor mismatches every
    incident edge.
    """

    removed: frozenset[int]
    color: tuple[Optional[int], ...]


Assignment = Union[MultiColoring, RobustColoring]


def check_feasible(h: EdgeColoredHypergraph, spec: ProblemSpec, assignment: Assignment) -> None:
    """Raise ValidationError if the assignment overruns the budget (beyond tau)
    or does not match the problem kind."""
    spec.validate_for(h)
    tau = spec.threshold_extra
    if spec.kind is Problem.ROBUST:
        if not isinstance(assignment, RobustColoring):
            raise ValidationError("robust spec requires a RobustColoring")
        if len(assignment.color) != h.node_count:
            raise ValidationError("coloring length does not match node count")
        if len(assignment.removed) > spec.budget + tau:
            raise ValidationError(
                f"{len(assignment.removed)} removals exceed budget {spec.budget}+{tau}"
            )
        return
    if not isinstance(assignment, MultiColoring):
        raise ValidationError(f"{spec.kind.value} spec requires a MultiColoring")
    if len(assignment.colors) != h.node_count:
        raise ValidationError("coloring length does not match node count")
    if spec.kind is Problem.LOCAL:
        for v, s in enumerate(assignment.colors):
            if len(s) > spec.budget_for(v) + tau:
                raise ValidationError(
                    f"node {v} holds {len(s)} colors, budget {spec.budget_for(v)}+{tau}"
                )
    else:
        used = assignment.extra_colors()
        if used > spec.budget + tau:
            raise ValidationError(f"{used} extra colors exceed budget {spec.budget}+{tau}")


def mistake_weight(h: EdgeColoredHypergraph, assignment: Assignment) -> Q:
    """Total weight of mistaken edges; no feasibility checking.

    Multi: e is a mistake iff some member lacks c_e. Robust: removed nodes
    vanish from edges first; an edge whose members are all removed is
    satisfied.
    """
    total = Q0
    if isinstance(assignment, MultiColoring):
        sigma = assignment.colors
        for e, members in enumerate(h.edge_members):
            c = h.edge_colors[e]
            if any(c not in sigma[v] for v in members):
                total += h.edge_weights[e]
    else:
        removed = assignment.removed
        color = assignment.color
        for e, members in enumerate(h.edge_members):
            c = h.edge_colors[e]
            if any(color[v] != c for v in members if v not in removed):
                total += h.edge_weights[e]
    return total


def count_mistakes(h: EdgeColoredHypergraph, spec: ProblemSpec, assignment: Assignment) -> Q:
    """Mistake weight of a feasibility-checked assignment."""
    check_feasible(h, spec, assignment)
    return mistake_weight(h, assignment)


# -- instance statistics and triviality ---------------------------------------


@dataclass(frozen=True)
class InstanceStats:
    """The eight benchmark statistics; averages are exact rationals and are
    defined as 0 on the empty instance."""

    nodes: int
    edges: int
    colors: int
    rank: int
    avg_degree: Q
    max_color_degree: int
    avg_color_degree: Q
    intersect_ratio: Q


def compute_stats(h: EdgeColoredHypergraph) -> InstanceStats:
    n = h.node_count
    rank = max((len(m) for m in h.edge_members), default=0)
    if n == 0:
        return InstanceStats(0, h.num_edges, h.num_colors, rank, Q0, 0, Q0, Q0)
    total_deg = h.incidence_size()
    cds = [h.color_degree(v) for v in range(n)]
    return InstanceStats(
        nodes=n,
        edges=h.num_edges,
        colors=h.num_colors,
        rank=rank,
        avg_degree=Q(total_deg, n),
        max_color_degree=max(cds),
        avg_color_degree=Q(sum(cds), n),
        intersect_ratio=Q(sum(1 for d in cds if d >= 2), n),
    )


def is_trivial(h: EdgeColoredHypergraph, spec: ProblemSpec) -> bool:
    """Budget large enough that a zero-mistake solution is structurally free.

    Local: min_v b_v >= max color-degree; Robust: b >= #{v: color-degree >= 2};
    Global: b >= sum_v color-degree - |V|.
    """
    cds = [h.color_degree(v) for v in range(h.node_count)]
    if spec.kind is Problem.LOCAL:
        max_cd = max(cds, default=0)
        if spec.node_budgets is not None:
            min_b = min(spec.node_budgets, default=max_cd)
        else:
            min_b = spec.budget
        return min_b >= max_cd
    if spec.kind is Problem.ROBUST:
        return spec.budget >= sum(1 for d in cds if d >= 2)
    return spec.budget >= sum(cds) - h.node_count


def is_trivial_per_node(h: EdgeColoredHypergraph, spec: ProblemSpec) -> bool:
    """Per-node-budget variant of local triviality: every v can afford its
    whole incident palette."""
    if spec.kind is not Problem.LOCAL:
        raise ValidationError("per-node triviality is a local-problem notion")
    return all(spec.budget_for(v) >= h.color_degree(v) for v in range(h.node_count))


def relative_error(alg_cost: QLike, lower_bound: QLike) -> Q:
    """(A - L) / L, defined as 0 when L = 0."""
    a, lo = as_q(alg_cost), as_q(lower_bound)
    if lo == 0:
        return Q0
    return (a - lo) / lo
