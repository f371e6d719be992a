import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from eccsolve import (
    MultiColoring,
    ProblemSpec,
    RobustColoring,
    ValidationError,
    build_instance,
    compute_stats,
    count_mistakes,
    is_trivial,
    is_trivial_per_node,
    mistake_weight,
    relative_error,
)
from eccsolve.rational import Q

from util import instances, multi_colorings, ref_mistake_weight, robust_colorings


def parallel_pair():
    # two parallel edges over the same node pair, distinct colors
    return build_instance(2, 2, [({0, 1}, 0, 1), ({0, 1}, 1, 1)])


class TestBuildInstance:
    def test_parallel_edges_are_first_class(self):
        h = parallel_pair()
        assert h.num_edges == 2
        assert h.edge_members[0] == h.edge_members[1] == (0, 1)
        assert h.edge_colors == (0, 1)

    def test_empty_instance(self):
        h = build_instance(0, 1, [])
        assert h.node_count == 0 and h.num_edges == 0

    def test_out_of_range_node(self):
        with pytest.raises(ValidationError, match="edge 0"):
            build_instance(1, 1, [({0, 5}, 0, 1)])

    def test_negative_weight(self):
        with pytest.raises(ValidationError, match="negative weight"):
            build_instance(1, 1, [({0}, 0, -1)])

    def test_empty_edge(self):
        with pytest.raises(ValidationError, match="empty member set"):
            build_instance(2, 1, [(set(), 0, 1)])

    def test_bad_color(self):
        with pytest.raises(ValidationError, match="color id"):
            build_instance(2, 1, [({0}, 3, 1)])

    def test_incidence_indexes(self):
        h = build_instance(3, 2, [({0, 1}, 0, 1), ({1, 2}, 1, 1), ({1}, 1, 1)])
        assert h.incident_edges(1) == (0, 1, 2)
        assert h.incident_edges_by_color(1, 1) == (1, 2)
        assert h.palette(1) == {0, 1}
        assert h.degree(1) == 3 and h.color_degree(0) == 1


class TestCountMistakes:
    def test_all_matched(self):
        h = build_instance(2, 1, [({0, 1}, 0, 1)])
        a = MultiColoring((frozenset({0}), frozenset({0})))
        assert count_mistakes(h, ProblemSpec.local(1), a) == 0

    def test_robust_on_parallel_pair(self):
        # remove node 0, color node 1 with c0: the c1 edge is the only mistake
        h = parallel_pair()
        a = RobustColoring(frozenset({0}), (None, 0))
        assert count_mistakes(h, ProblemSpec.robust(1), a) == 1
        assert ref_mistake_weight(h, a) == 1

    def test_three_singletons_single_color_budget(self):
        h = build_instance(1, 3, [({0}, 0, 1), ({0}, 1, 1), ({0}, 2, 1)])
        a = MultiColoring((frozenset({1}),))
        assert count_mistakes(h, ProblemSpec.local(1), a) == 2
        # brute force over the three single-color choices: 2 is optimal
        assert min(
            mistake_weight(h, MultiColoring((frozenset({c}),))) for c in range(3)
        ) == 2

    def test_fully_removed_edge_is_satisfied(self):
        h = parallel_pair()
        a = RobustColoring(frozenset({0, 1}), (None, None))
        assert mistake_weight(h, a) == 0

    def test_uncolored_survivor_mismatches(self):
        h = build_instance(1, 1, [({0}, 0, 1)])
        a = RobustColoring(frozenset(), (None,))
        assert mistake_weight(h, a) == 1

    def test_budget_enforcement(self):
        h = parallel_pair()
        with pytest.raises(ValidationError, match="colors, budget"):
            count_mistakes(h, ProblemSpec.local(1), MultiColoring((frozenset({0, 1}), frozenset())))
        with pytest.raises(ValidationError, match="removals exceed"):
            count_mistakes(h, ProblemSpec.robust(0), RobustColoring(frozenset({0}), (None, 0)))
        with pytest.raises(ValidationError, match="extra colors exceed"):
            count_mistakes(
                h, ProblemSpec.global_budget(0), MultiColoring((frozenset({0, 1}), frozenset({0})))
            )
        # tau relaxes the same check
        count_mistakes(
            h, ProblemSpec.global_budget(0, tau=1), MultiColoring((frozenset({0, 1}), frozenset({0})))
        )


class TestStats:
    def test_parallel_pair(self):
        s = compute_stats(parallel_pair())
        assert (s.rank, s.avg_degree, s.max_color_degree, s.intersect_ratio) == (2, 2, 2, 1)
        assert s.avg_color_degree == 2

    def test_empty(self):
        s = compute_stats(build_instance(0, 1, []))
        assert (s.nodes, s.edges, s.rank) == (0, 0, 0)
        assert s.avg_degree == 0 and s.avg_color_degree == 0 and s.intersect_ratio == 0

    def test_exact_rationals(self):
        h = build_instance(3, 2, [({0, 1}, 0, 1), ({1, 2}, 1, 1)])
        s = compute_stats(h)
        assert s.avg_degree == Q(4, 3)
        assert s.avg_color_degree == Q(4, 3)
        assert s.intersect_ratio == Q(1, 3)


class TestTriviality:
    def test_local(self):
        h = parallel_pair()  # max color-degree 2
        assert is_trivial(h, ProblemSpec.local(2))
        assert not is_trivial(h, ProblemSpec.local(1))

    def test_robust_strict(self):
        # three nodes of color-degree 2: rho*|V| = 3
        h = build_instance(3, 2, [({0, 1, 2}, 0, 1), ({0, 1, 2}, 1, 1)])
        assert not is_trivial(h, ProblemSpec.robust(2))
        assert is_trivial(h, ProblemSpec.robust(3))

    def test_global_zero_budget(self):
        # avg color-degree exactly 1 -> required budget 0
        h = build_instance(2, 2, [({0}, 0, 1), ({1}, 1, 1)])
        assert is_trivial(h, ProblemSpec.global_budget(0))

    def test_per_node_variant(self):
        h = build_instance(2, 2, [({0}, 0, 1), ({0}, 1, 1), ({1}, 0, 1)])
        # node 0 has color-degree 2, node 1 has 1
        assert not is_trivial(h, ProblemSpec.local(node_budgets=(1, 1)))
        assert is_trivial_per_node(h, ProblemSpec.local(node_budgets=(2, 1)))
        assert not is_trivial_per_node(h, ProblemSpec.local(node_budgets=(1, 2)))


class TestRelativeError:
    def test_values(self):
        assert relative_error(3, 2) == Q(1, 2)
        assert relative_error(0, 0) == 0
        assert relative_error(5, 5) == 0


class TestSpecValidation:
    def test_local_needs_positive_budget(self):
        with pytest.raises(ValidationError):
            ProblemSpec.local(0)
        with pytest.raises(ValidationError):
            ProblemSpec.local(node_budgets=(1, 0))

    def test_robust_global_nonnegative(self):
        with pytest.raises(ValidationError):
            ProblemSpec.robust(-1)
        ProblemSpec.global_budget(0)

    def test_budget_lengths_checked(self):
        h = parallel_pair()
        with pytest.raises(ValidationError, match="budgets for"):
            ProblemSpec.local(node_budgets=(1,)).validate_for(h)


# -- spec invariants as property tests -------------------------------------------


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_adding_colors_never_hurts(data):
    h = data.draw(instances(rational_weights=True))
    a = data.draw(multi_colorings(h))
    if h.node_count == 0:
        return
    v = data.draw(st.integers(0, h.node_count - 1))
    c = data.draw(st.integers(0, h.num_colors - 1))
    grown = list(a.colors)
    grown[v] = grown[v] | {c}
    assert mistake_weight(h, MultiColoring(tuple(grown))) <= mistake_weight(h, a)


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_removing_a_node_never_hurts(data):
    h = data.draw(instances(rational_weights=True))
    a = data.draw(robust_colorings(h))
    if h.node_count == 0:
        return
    v = data.draw(st.integers(0, h.node_count - 1))
    color = list(a.color)
    color[v] = None
    grown = RobustColoring(a.removed | {v}, tuple(color))
    assert mistake_weight(h, grown) <= mistake_weight(h, a)


@settings(max_examples=120, deadline=None)
@given(h=instances(max_nodes=8, max_edges=8, max_colors=4))
def test_max_color_degree_bounds_average(h):
    s = compute_stats(h)
    assert s.max_color_degree >= s.avg_color_degree
    assert s.max_color_degree <= s.colors
    assert s.rank <= max(s.nodes, 0) or s.edges == 0
    assert 0 <= s.intersect_ratio <= 1


@settings(max_examples=120, deadline=None)
@given(h=instances(rational_weights=True))
def test_full_palette_assignment_is_perfect(h):
    a = MultiColoring(tuple(h.palette(v) for v in range(h.node_count)))
    assert mistake_weight(h, a) == 0


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_mistake_weight_matches_reference(data):
    h = data.draw(instances(rational_weights=True))
    a = data.draw(multi_colorings(h))
    assert mistake_weight(h, a) == ref_mistake_weight(h, a)
    r = data.draw(robust_colorings(h))
    assert mistake_weight(h, r) == ref_mistake_weight(h, r)
