import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from eccsolve import (
    ProblemSpec,
    ValidationError,
    brute_global,
    build_instance,
    count_mistakes,
    dual_objective,
    gen_ig_global,
    global_bicriteria_threshold,
    mistakes_are_tight,
    solve_global,
    verify_dual,
)
from eccsolve.rational import Q, Q0

from util import instances, mistake_edges, seeded_instance


class TestBicriteriaThreshold:
    def test_values(self):
        assert global_bicriteria_threshold(1, 2) == 0
        assert global_bicriteria_threshold(2, 1) == 3
        assert global_bicriteria_threshold(5, 10) == 0

    def test_ranges(self):
        with pytest.raises(ValidationError):
            global_bicriteria_threshold(0, 1)
        with pytest.raises(ValidationError):
            global_bicriteria_threshold(3, 7)


class TestSolveGlobal:
    def test_demand_within_budget_terminates_immediately(self):
        # path: only the middle node wants 2 colors, demand 1 <= budget
        h = build_instance(3, 2, [({0, 1}, 0, 1), ({1, 2}, 1, 1)])
        spec = ProblemSpec.global_budget(1)
        a, cert = solve_global(h, spec)
        assert a.colors == (frozenset({0}), frozenset({0, 1}), frozenset({1}))
        assert count_mistakes(h, spec, a) == 0
        assert all(x == 0 for x in cert.alpha) and cert.lam == 0
        assert brute_global(h, 1)[0] == 0

    def test_gap_trace(self):
        h, _ = gen_ig_global(1)
        off = ProblemSpec.global_budget(1, fill_heuristic=False)
        a, cert = solve_global(h, off)
        assert cert.lam == Q(1, 2)
        assert cert.alpha == (Q(1, 2), Q(1, 2))
        assert cert.levels == (Q(1), Q(1))
        assert a.colors == (frozenset(), frozenset())
        assert count_mistakes(h, off, a) == 2
        L = dual_objective(h, off, cert)
        assert L == Q(1, 2)
        assert 2 <= 2 * (1 + 1) * L
        on = ProblemSpec.global_budget(1)
        a2, _ = solve_global(h, on)
        assert a2.colors == (frozenset({0}), frozenset({0}))
        assert count_mistakes(h, on, a2) == 1
        assert brute_global(h, 1)[0] == 1

    def test_every_node_colored_with_fill(self):
        h = build_instance(3, 2, [({0}, 0, 1)])  # nodes 1, 2 isolated
        a, _ = solve_global(h, ProblemSpec.global_budget(0))
        assert all(len(s) >= 1 for s in a.colors)
        assert a.colors[1] == frozenset({0})

    def test_budget_zero_single_colors(self):
        h, _ = gen_ig_global(0)
        spec = ProblemSpec.global_budget(0)
        a, cert = solve_global(h, spec)
        assert a.extra_colors() == 0
        assert verify_dual(h, spec, cert).feasible

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValidationError):
            solve_global(build_instance(1, 1, []), ProblemSpec.robust(0))


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_budget_usage_and_ratio(data):
    h = data.draw(instances(max_nodes=8, max_edges=10, max_colors=4, rational_weights=True))
    b = data.draw(st.integers(0, 4))
    tau = data.draw(st.integers(0, 2))
    fill = data.draw(st.booleans())
    spec = ProblemSpec.global_budget(b, tau=tau, fill_heuristic=fill)
    a, cert = solve_global(h, spec)
    assert a.extra_colors() <= b + tau
    if fill:
        assert all(len(s) >= 1 for s in a.colors)
    assert verify_dual(h, spec, cert).feasible
    A = count_mistakes(h, spec, a)
    L = dual_objective(h, spec, cert)
    assert A * (tau + 1) <= (2 * tau + 2 + 2 * b) * L or (A == 0 and L == 0)
    assert mistakes_are_tight(h, cert, mistake_edges(h, a))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_alpha_tracks_lambda_at_every_step(seed):
    # the third dual constraint alpha_v <= lambda, plus alpha_v <= B_v/2,
    # checked at every step boundary
    h = seeded_instance(seed, max_nodes=10, max_edges=16, max_colors=4)
    spec = ProblemSpec.global_budget(1)

    def check(state):
        for v in range(h.node_count):
            assert state.alpha[v] <= state.lam
        for v in state.candidates:
            assert state.alpha[v] == state.lam  # candidates grow with lambda
        b_tot = [Q0] * h.node_count
        for e, members in enumerate(h.edge_members):
            row = state.beta_rows[e]
            if row is None:
                continue
            for slot, v in enumerate(members):
                b_tot[v] += row[slot]
        for v in range(h.node_count):
            assert 2 * state.alpha[v] <= b_tot[v] or state.alpha[v] == 0

    solve_global(h, spec, on_step=check)


@settings(max_examples=60, deadline=None)
@given(h=instances(max_nodes=5, max_edges=4, max_colors=3), b=st.integers(0, 2))
def test_oracle_bound_on_tiny_instances(h, b):
    spec = ProblemSpec.global_budget(b)
    a, cert = solve_global(h, spec)
    opt, _ = brute_global(h, b)
    assert count_mistakes(h, spec, a) <= 2 * (b + 1) * opt
    assert dual_objective(h, spec, cert) <= opt
