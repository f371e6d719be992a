import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from eccsolve import (
    ProblemSpec,
    ValidationError,
    brute_robust,
    build_instance,
    count_mistakes,
    dual_objective,
    gen_ig_robust,
    mistakes_are_tight,
    robust_bicriteria_threshold,
    solve_robust,
    verify_dual,
)
from eccsolve.rational import Q

from util import instances, mistake_edges, seeded_instance


class TestBicriteriaThreshold:
    def test_values(self):
        assert robust_bicriteria_threshold(1, 2) == 0
        assert robust_bicriteria_threshold(2, 1) == 3
        assert robust_bicriteria_threshold(3, 4) == 1

    def test_ranges(self):
        with pytest.raises(ValidationError):
            robust_bicriteria_threshold(0, 1)
        with pytest.raises(ValidationError):
            robust_bicriteria_threshold(2, 5)


class TestSolveRobust:
    def test_small_candidate_set_terminates_immediately(self):
        # path a-b-c with two colors: only b has color-degree 2
        h = build_instance(3, 2, [({0, 1}, 0, 1), ({1, 2}, 1, 1)])
        spec = ProblemSpec.robust(1)
        a, cert = solve_robust(h, spec)
        assert a.removed == {1}
        assert a.color[0] == 0 and a.color[2] == 1
        assert count_mistakes(h, spec, a) == 0
        assert all(x == 0 for x in cert.alpha) and cert.lam == 0
        assert brute_robust(h, 1)[0] == 0

    def test_gap_trace(self):
        h, _ = gen_ig_robust(1)
        off = ProblemSpec.robust(1, fill_heuristic=False)
        a, cert = solve_robust(h, off)
        # one step of length 1/2 tightens both edges; nobody gets removed
        assert a.removed == frozenset()
        assert cert.lam == Q(1, 2)
        assert cert.alpha == (Q(1, 2), Q(1, 2))
        assert cert.levels == (Q(1), Q(1))
        assert a.color == (None, None)
        assert count_mistakes(h, off, a) == 2
        L = dual_objective(h, off, cert)
        assert L == Q(1, 2)
        assert 2 <= 2 * (1 + 1) * L  # certified 2 <= 2
        on = ProblemSpec.robust(1)
        a2, _ = solve_robust(h, on)
        assert a2.color == (0, 0)  # majority tie-breaks to the smaller color id
        assert count_mistakes(h, on, a2) == 1
        assert brute_robust(h, 1)[0] == 1

    def test_budget_zero(self):
        h, _ = gen_ig_robust(0)
        spec = ProblemSpec.robust(0, fill_heuristic=False)
        a, cert = solve_robust(h, spec)
        assert a.removed == frozenset()
        assert verify_dual(h, spec, cert).feasible
        A, L = count_mistakes(h, spec, a), dual_objective(h, spec, cert)
        assert A <= 2 * L

    def test_majority_color_weighs_by_weight(self):
        h = build_instance(1, 2, [({0}, 0, 1), ({0}, 1, 3)])
        spec = ProblemSpec.robust(0)
        a, _ = solve_robust(h, spec)
        assert a.color == (1,)

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValidationError):
            solve_robust(build_instance(1, 1, []), ProblemSpec.local(1))


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_removals_within_budget_and_ratio(data):
    h = data.draw(instances(max_nodes=8, max_edges=10, max_colors=4, rational_weights=True))
    b = data.draw(st.integers(0, 3))
    tau = data.draw(st.integers(0, 2))
    fill = data.draw(st.booleans())
    spec = ProblemSpec.robust(b, tau=tau, fill_heuristic=fill)
    a, cert = solve_robust(h, spec)
    assert len(a.removed) <= b + tau
    assert verify_dual(h, spec, cert).feasible
    A = count_mistakes(h, spec, a)
    L = dual_objective(h, spec, cert)
    # exact certified bound mistakes <= (2 + 2b/(tau+1)) * dual objective
    assert A * (tau + 1) <= (2 * tau + 2 + 2 * b) * L or (A == 0 and L == 0)
    assert mistakes_are_tight(h, cert, mistake_edges(h, a))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_dual_feasible_at_every_step_boundary(seed):
    h = seeded_instance(seed, max_nodes=10, max_edges=16, max_colors=4)
    spec = ProblemSpec.robust(1)
    from eccsolve._stepper import freeze_certificate

    steps = []

    def check(state):
        cert = freeze_certificate(h, state)
        assert verify_dual(h, spec, cert).feasible
        # the incrementally maintained candidate set always equals its
        # definition {v : loose color-degree >= 2}
        assert state.candidates == {
            v for v in range(h.node_count) if len(state.live_colors[v]) >= 2
        }
        # candidates' beta total minus alpha tracks lambda exactly; this
        # equality is what makes the certified ratio hold with zero slack
        for v in state.candidates:
            b_tot = sum(
                (cert.beta[e][slot] for e, slot in h._inc_pairs[v]), Q(0)
            )
            assert b_tot - state.alpha[v] == state.lam
        steps.append(state.iterations)

    solve_robust(h, spec, on_step=check)
    assert steps == sorted(steps)
    assert len(steps) <= h.num_edges  # every iteration tightens an edge


@settings(max_examples=60, deadline=None)
@given(h=instances(max_nodes=5, max_edges=4, max_colors=3), b=st.integers(0, 2))
def test_oracle_bound_on_tiny_instances(h, b):
    spec = ProblemSpec.robust(b)
    a, cert = solve_robust(h, spec)
    opt, _ = brute_robust(h, b)
    assert count_mistakes(h, spec, a) <= 2 * (b + 1) * opt
    assert dual_objective(h, spec, cert) <= opt
