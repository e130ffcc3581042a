from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expander_lp import (
    ErrorContext,
    ExpansionParams,
    WeightAssignment,
    WitnessError,
    assign_weights,
    build_graph,
    check_dilation_bound,
    construct_witness,
    decoding_radius,
    dilate,
    find_q_matching,
    verify_feasible,
    x_interval,
)
from expander_lp.witness import case_bounds, choose_x, fraction_str, pairwise_ok_fast

F = Fraction


def P34(c, delta=F(1, 4)):
    return ExpansionParams(F(3, 4), delta, c)


class TestXInterval:
    def test_c8(self):
        assert x_interval(P34(8)) == (F(1, 4), F(1, 3))
        assert choose_x(P34(8)) == F(7, 24)

    def test_c4(self):
        # (2eps-1)c - 1 = 1 and (1-eps)c = 1 both cap x at 1
        assert x_interval(P34(4)) == (F(1, 2), F(1))

    def test_two_thirds_is_empty(self):
        with pytest.raises(ValueError, match="empty"):
            x_interval(ExpansionParams(F(2, 3), F(1, 4), 3))

    def test_eps_one_has_single_cap(self):
        lo, hi = x_interval(ExpansionParams(F(1), F(1, 4), 2))
        assert (lo, hi) == (F(1, 2), F(1))

    def test_no_upper_cap(self):
        assert x_interval(ExpansionParams(F(1), F(1, 4), 1)) == (F(1), None)
        assert choose_x(ExpansionParams(F(1), F(1, 4), 1)) == 2

    def test_non_integral_eps_c(self):
        with pytest.raises(ValueError, match="integer"):
            x_interval(P34(3))

    @pytest.mark.parametrize("c", [4, 8, 12, 16])
    def test_interval_nonempty_above_two_thirds(self, c):
        lo, hi = x_interval(P34(c))
        assert lo < choose_x(P34(c)) < hi


class TestDilation:
    def test_empty_error_set(self, small_expander):
        g, params = small_expander
        d = dilate(g, [], params)
        assert d.U_prime == frozenset()

    def test_overlap_rule_by_hand(self, small_expander):
        g, params = small_expander
        U = {0, 5}
        nu = g.neighbors(U)
        expected = {i for i in range(g.n) if i not in U and len(set(g.left_adj[i]) & nu) >= 2}
        assert dilate(g, U, params).U_hat == expected

    def test_bound_report(self, expander):
        g, params = expander
        for i in range(g.n):
            rep = check_dilation_bound(g, [i], params)
            assert rep.holds and rep.premise_ok and rep.hat_within_bound

    def test_premise_enforced(self, small_expander):
        g, params = small_expander
        with pytest.raises(WitnessError) as err:
            check_dilation_bound(g, [0, 1], params)
        assert err.value.stage == "dilation_bound"
        assert not check_dilation_bound(g, [0, 1], params, strict=False).premise_ok


class TestVerifyFeasible:
    def test_all_zero_weights(self, cycle_graph):
        w = WeightAssignment({e: F(0) for e in cycle_graph.edges}, F(1))
        rep = verify_feasible(cycle_graph, w, ErrorContext.from_errors(3, []))
        assert rep.feasible and rep.slack == (1, 1, 1)
        rep = verify_feasible(cycle_graph, w, ErrorContext.from_errors(3, [0]))
        assert not rep.feasible and rep.bad_nodes == (0,)

    def test_pairwise_failure(self, cycle_graph):
        tau = {e: F(0) for e in cycle_graph.edges}
        tau[(0, 0)] = F(-1)
        rep = verify_feasible(cycle_graph, WeightAssignment(tau, F(1)),
                              ErrorContext.from_errors(3, []))
        assert not rep.pairs_ok and rep.bad_checks == (0,)

    def test_missing_edge(self, cycle_graph):
        with pytest.raises(WitnessError, match="no weight"):
            verify_feasible(cycle_graph, WeightAssignment({}, F(1)),
                            ErrorContext.from_errors(3, []))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    def test_fast_pairwise_agrees(self, vals):
        g_edges = [(i, 0) for i in range(4)]
        g = build_graph(4, 1, g_edges)
        w = WeightAssignment({e: F(v) for e, v in zip(g_edges, vals)}, F(1))
        slow = verify_feasible(g, w, ErrorContext.from_errors(4, [])).pairs_ok
        assert pairwise_ok_fast(g, w) == slow


class TestConstructWitness:
    def test_every_single_error(self, expander):
        g, params = expander
        x = choose_x(params)
        for i in range(g.n):
            wit = construct_witness(g, [i], params)
            assert wit.report.feasible
            neg = [e for e, v in wit.weights.tau.items() if v < 0]
            assert len(neg) == 3 and all(e[0] == i for e in neg)
            assert set(wit.weights.tau.values()) <= {-x, F(0), x}

    def test_signs_follow_matching(self, small_expander):
        g, params = small_expander
        U = [3]
        wit = construct_witness(g, U, params)
        owner = wit.matching.owner()
        for (i, j), v in wit.weights.tau.items():
            if owner.get(j) in U:
                assert v == (-wit.weights.x if i == owner[j] else wit.weights.x)
            else:
                assert v == 0

    def test_case_bounds_dominate_sums(self, expander):
        g, params = expander
        for i in range(g.n):
            wit = construct_witness(g, [i], params)
            for case, s, bound in case_bounds(g, wit.dilation, wit.weights, params):
                assert s <= bound
            assert case_bounds(g, wit.dilation, wit.weights, params)[i][0] == "error"

    def test_zero_errors(self, small_expander):
        g, params = small_expander
        wit = construct_witness(g, [], params)
        assert all(v == 0 for v in wit.weights.tau.values())
        assert wit.report.feasible

    def test_stage_params(self, cycle_graph):
        with pytest.raises(WitnessError) as err:
            construct_witness(cycle_graph, [0], ExpansionParams(F(1, 2), F(1, 3), 2))
        assert err.value.stage == "params"
        with pytest.raises(WitnessError) as err:
            construct_witness(cycle_graph, [0], P34(4))
        assert err.value.stage == "params"

    def test_stage_dilation(self, small_expander):
        g, params = small_expander
        with pytest.raises(WitnessError) as err:
            construct_witness(g, [0, 1, 2, 3], params)
        assert err.value.stage == "dilation_bound"

    def test_stage_matching(self):
        # variables 0 and 1 share their four checks, so no
        # 3-matching for both; eps = 3/4, delta n = 2 lets the bound pass
        edges = [(i, j) for i in range(2) for j in range(4)] + [(2, j) for j in range(4, 8)]
        g = build_graph(3, 8, edges)
        params = ExpansionParams(F(3, 4), F(2, 3), 4)
        with pytest.raises(WitnessError) as err:
            construct_witness(g, [0], params)
        assert err.value.stage == "matching"

    def test_assign_weights_rejects_short_matching(self, small_expander):
        g, params = small_expander
        M = find_q_matching(g, [0], 2)
        with pytest.raises(WitnessError) as err:
            assign_weights(g, [0], M, params)
        assert err.value.stage == "weights"

    def test_json_shape(self, small_expander):
        g, params = small_expander
        out = construct_witness(g, [2], params).to_json()
        assert out["x"] == "3/4" and out["U"] == [2]
        assert len(out["edges"]) == len(g.edges)
        assert {e[2] for e in out["edges"]} <= {"+", "-", "0"}


class TestRadius:
    @pytest.mark.parametrize("eps, k, expected", [
        (F(3, 4), 3, 1), (F(3, 4), 2, 0), (F(3, 4), 5, 2), (F(1), 4, 3), (F(5, 6), 7, 4),
    ])
    def test_values(self, eps, k, expected):
        n = 20
        params = ExpansionParams(eps, F(k, n), 4)
        assert decoding_radius(params, n) == expected

    def test_requires_two_thirds(self):
        with pytest.raises(ValueError):
            decoding_radius(ExpansionParams(F(2, 3), F(1, 2), 3), 10)

    def test_radius_sets_pass_strict_premise(self, expander):
        g, params = expander
        t = decoding_radius(params, g.n)
        for U in itertools.combinations(range(g.n), t):
            assert check_dilation_bound(g, U, params).holds


def test_fraction_str():
    assert fraction_str(F(3)) == "3/1"
    assert fraction_str(F(-2, 4)) == "-1/2"
