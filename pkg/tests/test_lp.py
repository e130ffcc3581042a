from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _instances import random_lp
from expander_lp import (
    LinearProgram,
    LPStatus,
    Uniqueness,
    enumerate_vertices,
    is_unique_optimum,
    solve,
    vertex_oracle,
)
from expander_lp.lp import extreme_rays, format_lp

F = Fraction


def beale():
    """Classic instance on which the largest-coefficient rule cycles."""
    return LinearProgram(
        4,
        (F(-3, 4), 20, F(-1, 2), 6),
        (
            ((F(1, 4), -8, -1, 9), "<=", 0),
            ((F(1, 2), -12, F(-1, 2), 3), "<=", 0),
            ((0, 0, 1, 0), "<=", 1),
        ),
    )


class TestModel:
    def test_defaults_and_validation(self):
        lp = LinearProgram(2, (1, 1))
        assert lp.bounds == ((0, None), (0, None))
        with pytest.raises(ValueError):
            LinearProgram(2, (1,))
        with pytest.raises(ValueError):
            LinearProgram(1, (1,), bounds=((None, 1),))
        with pytest.raises(ValueError):
            LinearProgram(1, (1,), bounds=((2, 1),))
        with pytest.raises(ValueError):
            LinearProgram(1, (1,), (((1,), "<", 0),))

    def test_violation(self):
        lp = LinearProgram(2, (0, 0), (((1, 1), "<=", 1), ((1, -1), "=", 0)), ((0, 1), (0, 1)))
        assert lp.violation((F(1, 2), F(1, 2))) == 0
        assert lp.violation((1, 1)) == 1
        assert "minimize" in format_lp(lp)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            solve(LinearProgram(1, (1,)), "approx")


class TestSolve:
    def test_beale_terminates_at_optimum(self):
        trace: list = []
        sol = solve(beale(), trace=trace)
        assert sol.status is LPStatus.OPTIMAL
        assert sol.value == F(-5, 4)
        assert sol.point == (1, 0, 1, 0)
        assert sol.pivots == len(trace)
        # Bland's rule never revisits a basis within a phase
        assert len(set(map(tuple, trace))) == len(trace)

    def test_beale_float(self):
        sol = solve(beale(), "float")
        assert sol.status is LPStatus.OPTIMAL and abs(sol.value + 1.25) < 1e-9

    def test_infeasible(self):
        lp = LinearProgram(2, (1, 1), (((1, 1), ">=", 3), ((1, 0), "<=", 1), ((0, 1), "<=", 1)))
        assert solve(lp).status is LPStatus.INFEASIBLE

    def test_unbounded(self):
        lp = LinearProgram(2, (-1, 0), (((1, -1), "<=", 1),))
        assert solve(lp).status is LPStatus.UNBOUNDED

    def test_equality_and_shifted_bounds(self):
        lp = LinearProgram(
            3, (1, 2, -1),
            (((1, 1, 1), "=", 2), ((1, -1, 0), ">=", -3)),
            ((-1, 2), (-2, None), (0, F(5, 2))),
        )
        sol = solve(lp)
        assert sol.status is LPStatus.OPTIMAL
        assert lp.violation(sol.point) == 0
        assert sol.value == vertex_oracle(lp).value

    def test_redundant_equalities(self):
        lp = LinearProgram(2, (1, 1), (((1, 1), "=", 1), ((2, 2), "=", 2)))
        sol = solve(lp)
        assert sol.status is LPStatus.OPTIMAL and sol.value == 1
        assert sol.unique is Uniqueness.NO

    def test_exact_inputs_accept_strings(self):
        lp = LinearProgram(2, ("-1", -1), ((("0.5", 1), "<=", "1/3"),))
        sol = solve(lp)
        assert sol.point == (F(2, 3), 0) and sol.value == F(-2, 3)
        assert all(isinstance(v, Fraction) for v in sol.point)

    def test_box_vertices(self):
        lp = LinearProgram(2, (1, 1), bounds=((0, 1), (0, 1)))
        assert enumerate_vertices(lp) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert extreme_rays(lp) == []


class TestUniqueness:
    def test_strict(self):
        lp = LinearProgram(1, (1,), bounds=((0, 1),))
        assert solve(lp).unique is Uniqueness.YES

    def test_flat_objective(self):
        lp = LinearProgram(1, (0,), bounds=((0, 1),))
        assert solve(lp).unique is Uniqueness.NO

    def test_optimal_edge(self):
        lp = LinearProgram(2, (-1, -1), (((1, 1), "<=", 1),))
        sol = solve(lp)
        assert sol.value == -1 and sol.unique is Uniqueness.NO

    def test_degenerate_vertex_is_unique(self):
        # three constraints through the optimum (0, 0) in the plane
        lp = LinearProgram(2, (1, 1), (((1, -1), "<=", 0), ((-1, 1), "<=", 0)))
        sol = solve(lp)
        assert sol.value == 0 and sol.unique is Uniqueness.YES
        assert is_unique_optimum(lp, sol) is Uniqueness.YES

    def test_unresolved_is_never_wrong(self):
        for seed in range(80):
            lp = random_lp(seed, max_vars=5, max_cons=8)
            sol = solve(lp)
            if sol.status is not LPStatus.OPTIMAL:
                continue
            quick = is_unique_optimum(lp, sol, resolve=False)
            full = is_unique_optimum(lp, sol, resolve=True)
            assert full is not Uniqueness.UNKNOWN
            assert quick in (full, Uniqueness.UNKNOWN)

    def test_requires_optimal(self):
        lp = LinearProgram(1, (-1,))
        with pytest.raises(ValueError):
            is_unique_optimum(lp, solve(lp))


class TestOracle:
    def test_oracle_status(self):
        assert vertex_oracle(LinearProgram(1, (-1,))).status is LPStatus.UNBOUNDED
        lp = LinearProgram(1, (1,), (((1,), ">=", 2),), ((0, 1),))
        assert vertex_oracle(lp).status is LPStatus.INFEASIBLE

    def test_oracle_size_limit(self):
        with pytest.raises(ValueError):
            enumerate_vertices(LinearProgram(11, (0,) * 11))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_solver_matches_oracle(self, seed):
        lp = random_lp(seed, max_vars=6, max_cons=10)
        oracle = vertex_oracle(lp)
        exact = solve(lp)
        assert exact.status is oracle.status
        assert exact.value == oracle.value
        if oracle.status is LPStatus.OPTIMAL:
            assert exact.point in oracle.optimal_vertices
            assert (exact.unique is Uniqueness.YES) == oracle.unique
            flt = solve(lp, "float")
            assert flt.status is LPStatus.OPTIMAL
            assert abs(flt.value - float(oracle.value)) <= 1e-7
