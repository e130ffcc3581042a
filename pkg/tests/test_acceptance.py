"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that the conftest hook prints at the end
of the run. The module also runs standalone: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from _instances import EXPANDERS, load_expander, random_bipartite, random_lp
from expander_lp import (
    ExpansionParams,
    LPStatus,
    build_decoding_lp,
    build_graph,
    certify_expansion,
    codewords,
    construct_witness,
    decoding_radius,
    find_q_matching,
    generate_regular,
    hall_violation,
    is_codeword,
    lp_decode,
    min_distance,
    solve,
    vertex_oracle,
    verify_feasible,
    word_from_support,
    x_interval,
)
from expander_lp.code import xor_words
from expander_lp.harness import (
    ExperimentConfig,
    counterexample_graph,
    run_counterexample,
    run_experiment,
)
from expander_lp.witness import ErrorContext, case_bounds

F = Fraction
RESULTS: list[str] = []


def record(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(autouse=True)
def _fail_line_on_crash(request):
    before = len(RESULTS)
    yield
    if len(RESULTS) == before:
        RESULTS.append(f"FAIL  {request.node.name}: raised before reporting")


def certified_instances():
    out = []
    for name in sorted(EXPANDERS):
        g = load_expander(name)
        params = ExpansionParams(F(3, 4), F(3, g.n), 4)
        assert certify_expansion(g, params).certified
        out.append((name, g, params))
    return out


def radius_sets(g, params):
    t = decoding_radius(params, g.n)
    for w in range(t + 1):
        yield from itertools.combinations(range(g.n), w)


def test_c1_radius_reproduction():
    instances = certified_instances()
    total = failures = 0
    for name, g, params in instances:
        assert 10 <= g.n <= 16 and g.c == 4 and params.size_bound(g.n) in (2, 3)
        words = list(codewords(g))
        for U in radius_sets(g, params):
            e = word_from_support(g.n, U)
            for cw in words:
                res = lp_decode(g, xor_words(cw, e))
                total += 1
                if not (res.decoded and res.word == cw):
                    failures += 1
    record("C1 radius reproduction", len(instances) >= 3 and failures == 0,
           f"{len(instances)} certified instances, {total} decodes, {failures} failures")


def test_c2_witness_chain():
    dil_ok = match_ok = feas_ok = bound_ok = total = 0
    for _, g, params in certified_instances():
        for U in radius_sets(g, params):
            total += 1
            wit = construct_witness(g, U, params)
            dil_ok += len(wit.dilation.U_prime) <= params.delta * g.n
            q = int(params.eps_c)
            match_ok += all(len(wit.matching.checks_of(i)) >= q for i in wit.dilation.U_prime)
            # re-verify from scratch rather than trusting the stored report
            rep = verify_feasible(g, wit.weights, ErrorContext.from_errors(g.n, U))
            feas_ok += rep.feasible and all(s > 0 for s in rep.slack)
            bound_ok += all(s <= b for _, s, b in
                            case_bounds(g, wit.dilation, wit.weights, params))
    ok = dil_ok == match_ok == feas_ok == bound_ok == total
    record("C2 witness chain", ok,
           f"{total} error sets; dilation {dil_ok}, matching {match_ok}, "
           f"feasible {feas_ok}, case bounds {bound_ok}")


def test_c3_x_interval():
    got = x_interval(ExpansionParams(F(3, 4), F(1, 4), 8))
    try:
        x_interval(ExpansionParams(F(2, 3), F(1, 4), 3))
        raised = False
    except ValueError:
        raised = True
    record("C3 x interval", got == (F(1, 4), F(1, 3)) and raised,
           f"c=8, eps=3/4 -> ({got[0]}, {got[1]}); eps=2/3 raises: {raised}")


def test_c4_counterexample():
    g = counterexample_graph()
    params = ExpansionParams(F(1, 2), F(1, 2), 2)
    d = min_distance(g, g.n)
    cert = certify_expansion(g, params)
    res = lp_decode(g, word_from_support(g.n, [0]))
    recovered = res.decoded and res.word == (0,) * g.n
    summary = run_counterexample()
    ok = d == 2 and cert.certified and not recovered and not summary["unique_recovery"]
    record("C4 counterexample guard", ok,
           f"distance {d}, certificate {cert.status.value}, lp {res.status.value}")


def test_c5_solver_oracle():
    exact_ok = float_ok = 0
    statuses: dict[str, int] = {}
    for seed in range(200):
        lp = random_lp(seed)
        assert lp.num_vars <= 8 and len(lp.constraints) <= 16
        oracle = vertex_oracle(lp)
        statuses[oracle.status.value] = statuses.get(oracle.status.value, 0) + 1
        exact = solve(lp, "exact")
        exact_ok += exact.status is oracle.status and exact.value == oracle.value
        flt = solve(lp, "float")
        if oracle.status is LPStatus.OPTIMAL:
            float_ok += (flt.status is LPStatus.OPTIMAL
                         and abs(flt.value - float(oracle.value)) <= 1e-7)
        else:
            float_ok += flt.status is oracle.status
    mix = ", ".join(f"{k} {v}" for k, v in sorted(statuses.items()))
    record("C5 solver oracle equivalence", exact_ok == float_ok == 200,
           f"exact {exact_ok}/200, float {float_ok}/200 ({mix})")


def test_c6_matching_duality():
    agree = flow_agree = infeasible = 0
    for seed in range(500):
        g = random_bipartite(seed)
        rng = np.random.default_rng([seed, 5])
        k = int(rng.integers(0, min(g.n, 10) + 1))
        X = sorted(int(i) for i in rng.choice(g.n, size=k, replace=False))
        q = int(rng.integers(1, 4))
        M = find_q_matching(g, X, q)
        hall = hall_violation(g, X, q)
        agree += (M is None) == (hall is not None)
        infeasible += M is None
        # independent check: max flow with capacity q out of each x
        D = nx.DiGraph()
        for i in X:
            D.add_edge("s", ("x", i), capacity=q)
            for j in g.left_adj[i]:
                D.add_edge(("x", i), ("c", j), capacity=1)
        for j in range(g.m):
            D.add_edge(("c", j), "t", capacity=1)
        flow = nx.maximum_flow_value(D, "s", "t") if X else 0
        flow_agree += (M is not None) == (flow == q * len(X))
    record("C6 matching duality", agree == flow_agree == 500,
           f"{agree}/500 agree with Hall, {flow_agree}/500 with max flow, "
           f"{infeasible} infeasible")


def polytope_instances():
    yield "3-cycle", build_graph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    yield "counterexample", counterexample_graph()
    for seed in range(3):
        yield f"regular(12,9,3) seed {seed}", generate_regular(12, 9, 3, seed)
    for seed in range(2):
        yield f"regular(10,8,4) seed {seed}", generate_regular(10, 8, 4, seed)
    yield "regular(12,6,2)", generate_regular(12, 6, 2, 0)


def test_c7_polytope_soundness():
    checked = mismatched = 0
    for _, g in polytope_instances():
        assert g.n <= 12
        lp = build_decoding_lp(g, (0,) * g.n)
        cube = list(itertools.product((0, 1), repeat=g.n))
        in_polytope = {w for w in cube if lp.violation(w) == 0}
        in_code = {w for w in cube if is_codeword(g, w)}
        checked += 1
        mismatched += in_polytope != in_code or in_code != set(codewords(g))
    record("C7 polytope soundness", mismatched == 0,
           f"{checked} instances with n <= 12, {mismatched} mismatches")


def test_c8_determinism():
    identical = runs = 0
    g = load_expander("n16_s2")
    configs = [
        ExperimentConfig(F(3, 4), F(3, 16), weights=(0, 1, 2), trials=40, seed=11),
        ExperimentConfig(F(3, 4), F(3, 16), weights=(1,), seed=11, codewords_per_set=3),
        ExperimentConfig(F(3, 4), F(3, 16), weights=(3,), trials=25, seed=5,
                         decoders=("flip",)),
    ]
    for cfg in configs:
        a, b = run_experiment(g, cfg), run_experiment(g, cfg)
        runs += 1
        identical += a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
    other = run_experiment(g, ExperimentConfig(F(3, 4), F(3, 16), weights=(0, 1, 2),
                                               trials=40, seed=12))
    seed_matters = other.to_json() != run_experiment(g, configs[0]).to_json()
    record("C8 determinism", identical == runs and seed_matters,
           f"{identical}/{runs} configurations byte-identical; other seed differs: {seed_matters}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
