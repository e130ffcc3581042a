# %% [markdown]
# Building a dual witness by hand
#
# For a single flipped bit on a certified instance we dilate the error set,
# find a 3-matching, place weights -x / +x on the edges and check that
# every variable's weight sum stays strictly below its sign.

# %%
from fractions import Fraction
from pathlib import Path

import numpy as np

from expander_lp import (
    ErrorContext,
    ExpansionParams,
    assign_weights,
    dilate,
    find_q_matching,
    read_alist,
    verify_feasible,
    x_interval,
)
from expander_lp.witness import case_bounds, choose_x

data = Path(__file__).resolve().parent.parent / "tests" / "data"
g = read_alist(data / "expander_n14_s2.alist")
params = ExpansionParams(Fraction(3, 4), Fraction(3, 14), 4)

lo, hi = x_interval(params)
x = choose_x(params)
print(f"x must lie in ({lo}, {hi}); using x = {x}")

# %%
U = {6}
d = dilate(g, U, params)
print("N(U) =", sorted(g.neighbors(U)))
print("U_hat =", sorted(d.U_hat), " U' =", sorted(d.U_prime))

# %%
M = find_q_matching(g, d.U_prime, 3)
for i in sorted(d.U_prime):
    print(f"variable {i} owns checks {M.checks_of(i)}")

# %%
w = assign_weights(g, U, M, params)
tau = np.zeros((g.n, g.m))
for (i, j), v in w.tau.items():
    tau[i, j] = float(v)
print(tau)

# %%
rep = verify_feasible(g, w, ErrorContext.from_errors(g.n, U))
print("pairwise ok:", rep.pairs_ok, " sums ok:", rep.sums_ok)
for i, (case, s, bound) in enumerate(case_bounds(g, d, w, params)):
    print(f"{i:2d} {case:8s} sum={str(s):5s} bound={bound}  slack={rep.slack[i]}")

# %%
# two errors are past the radius; the dilated set outgrows delta n
from expander_lp import WitnessError, construct_witness

try:
    construct_witness(g, [0, 1], params)
except WitnessError as err:
    print(err.stage, "->", err)
