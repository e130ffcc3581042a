# %% [markdown]
# LP decoding versus bit flipping, inside and past the radius
#
# The guaranteed radius for these instances is 1. Past it nothing is
# promised, so the interesting numbers are the ones for weights 2 and 3.

# %%
from fractions import Fraction
from pathlib import Path

import numpy as np

from expander_lp import read_alist
from expander_lp.harness import ExperimentConfig, run_counterexample, run_experiment

data = Path(__file__).resolve().parent.parent / "tests" / "data"
g = read_alist(data / "expander_n16_s0.alist")
config = ExperimentConfig(
    epsilon=Fraction(3, 4), delta=Fraction(3, 16), weights=(0, 1, 2, 3), trials=60, seed=1)
report = run_experiment(g, config)
print(report.to_csv())

# %%
rows = report.rows
table = np.array([[r.weight, r.trials, r.lp_success_count, r.flip_success_count] for r in rows])
rates = table[:, 2:] / table[:, 1:2]
for (w, *_), (lp, flip) in zip(table, rates):
    print(f"weight {w}: lp {lp:.2f}  flip {flip:.2f}")

# %%
# sampled weight-3 failures where the LP itself gave up
for f in rows[-1].failures:
    if f["lp"] != "ok":
        print(f)

# %%
# the distance-2 code at expansion 1/2: one error, and LP decoding cannot
# pick between the two nearest codewords
print(run_counterexample())
