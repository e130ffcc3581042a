# %% [markdown]
# A small certified expander code
#
# Random 4-left-regular graphs with n = m = 16 almost never expand by 3/4
# on all triples, so we grow one with a local search and then certify it by
# brute force. Everything after that is ordinary linear algebra over F2.

# %%
from fractions import Fraction

import numpy as np

from expander_lp import ExpansionParams, certify_expansion, codewords, min_distance, search_expander
from expander_lp.code import dimension, subset_count

params = ExpansionParams(Fraction(3, 4), Fraction(3, 16), 4)
g = search_expander(16, 16, 4, params, seed=2, max_steps=20_000)
print("variables:", g.n, " checks:", g.m, " c:", g.c)

# %%
cert = certify_expansion(g, params)
print(cert.status.value, "after", cert.checked_budget, "subsets of", subset_count(16, 3))

# %%
# check degrees and the parity-check matrix
H = g.parity_check_matrix()
print(H)
print("row weights:", H.sum(axis=1))
print("column weights:", H.sum(axis=0))

# %%
# the code itself is tiny; list it
words = np.array(list(codewords(g)))
print("dimension", dimension(g), "->", len(words), "codewords")
print(words)
print("weights:", words.sum(axis=1))
print("minimum distance:", min_distance(g, g.n))

# %%
# a plain random graph for comparison
from expander_lp import generate_regular

for seed in range(5):
    r = generate_regular(16, 16, 4, seed)
    c = certify_expansion(r, params)
    print(seed, c.status.value, c.violating_subset)
