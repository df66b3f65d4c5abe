# %% [markdown]
# # When can a Holder map push the l^p system into l^q?
#
# Compare how the profile bounds behave on both sides. A source profile with
# index alpha*q has vanishing upper bound when alpha*q > p, while its pushforward
# keeps a positive floor on the target. That mismatch rules the map out.

# %%
from fractions import Fraction

from holdermd import run_obstruction, theorem_verdict

# %%
for p, q, alpha in [(2, 3, 1), (2, 3, Fraction(2, 3)), (3, 2, 1), (1, 2, 0.6)]:
    print(p, q, alpha, theorem_verdict(p, q, alpha).verdict.value)

# %%
report = run_obstruction(2, 3, 1, i_max=30)
print(report.to_json())
