# %% [markdown]
# # Weighted window metric on sparse sequences
#
# Points are finitely supported sequences indexed by a group. The base metric
# averages coordinate gaps over growing balls with geometric weights.

# %%
import math

import numpy as np

from holdermd import BallRule, GroupModel, LpPoint, MetricSpec, WeightScheme, act, base_metric, word_ball

# %%
Z = GroupModel.lattice(1)
spec = MetricSpec(BallRule(Z), WeightScheme(0.5), r=math.inf)
x = LpPoint.atom(Z, Z.identity, 1.0, p=2)
y = LpPoint.zero(Z, p=2)
print(base_metric(spec, x, y))

# %% [markdown]
# Translating an atom far away makes it nearly invisible to the metric.

# %%
for k in (1, 4, 16, 64):
    print(k, base_metric(spec, act((k,), x), y))

# %%
F2 = GroupModel.free(2)
ball = word_ball(F2, 3)
print(len(ball), F2.ball_size(3))
