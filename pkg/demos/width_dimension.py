# %% [markdown]
# # Width dimension of the unit l^p ball
#
# The width dimension at scale eps steps down by one each time eps crosses
# a threshold 2 m^(-1/p). The soft-threshold clip gives an explicit map that
# attains the bound.

# %%
import numpy as np

from holdermd import clip_embedding, fiber_diameter_oracle, wdm_closed_form
from holdermd.widthdim import threshold

# %%
n, p = 8, 2.0
for eps in np.linspace(0.4, 2.2, 10):
    print(f"eps={eps:.2f}  wdm={wdm_closed_form(n, p, eps)}")

# %% [markdown]
# At an exact threshold the value belongs to the lower interval.

# %%
print(threshold(4, p), wdm_closed_form(n, p, threshold(4, p)))

# %%
w = clip_embedding(np.array([0.8, 0.15, 0.05]), p=1.0, r=1)
print(w.threshold, w.sparsity, w.image)

# %% [markdown]
# Largest fiber of the clip on a grid, against the bound 2 (r+1)^(-1/p) + 2h.

# %%
h = 0.05
for r in (1, 2):
    print(r, fiber_diameter_oracle(2.0, 3, r, h), 2 * (r + 1) ** -0.5 + 2 * h)
