# %% [markdown]
# # Probing the Holder exponent of the Mazur map
#
# The coordinatewise power map sends the l^p ball to the l^q ball. At the
# exponent p/q the ratio of distances stays below 2^(1-p/q); above it, the
# ratio blows up as pairs get closer.

# %%
import math

from holdermd import BallRule, GroupModel, MetricSpec, WeightScheme, holder_probe, power_holder_certificate

# %%
Z = GroupModel.lattice(1)
spec = MetricSpec(BallRule(Z), WeightScheme(), r=math.inf)
p, q = 1.0, 2.0
report = holder_probe(p, q, spec, spec, beta=p / q, n_samples=2000, seed=1)
print(report.overall_max, power_holder_certificate(p, q))

# %%
steep = holder_probe(p, q, spec, spec, beta=p / q + 0.1, n_samples=2000, seed=1)
for decade, (count, worst) in sorted(steep.buckets.items()):
    print(f"2^{decade:>4}  n={count:>4}  max ratio {worst:.4g}")
