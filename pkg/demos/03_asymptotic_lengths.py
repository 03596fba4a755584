# %% [markdown]
# # Limiting length of the robust interval
#
# As n grows the interval converges to a pair of quantiles of the clean
# distribution.  Designing for eps costs some length under clean data, and
# actual contamination delta costs more.  Past delta = (1 - eps) / 2 the
# length is unbounded.

# %%
from robust_median import TargetDistribution
from robust_median.asymptotics import (
    length_breakdown,
    max_asymptotic_length,
    parametric_length,
)

normal = TargetDistribution.normal()
print("eps   clean   delta=eps  parametric  breakdown")
for eps in (0.05, 0.10, 0.15, 0.20):
    print(f"{eps:.2f}  {max_asymptotic_length(normal, eps, 0.0):.3f}   "
          f"{max_asymptotic_length(normal, eps, eps):.3f}      {parametric_length(eps):.3f}       "
          f"{length_breakdown(eps):.3f}")

# %% [markdown]
# Heavier tails stretch the same quantile gap.

# %%
for dist in (TargetDistribution.normal(), TargetDistribution.logistic(),
             TargetDistribution.laplace(), TargetDistribution.cauchy()):
    print(f"{dist.family.value:9s} {max_asymptotic_length(dist, 0.10, 0.05):.3f}")

# %% [markdown]
# A single large clean sample already sits near the limit, and the gap
# shrinks roughly like 1/sqrt(n).

# %%
import numpy as np

from robust_median import Sample, build_interval, select_k

limit = max_asymptotic_length(normal, 0.10, 0.0)
rng = np.random.default_rng(0)
for n in (10**3, 10**4, 10**5, 10**6):
    iv = build_interval(Sample(rng.standard_normal(n)), select_k(n, 0.05, 0.10))
    print(f"n={n:8d}  length {iv.length:.4f}  limit {limit:.4f}  gap {iv.length - limit:+.4f}")
