# %% [markdown]
# # Expected length under clean and contaminated data
#
# Each replication has its own random stream derived from the seed and the
# replication index, so the numbers below do not change with the worker count.

# %%
from robust_median import ContaminationScenario, MCConfig, TargetDistribution, estimate_expected_length

normal = TargetDistribution.normal()
print("    n   eps   clean EL        contaminated EL")
for n in (40, 100, 500):
    for eps in (0.05, 0.10):
        clean = estimate_expected_length(
            MCConfig(normal, ContaminationScenario(eps, 0.0), n, 0.05, reps=2000, seed=3))
        dirty = estimate_expected_length(
            MCConfig(normal, ContaminationScenario(eps, eps, "+inf"), n, 0.05, reps=2000, seed=3))
        print(f"{n:5d}  {eps:.2f}   {clean.mean_length:.3f} ({clean.se_length:.3f})   "
              f"{dirty.mean_length:.3f} ({dirty.se_length:.3f})")

# %% [markdown]
# Contamination "at infinity" is simulated at a finite point y.  For small n
# a few samples carry more than k contaminated values, and then an endpoint
# sits on y itself, so the contaminated average keeps growing with y.

# %%
for y in (10.0, 30.0, 100.0):
    res = estimate_expected_length(
        MCConfig(normal, ContaminationScenario(0.10, 0.10, "+inf"), 20, 0.05,
                 reps=8000, seed=0, contamination_value=y))
    print(f"n=20  y={y:5.0f}  EL {res.mean_length:.3f}  endpoints at y: {res.infinite_length_count}")
