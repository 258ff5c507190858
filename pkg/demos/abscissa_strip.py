# %% [markdown]
# # Where can the numerical abscissa be?
#
# Knowing only `||A||`, `||B||` and the extreme singular values of `X`
# pins `omega(A)` into an interval.

# %%
from pathlib import Path

from lyapdecay import bounds, experiments, models
from lyapdecay.lyap import solve_lyapunov

res = experiments.run_strip(experiments.ExperimentConfig(out=Path("demo_out")))
print("strip for ||A|| = ||B|| = s_1 = 1, s_n = 1/2:", res.data["lower"], res.data["upper"])

# %% [markdown]
# The same check on an actual problem: the interval brackets the true
# abscissa, and all `n` Hermitian-part eigenvalues are bracketed as well.

# %%
p = models.random_stable(10, 2, seed=5, alpha=4.0)
sol = solve_lyapunov(p)
print("lower, omega, upper:", bounds.cor_s1n(sol, p.A, p.B))
for e in bounds.abscissa_bounds(sol, p.A, p.B)[:4]:
    print(f"k={e.k}: {e.lower:+.3f} <= {e.value:+.3f} <= {e.upper:+.3f}")
