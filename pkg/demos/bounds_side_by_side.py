# %% [markdown]
# # Every bound on one page
#
# ADI, eigenvector conditioning, field of values, pseudospectra,
# the eigenvalue-ordering bound, the Krylov/companion factorisation and the new
# numerical abscissa bound, evaluated on the same problems.

# %%
from pathlib import Path

import numpy as np

from lyapdecay import experiments

out = Path("demo_out")


def show(res, k_max=6):
    table = res.data["table"]
    ratios = res.data["solution"].ratios
    print("k   actual     " + "".join(f"{name:>11}" for name in table))
    for k in range(1, k_max + 1):
        cells = "".join(f"{table[name][k - 1]:11.2e}" for name in table)
        print(f"{k:<3} {ratios[k - 1]:.2e}  {cells}")
    for name, rep in res.data["reports"].items():
        if not rep.valid:
            print(f"{name}: not applicable ({rep.reason})")


# %% [markdown]
# A small random problem. Most classical bounds apply, none is tight.

# %%
cfg = experiments.ExperimentConfig(model="random", n=[6], seed=3, grid=128, out=out / "random")
show(experiments.run_bounds_compare(experiments.build_problem(cfg), cfg))

# %% [markdown]
# The Jordan family with `alpha = 4`: `A` is defective, `W(A)` crosses
# into the right half-plane and the shifts sit inside it. Only ADI and
# the abscissa bound survive, and the latter gives nontrivial numbers.

# %%
cfg = experiments.ExperimentConfig(model="jordan", n=[64], alpha=[4.0], grid=96, m=64, out=out / "jordan")
res = experiments.run_bounds_compare(experiments.build_problem(cfg), cfg)
show(res)
live = [e for e in res.data["reports"]["cor_genbnd"].entries if not e.vacuous]
print(f"{len(live)} non-vacuous abscissa bounds; tightest {min(e.bound for e in live):.3f}")
assert np.isnan(res.data["table"]["nr"]).all()
