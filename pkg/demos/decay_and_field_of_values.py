# %% [markdown]
# # Decay follows the field of values
#
# Two families with a single repeated eigenvalue. Their spectra say nothing
# about decay; their numerical ranges say a lot.

# %%
from pathlib import Path

import numpy as np

from lyapdecay import experiments

out = Path("demo_out")

# %% [markdown]
# ## Forward differences for `d/dx - 1`
#
# As `n` grows the numerical range swells towards the imaginary axis and
# the singular values of `X` decay more slowly.

# %%
cfg = experiments.ExperimentConfig(n=[16, 32, 64, 128], m=64, out=out)
fig1 = experiments.run_fig1(cfg)
for n, r in fig1.data["ratios"].items():
    print(f"n={n:<4} omega={fig1.data['nranges'][n].abscissa:+.5f} s_10/s_1={r[9]:.3e}")

# %% [markdown]
# ## `-I + alpha S` at `n = 64`
#
# The disk `W(A)` has radius `alpha cos(pi/65)`. At `alpha = 1` it just
# touches the imaginary axis and the decay is slowest. Pushing `alpha`
# further puts `W(A)` into the right half-plane, yet the decay speeds up.

# %%
fig2 = experiments.run_fig2(experiments.ExperimentConfig(m=64, out=out))
for a, r in fig2.data["ratios"].items():
    print(f"alpha={a:<4} radius={fig2.data['radii'][a]:.4f} s_10/s_1={r[9]:.3e}")
print("files:", *map(str, fig1.files + fig2.files), sep="\n  ")

# %%
assert fig2.data["ratios"][1.0][9] == max(r[9] for r in fig2.data["ratios"].values())
assert np.all(np.diff([r[9] for r in fig1.data["ratios"].values()]) > 0)
