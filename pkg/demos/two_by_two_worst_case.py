# %% [markdown]
# # How slow can a 2 x 2 solution decay?
#
# Take the Jordan block `A = [[-1, alpha], [0, -1]]` and a right-hand side
# `b = [t, 1]`. The solution of `A X + X A* = -b b*` is known in closed
# form, so the ratio `s_2 / s_1` can be maximised over `t` by hand.

# %%
import numpy as np

from lyapdecay import bounds, models
from lyapdecay.lyap import solve_lyapunov

# %% [markdown]
# The worst `t` is `-alpha/2`. A bounded scalar search agrees.

# %%
for alpha in (0.5, 1, 2, 4, 8):
    t_star, ratio, (t_num, ratio_num) = models.worst_case_t(alpha)
    print(f"alpha={alpha:<4} t*={t_star:+.4f} searched={t_num:+.8f} ratio={ratio:.6f}")

# %% [markdown]
# At `alpha = 2` the two singular values coincide, so there is no decay at
# all. Above that the ratio falls again like `4 / alpha^2`.

# %%
sol = solve_lyapunov(models.two_by_two(2.0, -1.0).problem)
print("X =\n", sol.X.real)

alphas = np.linspace(0.1, 10, 9)
solver = [solve_lyapunov(models.two_by_two(a, -a / 2).problem).ratios[1] for a in alphas]
print(np.c_[alphas, solver, models.piecewise_ratio(alphas)])

# %% [markdown]
# The numerical abscissa bound `s_2/s_1 <= 1 - omega_1/||A||` is exact at
# `alpha = 2` and tends to 1/2 for large `alpha`, while the true ratio goes to
# zero. The bound is about the rightmost point of `W(A)`, not the decay rate.

# %%
for alpha in (2.0, 10.0, 100.0):
    mp = models.two_by_two(alpha, -alpha / 2)
    rep = bounds.cor_genbnd(solve_lyapunov(mp.problem), mp.A)
    e = rep.entries[1]
    print(f"alpha={alpha:<6} bound={e.bound:.5f} actual={e.actual:.2e}")
