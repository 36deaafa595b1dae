# %% [markdown]
# # Condition number and rank across frequency
#
# At each frequency the transfer matrix G(jw) is formed, its singular values
# computed, and gamma = sigma_max / sigma_min recorded along with the
# numerical rank.

# %%
import numpy as np

from linspect.diagnostics import condition_sweep, default_grid, numerical_rank
from linspect.linearize import linearize_ct, linearize_dt
from linspect.plants import get_plant
from linspect.statespace import FrequencyGrid, model_from_arrays

# %% [markdown]
# diag(1, 1/(s+1)) has gamma = sqrt(2) at w = 1.

# %%
g = model_from_arrays([[-1.0]], [[0.0, 1.0]], [[0.0], [1.0]], [[1.0, 0.0], [0.0, 0.0]])
sw = condition_sweep(g, FrequencyGrid([0.1, 1.0, 10.0]))
print(sw.gamma, np.sqrt(2))

# %% [markdown]
# The default rank threshold is max(p, m) * eps * sigma_max.

# %%
print(numerical_rank([1.0, 1e-3, 1e-20]))
print(numerical_rank([1.0, 1e-3, 1e-20], tol=1e-2))

# %% [markdown]
# For the surrogate plant the continuous and discrete models can be swept
# on the same grid; the discrete grid stops at the Nyquist frequency.

# %%
rsr = get_plant("rsr")
ct = linearize_ct(rsr)
dt = linearize_dt(rsr, ts=0.05)
for name, model in (("ct", ct), ("dt", dt)):
    sw = condition_sweep(model, default_grid(model, points=60))
    s = sw.summary()
    print(f"{name}: points {s['points']}, max gamma {s['max_gamma']:.4g}, "
          f"rank {s['min_rank']}..{s['max_rank']}, changes at {s['rank_changes']}")

# %% [markdown]
# With a coarse absolute threshold the rank drops at high frequency, where
# the slow channels roll off.

# %%
sw = condition_sweep(ct, default_grid(ct, points=60), rank_tol=1e-3)
for w, r in zip(sw.omega[::6], sw.rank[::6]):
    print(f"w = {w:10.4g} rad/h   rank {r}")
