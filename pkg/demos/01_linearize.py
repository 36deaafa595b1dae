# %% [markdown]
# # Linearizing a black-box plant
#
# A plant in the catalog is only a pair of callables, ``f(x, u)`` and
# ``h(x, u)``. Finite differences around the operating point give the
# continuous model; differentiating the one-period flow map gives the
# discrete one.

# %%
import numpy as np

from linspect.linearize import linearize_ct, linearize_dt
from linspect.plants import get_plant
from linspect.plants.catalog import LINEAR_DEMO_A
from linspect.statespace import c2d_zoh, suggest_sampling_time

np.set_printoptions(precision=5, suppress=True)

# %% [markdown]
# The linear demo plant is already linear, so the recovered matrices should
# match its definition to rounding.

# %%
demo = get_plant("linear-demo")
ct = linearize_ct(demo)
print(ct.a)
print("max |A - A_true| =", np.abs(ct.a - LINEAR_DEMO_A).max())

# %% [markdown]
# For a piecewise-constant input the flow-map model equals the zero-order
# hold discretization.

# %%
dt = linearize_dt(demo, ts=0.01)
print("max |A_d - zoh| =", np.abs(dt.a - c2d_zoh(ct, 0.01).a).max())

# %% [markdown]
# The CSTR is nonlinear. The sampling period comes from the fastest
# eigenvalue: 1 / (2 max|lambda|), rounded down to one significant figure.

# %%
cstr = get_plant("cstr")
ct = linearize_ct(cstr)
raw = suggest_sampling_time(ct, rounded=False)
ts = suggest_sampling_time(ct)
print(f"raw {raw:.4g} h -> ts {ts:g} h")
dt = linearize_dt(cstr, ts=ts)
print("continuous eigenvalues:", np.linalg.eigvals(ct.a))
print("exp(lambda ts):       ", np.exp(np.linalg.eigvals(ct.a) * ts))
print("discrete eigenvalues:  ", np.linalg.eigvals(dt.a))
print("metadata:", {k: dt.metadata[k] for k in ("method", "ts", "residual_norm")})
