# %% [markdown]
# # Eigenvalue reports
#
# Eigenvalues are grouped into clusters with a multiplicity and tagged as
# stable, unstable, integrator or oscillatory.

# %%
from linspect.diagnostics import classify_ct, classify_dt, eigen_report
from linspect.linearize import linearize_ct, linearize_dt
from linspect.plants import get_plant
from linspect.statespace import suggest_sampling_time

# %% [markdown]
# A few single values first. Continuous values near the origin count as
# integrators; discrete values are judged against the unit circle.

# %%
for lam in (3.0648 + 5.0837j, -9.3925e-7, -1968.1):
    print(f"{lam!s:>20}  {sorted(classify_ct(lam))}")
for z in (1.0008 + 0.0013j, 1.0, 0.6114):
    print(f"{z!s:>20}  {sorted(classify_dt(z))}")

# %% [markdown]
# The reactor/separator surrogate has a level that only integrates flows,
# plus an unstable oscillatory pair.

# %%
rsr = get_plant("rsr")
ct = linearize_ct(rsr)
report = eigen_report(ct)
for row in report.rows():
    cid, re, im, mult, mag, classes, *_ = row
    print(f"{cid:>2}  {re:+.5g} {im:+.5g}i  x{mult}  |.|={mag:.4g}  {classes}")

# %%
dt = linearize_dt(rsr, ts=suggest_sampling_time(ct))
for c in eigen_report(dt).clusters:
    print(f"{c.value:.5f}  {c.label()}")
