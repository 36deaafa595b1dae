# %% [markdown]
# # Scoring linear models against the nonlinear plant
#
# Both models and the plant receive the same input step. Per output channel
# we report the percent deviation of the nonlinear mean from nominal and,
# for each model, the mean linear-minus-nonlinear error over nominal.
# Summing the absolute errors gives one aggregate per model.

# %%
from linspect.diagnostics import compare_linearizations
from linspect.linearize import linearize_ct, linearize_dt
from linspect.plants import InputSchedule, get_plant
from linspect.statespace import suggest_sampling_time

rsr = get_plant("rsr")
ct = linearize_ct(rsr)
dt = linearize_dt(rsr, ts=suggest_sampling_time(ct))
sched = InputSchedule.step(rsr.u_nom, 0.1, rsr.u_nom * 1.01)

# %%
report = compare_linearizations(rsr, {"ct": ct, "dt": dt}, sched,
                                duration=1.0, step=1e-3, seed=0, repeats=2)
print(report.error_bar_header())
for row in report.error_bars():
    name, nominal, pct, *errs = row
    print(f"{name:>5} {nominal:10.4g} {pct:+8.3f}%  " + "  ".join(f"{e:.2e}" for e in errs))
print("aggregates:", report.aggregates)
print("ratios:", report.ratios)

# %% [markdown]
# The CSTR is open-loop unstable, so a small step drives it out of its
# temperature band. Every trace is cut at the shutdown time before scoring.

# %%
cstr = get_plant("cstr")
ct = linearize_ct(cstr)
dt = linearize_dt(cstr, ts=suggest_sampling_time(ct))
sched = InputSchedule.step(cstr.u_nom, 0.01, cstr.u_nom * 1.001)
report = compare_linearizations(cstr, [ct, dt], sched, duration=0.5, step=1e-4)
print(report.termination)
print("aggregates:", report.aggregates)
