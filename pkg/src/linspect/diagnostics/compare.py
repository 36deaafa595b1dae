"""Simulate a nonlinear plant alongside its linearizations and score the
linear models against it."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from ..errors import ComparisonError, InsufficientDataError
from ..plants.core import (DEFAULT_STEP, ChannelSeries, InputSchedule,
                           PlantDescriptor, SimulationTrace, Termination,
                           simulate)
from ..statespace import DiscreteLinearModel
from .deviation import (DeviationProfile, linearization_error_profile,
                        nominal_deviation_profile)


def _operating_point(model, plant):
    op = model.metadata.get("operating_point")
    if op is None:
        x, u = plant.x_nom, plant.u_nom
        y = plant.h(x, u)
    else:
        x, u = np.asarray(op["x"], float), np.asarray(op["u"], float)
        y = np.asarray(op.get("y", plant.h(x, u)), float)
    r = np.asarray(model.metadata.get("residual", np.zeros(model.n_states)), float)
    return x, u, y, r


def _check_structure(model, plant):
    if (model.n_states, model.n_inputs, model.n_outputs) != (
            plant.n_states, plant.n_inputs, plant.n_outputs):
        raise ComparisonError(
            f"model dims {(model.n_states, model.n_inputs, model.n_outputs)} "
            f"do not match plant {(plant.n_states, plant.n_inputs, plant.n_outputs)}")


def simulate_linear(model, plant: PlantDescriptor, schedule: InputSchedule,
                    duration, step=DEFAULT_STEP):
    """Noise-free trace of a linear model in the plant's channel layout.

    The model works in deviations from its operating point and starts there.
    Continuous models are integrated by RK4 at ``step``. Discrete models
    advance at their own ``ts`` and each channel instant reads the most
    recent discrete output (sample and hold).
    """
    _check_structure(model, plant)
    x_op, u_op, y_op, r = _operating_point(model, plant)
    a, b, c, d = model.a, model.b, model.c, model.d
    if not isinstance(model, DiscreteLinearModel):
        wrapped = PlantDescriptor(
            name=f"{plant.name}-linear",
            f=lambda x, u: a @ (x - x_op) + b @ (u - u_op) + r,
            h=lambda x, u: y_op + c @ (x - x_op) + d @ (u - u_op),
            x_nom=x_op, u_nom=u_op,
            state_labels=plant.state_labels, input_labels=plant.input_labels,
            output_labels=plant.output_labels,
            sample_periods=plant.sample_periods)
        return simulate(wrapped, schedule, x_op, duration, step, seed=0,
                        noise=False)

    ts = model.ts
    n_k = int(np.floor(duration / ts + 1e-9))
    dx = np.zeros(model.n_states)
    ys = np.empty((n_k + 1, model.n_outputs))
    for k in range(n_k + 1):
        du = schedule.at(k * ts) - u_op
        ys[k] = y_op + c @ dx + d @ du
        dx = a @ dx + b @ du + r
    n_steps = int(np.floor(duration / step + 1e-9))
    channels = {}
    for j, name in enumerate(plant.output_labels):
        per = plant.sample_periods[j]
        spacing = per if per > 0 else step
        count = int(np.floor(n_steps * step / spacing + 1e-9)) + 1
        times = np.arange(count) * spacing
        idx = np.minimum(np.floor(times / ts + 1e-9).astype(int), n_k)
        channels[name] = ChannelSeries(name, float(per), times, ys[idx, j].copy())
    return SimulationTrace(channels, float(step), 0,
                           Termination("completed", n_steps * step),
                           x_op + dx, n_k * ts, f"{plant.name}-linear")


def _average(traces):
    """Channelwise mean of replicate traces, cut to the shortest replicate."""
    first = traces[0]
    chans = {}
    for name in first.channel_names:
        k = min(len(t[name]) for t in traces)
        vals = np.mean([t[name].values[:k] for t in traces], axis=0)
        ch = first[name]
        chans[name] = ChannelSeries(name, ch.period, ch.times[:k].copy(), vals)
    end = min(t.final_time for t in traces)
    return SimulationTrace(chans, first.step, first.seed, first.termination,
                           first.final_state, end, first.plant)


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    channels: tuple
    nominal: np.ndarray
    nonlinear_profile: DeviationProfile
    profiles: dict
    termination: Termination
    t_end: float
    scenario: dict = field(default_factory=dict)

    @property
    def aggregates(self):
        return {name: p.aggregate for name, p in self.profiles.items()}

    @property
    def ratios(self):
        """aggregate[a] / aggregate[b] for every ordered pair of models."""
        agg = self.aggregates
        out = {}
        for a, b in permutations(agg, 2):
            out[f"{a}/{b}"] = agg[a] / agg[b] if agg[b] != 0 else None
        return out

    def error_bars(self):
        """Rows (channel, nominal, centre, half-width per model); the centre
        is the nominal-relative deviation and each half-width is the
        absolute linearization error of that model."""
        rows = []
        for j, name in enumerate(self.channels):
            rows.append((name, self.nominal[j],
                         self.nonlinear_profile.values[j],
                         *(abs(p.values[j]) for p in self.profiles.values())))
        return rows

    def error_bar_header(self):
        return ("channel", "nominal", "eq1_percent",
                *(f"eq2_{name}" for name in self.profiles))

    def to_dict(self):
        return {
            "channels": list(self.channels),
            "nominal": self.nominal.tolist(),
            "nonlinear_deviation_percent": self.nonlinear_profile.as_dict(),
            "linearization_error": {n: p.as_dict() for n, p in self.profiles.items()},
            "aggregates": self.aggregates,
            "ratios": self.ratios,
            "termination": self.termination.to_dict(),
            "t_end": self.t_end,
            "scenario": self.scenario,
            "units": {"nonlinear_deviation_percent": "percent",
                      "linearization_error": "fraction of nominal"},
        }


def _named(models):
    if isinstance(models, dict):
        return dict(models)
    out = {}
    for i, m in enumerate(models):
        base = "dt" if isinstance(m, DiscreteLinearModel) else "ct"
        name = base if base not in out else f"{base}{i}"
        out[name] = m
    return out


def compare_linearizations(plant: PlantDescriptor, models, schedule: InputSchedule,
                           duration=1.0, step=DEFAULT_STEP, seed=0, repeats=1,
                           noise=True) -> ComparisonReport:
    """Score each linear model against replicate nonlinear runs.

    The nonlinear plant is simulated ``repeats`` times (seeds ``seed``,
    ``seed + 1``, ...) from the models' shared operating point and the
    replicates are averaged. Every trace is cut at the nonlinear
    termination time before scoring.
    """
    models = _named(models)
    if not models:
        raise ComparisonError("no models to compare")
    ops = [_operating_point(m, plant) for m in models.values()]
    for m in models.values():
        _check_structure(m, plant)
    x0, u0, y0, _ = ops[0]
    for x, u, _, _ in ops[1:]:
        if not (np.allclose(x, x0, rtol=1e-12, atol=0) and np.allclose(u, u0, rtol=1e-12, atol=0)):
            raise ComparisonError("models were linearized at different operating points")
    if repeats < 1:
        raise ComparisonError("repeats must be >= 1")

    runs = [simulate(plant, schedule, x0, duration, step, seed + k, noise)
            for k in range(repeats)]
    nl = _average(runs)
    t_end = nl.final_time
    short = [n for n in nl.channel_names if len(nl[n]) < 2]
    if short:
        raise InsufficientDataError(
            f"run ended at t={t_end:.6g} h before channels {short} were "
            "sampled after t=0")

    nominal = np.asarray(y0, dtype=np.float64)
    nl_profile = nominal_deviation_profile(nl, nominal)
    profiles = {}
    for name, model in models.items():
        lin = simulate_linear(model, plant, schedule, t_end if t_end >= step else step, step)
        lin = lin.truncated(t_end)
        profiles[name] = linearization_error_profile(lin, nl, nominal)
    scenario = {"duration": duration, "step": step, "seed": seed,
                "repeats": repeats, "noise": bool(noise),
                "schedule": schedule.to_list()}
    return ComparisonReport(plant.output_labels, nominal, nl_profile, profiles,
                            runs[0].termination, t_end, scenario)
