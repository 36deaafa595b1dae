"""Black-box plant abstraction and the fixed-step simulation engine."""
from __future__ import annotations

import bisect
import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .. import _io
from ..errors import (DimensionError, DivergenceError, ParameterError,
                      ScheduleError)

DEFAULT_STEP = 1e-4  # hours


@dataclass(frozen=True)
class Constraint:
    """Hard operating limit; leaving [low, high] shuts the plant down.

    ``source`` selects whether ``index`` refers to a state or to a
    noise-free output.
    """

    variable: str
    low: float
    high: float
    source: str = "state"
    index: int = 0

    def __post_init__(self):
        if not self.low < self.high:
            raise ParameterError(f"{self.variable}: low must be < high")
        if self.source not in ("state", "output"):
            raise ParameterError(f"unknown constraint source {self.source!r}")


def _vec(v, n, name):
    arr = np.array(v, dtype=np.float64).ravel()
    if arr.size != n:
        raise DimensionError(f"{name} has {arr.size} entries, expected {n}")
    return arr


@dataclass(frozen=True, eq=False)
class PlantDescriptor:
    """A nonlinear plant seen only through its vector field ``f(x, u)`` and
    noise-free output map ``h(x, u)``.

    Measurement noise and per-channel sampling are applied by `simulate`,
    never inside ``h``.
    """

    name: str
    f: Callable[[np.ndarray, np.ndarray], np.ndarray]
    h: Callable[[np.ndarray, np.ndarray], np.ndarray]
    x_nom: np.ndarray
    u_nom: np.ndarray
    state_labels: tuple
    input_labels: tuple
    output_labels: tuple
    noise_std: np.ndarray = None
    sample_periods: np.ndarray = None
    constraints: tuple = ()
    description: str = ""
    y_nom: np.ndarray = field(init=False)

    def __post_init__(self):
        set_ = object.__setattr__
        n, m, p = (len(self.state_labels), len(self.input_labels),
                   len(self.output_labels))
        for labels in (self.state_labels, self.input_labels, self.output_labels):
            if len(set(labels)) != len(labels):
                raise ParameterError(f"duplicate labels in {labels}")
        set_(self, "state_labels", tuple(self.state_labels))
        set_(self, "input_labels", tuple(self.input_labels))
        set_(self, "output_labels", tuple(self.output_labels))
        set_(self, "x_nom", _vec(self.x_nom, n, "x_nom"))
        set_(self, "u_nom", _vec(self.u_nom, m, "u_nom"))
        std = np.zeros(p) if self.noise_std is None else _vec(self.noise_std, p, "noise_std")
        per = np.zeros(p) if self.sample_periods is None else _vec(self.sample_periods, p, "sample_periods")
        if np.any(std < 0) or np.any(per < 0):
            raise ParameterError("noise std and sample periods must be >= 0")
        set_(self, "noise_std", std)
        set_(self, "sample_periods", per)
        set_(self, "constraints", tuple(self.constraints))
        for con in self.constraints:
            limit = n if con.source == "state" else p
            if not 0 <= con.index < limit:
                raise DimensionError(f"constraint {con.variable} index out of range")
        y = np.asarray(self.h(self.x_nom, self.u_nom), dtype=np.float64)
        if y.shape != (p,):
            raise DimensionError(f"h returned shape {y.shape}, expected ({p},)")
        dx = np.asarray(self.f(self.x_nom, self.u_nom), dtype=np.float64)
        if dx.shape != (n,):
            raise DimensionError(f"f returned shape {dx.shape}, expected ({n},)")
        set_(self, "y_nom", y)

    @property
    def n_states(self):
        return len(self.state_labels)

    @property
    def n_inputs(self):
        return len(self.input_labels)

    @property
    def n_outputs(self):
        return len(self.output_labels)

    def without_noise(self):
        return replace(self, noise_std=np.zeros(self.n_outputs))

    def violated(self, x, y):
        """First constraint outside its bounds as (constraint, 'low'|'high',
        value), or None."""
        for con in self.constraints:
            v = x[con.index] if con.source == "state" else y[con.index]
            if v < con.low:
                return con, "low", float(v)
            if v > con.high:
                return con, "high", float(v)
        return None


class InputSchedule:
    """Piecewise-constant input: a list of (start_time, u) segments, the first
    starting at t = 0."""

    def __init__(self, segments):
        segs = []
        for start, u in segments:
            segs.append((float(start), np.array(u, dtype=np.float64).ravel()))
        if not segs:
            raise ScheduleError("schedule has no segments")
        if segs[0][0] != 0.0:
            raise ScheduleError("first segment must start at t = 0")
        starts = [s for s, _ in segs]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ScheduleError("segment start times must be strictly increasing")
        sizes = {u.size for _, u in segs}
        if len(sizes) != 1:
            raise ScheduleError(f"segments have differing input sizes {sizes}")
        if not all(np.all(np.isfinite(u)) for _, u in segs):
            raise ScheduleError("schedule contains non-finite inputs")
        self.segments = tuple(segs)
        self._starts = starts

    @classmethod
    def constant(cls, u):
        return cls([(0.0, u)])

    @classmethod
    def step(cls, u0, t_step, u1):
        return cls([(0.0, u0), (t_step, u1)])

    @property
    def n_inputs(self):
        return self.segments[0][1].size

    def check(self, n_inputs):
        if self.n_inputs != n_inputs:
            raise ScheduleError(
                f"schedule drives {self.n_inputs} inputs, plant has {n_inputs}")

    def at(self, t):
        # tolerate round-off so a segment starting at k*step is picked up at step k
        i = bisect.bisect_right(self._starts, t + 1e-9 * max(1.0, abs(t))) - 1
        return self.segments[max(i, 0)][1]

    def to_list(self):
        return [[s, u.tolist()] for s, u in self.segments]


@dataclass(frozen=True)
class ChannelSeries:
    name: str
    period: float
    times: np.ndarray
    values: np.ndarray

    def __len__(self):
        return self.times.size


@dataclass(frozen=True)
class Termination:
    status: str  # "completed" | "shutdown"
    time: float
    variable: str = None
    bound: str = None
    limit: float = None
    value: float = None

    def to_dict(self):
        return {k: v for k, v in self.__dict__.items()}


@dataclass(frozen=True, eq=False)
class SimulationTrace:
    channels: dict
    step: float
    seed: int
    termination: Termination
    final_state: np.ndarray = None
    final_time: float = 0.0
    plant: str = ""

    @property
    def channel_names(self):
        return tuple(self.channels)

    def __getitem__(self, name):
        return self.channels[name]

    def truncated(self, t_end):
        """Copy keeping only samples at or before ``t_end``."""
        tol = 1e-9 * max(1.0, abs(t_end))
        chans = {}
        for name, ch in self.channels.items():
            keep = ch.times <= t_end + tol
            chans[name] = ChannelSeries(name, ch.period, ch.times[keep],
                                        ch.values[keep])
        return replace(self, channels=chans)


def rk4_step(f, x, u, h):
    k1 = f(x, u)
    k2 = f(x + 0.5 * h * k1, u)
    k3 = f(x + 0.5 * h * k2, u)
    k4 = f(x + h * k3, u)
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def channel_strides(periods, step):
    """Solver-step stride for each channel; periods must be multiples of step."""
    strides = np.ones(len(periods), dtype=np.int64)
    for j, p in enumerate(periods):
        if p == 0:
            continue
        k = int(round(p / step))
        if k < 1 or abs(k * step - p) > 1e-9 * p:
            raise ParameterError(
                f"channel period {p} h is not a multiple of step {step} h")
        strides[j] = k
    return strides


def step_count(duration, step):
    if not (step > 0 and math.isfinite(step)):
        raise ParameterError(f"step must be positive, got {step}")
    if not (duration >= step and math.isfinite(duration)):
        raise ParameterError(f"duration {duration} must be >= step {step}")
    return int(math.floor(duration / step + 1e-9))


def simulate(plant: PlantDescriptor, schedule: InputSchedule, x0=None,
             duration=1.0, step=DEFAULT_STEP, seed=0, noise=True):
    """Integrate ``plant`` with fixed-step RK4 and sample each output channel
    at its own period.

    Gaussian noise is added to samples only (states stay clean), from a
    generator seeded by ``seed``. Constraints are tested on noise-free
    values at every solver step; on the first violation integration stops
    and no further samples are emitted.
    """
    schedule.check(plant.n_inputs)
    x = plant.x_nom.copy() if x0 is None else _vec(x0, plant.n_states, "x0")
    n_steps = step_count(duration, step)
    periods = plant.sample_periods
    strides = channel_strides(periods, step)
    std = plant.noise_std if noise else np.zeros(plant.n_outputs)
    rng = np.random.default_rng(seed)

    counts = n_steps // strides + 1
    values = [np.empty(c) for c in counts]
    filled = np.zeros(plant.n_outputs, dtype=np.int64)
    termination = Termination("completed", n_steps * step)
    last_x, last_t = x, 0.0

    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n_steps + 1):
            t = i * step
            if not np.all(np.isfinite(x)):
                raise DivergenceError(f"non-finite state at t={t:.6g} h", time=t)
            u = schedule.at(t)
            y = np.asarray(plant.h(x, u), dtype=np.float64)
            hit = plant.violated(x, y)
            if hit is not None:
                con, bound, val = hit
                termination = Termination(
                    "shutdown", t, con.variable, bound,
                    con.low if bound == "low" else con.high, val)
                break
            due = np.nonzero(i % strides == 0)[0]
            if due.size:
                sample = y[due]
                if noise:
                    sample = sample + rng.standard_normal(due.size) * std[due]
                for j, v in zip(due, sample):
                    values[j][filled[j]] = v
                filled[due] += 1
            last_x, last_t = x, t
            if i < n_steps:
                x = rk4_step(plant.f, x, u, step)

    channels = {}
    for j, name in enumerate(plant.output_labels):
        k = filled[j]
        times = np.arange(k) * (periods[j] if periods[j] > 0 else step)
        channels[name] = ChannelSeries(name, float(periods[j]), times,
                                       values[j][:k].copy())
    return SimulationTrace(channels, float(step), int(seed), termination,
                           np.array(last_x), float(last_t), plant.name)


def propagate(plant: PlantDescriptor, x, u, span, max_step=DEFAULT_STEP,
              check_constraints=True):
    """State reached from ``x`` after ``span`` hours at constant input ``u``.

    The span is split into equal RK4 substeps no longer than ``max_step``.
    Returns ``(x_end, None)`` or ``(x_at_stop, reason)`` where reason is a
    string describing a shutdown or divergence.
    """
    n_sub = max(1, int(math.ceil(span / max_step - 1e-9)))
    h = span / n_sub
    x = np.asarray(x, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n_sub):
            x = rk4_step(plant.f, x, u, h)
            t = (i + 1) * h
            if not np.all(np.isfinite(x)):
                return x, f"divergence at t={t:.6g} h"
            if check_constraints and plant.constraints:
                hit = plant.violated(x, np.asarray(plant.h(x, u)))
                if hit is not None:
                    con, bound, _ = hit
                    return x, f"shutdown on {con.variable} ({bound}) at t={t:.6g} h"
    return x, None


# -- trace persistence -------------------------------------------------------

def _group_label(period):
    return "step" if period == 0 else f"{period:g}h"


def write_trace(trace: SimulationTrace, directory, stem="trace"):
    """One CSV per sample-period group plus a JSON sidecar; returns paths."""
    groups = {}
    for name, ch in trace.channels.items():
        groups.setdefault(ch.period, []).append(name)
    paths, sidecar_groups = [], []
    for period in sorted(groups):
        names = groups[period]
        fname = f"{stem}_{_group_label(period)}.csv"
        times = trace.channels[names[0]].times
        rows = zip(times, *(trace.channels[n].values for n in names))
        path = os.path.join(directory, fname)
        _io.write_csv(path, ["time_h", *names], rows)
        paths.append(path)
        sidecar_groups.append({"file": fname, "period_h": period,
                               "channels": names})
    meta = {
        "plant": trace.plant,
        "seed": trace.seed,
        "step": trace.step,
        "termination": trace.termination.to_dict(),
        "final_time": trace.final_time,
        "final_state": None if trace.final_state is None else trace.final_state.tolist(),
        "groups": sidecar_groups,
    }
    side = os.path.join(directory, f"{stem}.json")
    _io.write_json(side, meta)
    return paths + [side]


def read_trace(directory, stem="trace"):
    with open(os.path.join(directory, f"{stem}.json"), encoding="utf-8") as fh:
        meta = json.load(fh)
    channels = {}
    order = []
    for g in meta["groups"]:
        data = np.loadtxt(os.path.join(directory, g["file"]), delimiter=",",
                          skiprows=1, ndmin=2)
        for k, name in enumerate(g["channels"]):
            channels[name] = ChannelSeries(name, g["period_h"], data[:, 0].copy(),
                                           data[:, k + 1].copy())
            order.append(name)
    final = meta.get("final_state")
    return SimulationTrace(channels, meta["step"], meta["seed"],
                           Termination(**meta["termination"]),
                           None if final is None else np.array(final),
                           meta.get("final_time", 0.0), meta.get("plant", ""))
