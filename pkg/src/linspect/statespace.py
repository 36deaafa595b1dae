"""Continuous and discrete LTI state-space models.

Time is in hours and frequency in rad/h throughout.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from . import _io
from .errors import (DimensionError, ParameterError, RangeError,
                     SingularMatrixError, UndefinedRateError)
from .numerics import complex_solve, eigenvalues, expm


def _labels(given, n, prefix):
    if given is None:
        return tuple(f"{prefix}{i}" for i in range(n))
    given = tuple(str(s) for s in given)
    if len(given) != n:
        raise DimensionError(f"expected {n} {prefix!r} labels, got {len(given)}")
    if len(set(given)) != n:
        raise ParameterError(f"duplicate labels in {given}")
    return given


def _frozen(m, name):
    arr = np.array(m, dtype=np.float64, ndmin=2)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} has non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class _LinearModel:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    state_labels: tuple = None
    input_labels: tuple = None
    output_labels: tuple = None
    units: str = "h"
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        a, b, c, d = (_frozen(getattr(self, k), k) for k in "abcd")
        n, m, p = a.shape[0], b.shape[1], c.shape[0]
        if a.shape != (n, n):
            raise DimensionError(f"a must be square, got {a.shape}")
        if b.shape[0] != n:
            raise DimensionError(f"b has {b.shape[0]} rows, expected {n}")
        if c.shape[1] != n:
            raise DimensionError(f"c has {c.shape[1]} columns, expected {n}")
        if d.shape != (p, m):
            raise DimensionError(f"d must be {p}x{m}, got {d.shape}")
        set_ = object.__setattr__
        for k, v in zip("abcd", (a, b, c, d)):
            set_(self, k, v)
        set_(self, "state_labels", _labels(self.state_labels, n, "x"))
        set_(self, "input_labels", _labels(self.input_labels, m, "u"))
        set_(self, "output_labels", _labels(self.output_labels, p, "y"))
        set_(self, "metadata", dict(self.metadata))

    @property
    def n_states(self):
        return self.a.shape[0]

    @property
    def n_inputs(self):
        return self.b.shape[1]

    @property
    def n_outputs(self):
        return self.c.shape[0]

    @property
    def shape(self):
        """(outputs, inputs) of the transfer matrix."""
        return self.n_outputs, self.n_inputs


@dataclass(frozen=True, eq=False)
class ContinuousLinearModel(_LinearModel):
    """dx/dt = a x + b u, y = c x + d u."""

    kind = "continuous"


@dataclass(frozen=True, eq=False)
class DiscreteLinearModel(_LinearModel):
    """x[k+1] = a x[k] + b u[k], y[k] = c x[k] + d u[k], sampled every ``ts`` h."""

    ts: float = None
    kind = "discrete"

    def __post_init__(self):
        super().__post_init__()
        if self.ts is None or not math.isfinite(self.ts) or self.ts <= 0:
            raise ParameterError(f"ts must be positive and finite, got {self.ts}")
        object.__setattr__(self, "ts", float(self.ts))

    @property
    def nyquist(self):
        return math.pi / self.ts


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive frequencies in rad/h."""

    omega: np.ndarray
    scale: str = "log"

    def __post_init__(self):
        w = np.array(self.omega, dtype=np.float64).ravel()
        if w.size and (not np.all(np.isfinite(w)) or np.any(w <= 0)):
            raise ParameterError("grid frequencies must be positive and finite")
        if np.any(np.diff(w) <= 0):
            raise ParameterError("grid must be strictly increasing")
        w.flags.writeable = False
        object.__setattr__(self, "omega", w)

    @classmethod
    def logspace(cls, lo=1e-4, hi=1e4, points=200):
        if not (0 < lo < hi) or points < 2:
            raise ParameterError(f"bad grid spec lo={lo} hi={hi} points={points}")
        return cls(np.logspace(math.log10(lo), math.log10(hi), int(points)))

    def clip(self, omega_max):
        """Drop points above ``omega_max``; keep ``omega_max`` itself as the
        last point if anything was dropped."""
        w = self.omega
        keep = w[w < omega_max]
        if keep.size == w.size:
            return self
        return FrequencyGrid(np.append(keep, omega_max), self.scale)

    def __len__(self):
        return self.omega.size

    def __iter__(self):
        return iter(self.omega)


def c2d_zoh(ct: ContinuousLinearModel, ts: float) -> DiscreteLinearModel:
    """Zero-order-hold discretization via one exponential of the augmented
    matrix [[a, b], [0, 0]] * ts."""
    if not (isinstance(ts, (int, float)) and math.isfinite(ts) and ts > 0):
        raise ParameterError(f"ts must be positive and finite, got {ts}")
    n, m = ct.n_states, ct.n_inputs
    aug = np.zeros((n + m, n + m))
    aug[:n, :n] = ct.a
    aug[:n, n:] = ct.b
    phi = expm(aug * ts)
    meta = dict(ct.metadata)
    meta["discretization"] = "zoh"
    meta["ts"] = float(ts)
    return DiscreteLinearModel(
        phi[:n, :n], phi[:n, n:], ct.c, ct.d,
        ct.state_labels, ct.input_labels, ct.output_labels, ct.units,
        meta, ts=float(ts))


def _transfer(model, z):
    """c (z I - a)^-1 b + d at an arbitrary complex point."""
    n = model.n_states
    x = complex_solve(z * np.eye(n) - model.a, model.b)
    return model.c @ x + model.d


def freq_response_ct(ct: ContinuousLinearModel, omega: float) -> np.ndarray:
    """G(j omega) as a p x m complex matrix."""
    if not math.isfinite(omega) or omega < 0:
        raise RangeError(f"omega must be finite and >= 0, got {omega}", omega)
    try:
        return _transfer(ct, 1j * omega)
    except SingularMatrixError as exc:
        exc.omega = omega
        raise


def freq_response_dt(dt: DiscreteLinearModel, omega: float) -> np.ndarray:
    """G(e^{j omega ts}) for 0 <= omega <= pi/ts."""
    nyq = dt.nyquist
    if not math.isfinite(omega) or omega < 0 or omega > nyq * (1 + 1e-12):
        raise RangeError(
            f"omega={omega} outside [0, pi/ts={nyq}]", omega)
    try:
        return _transfer(dt, np.exp(1j * omega * dt.ts))
    except SingularMatrixError as exc:
        exc.omega = omega
        raise


def freq_response(model, omega):
    if isinstance(model, DiscreteLinearModel):
        return freq_response_dt(model, omega)
    return freq_response_ct(model, omega)


def round_down_1sf(x: float) -> float:
    """Truncate a positive number to one significant figure (2.54e-4 -> 2e-4)."""
    if not (x > 0 and math.isfinite(x)):
        raise ParameterError(f"cannot round {x}")
    exponent = math.floor(math.log10(x))
    digit = math.floor(x / 10.0**exponent * (1 + 1e-12))
    if digit >= 10:
        digit, exponent = 1, exponent + 1
    elif digit < 1:
        digit, exponent = 9, exponent - 1
    return float(f"{digit}e{exponent}")


def sampling_time_from_radius(radius: float, rounded=True) -> float:
    """Half the period of the fastest mode: 1 / (2 * radius), in hours."""
    if not (radius > 0 and math.isfinite(radius)):
        raise UndefinedRateError(
            f"spectral radius {radius} gives no sampling rate")
    raw = 1.0 / (2.0 * radius)
    return round_down_1sf(raw) if rounded else raw


def suggest_sampling_time(ct: ContinuousLinearModel, rounded=True) -> float:
    """Nyquist-style sampling period from the largest eigenvalue magnitude of
    ``ct.a``. With ``rounded=False`` the raw 1/(2 max|lambda|) is returned."""
    radius = float(np.max(np.abs(eigenvalues(ct.a))))
    if radius == 0.0:
        raise UndefinedRateError("all eigenvalues are zero; no fastest mode")
    return sampling_time_from_radius(radius, rounded)


# -- serialization ---------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def model_to_dict(model) -> dict:
    doc = {
        "kind": model.kind,
        "a": model.a.tolist(),
        "b": model.b.tolist(),
        "c": model.c.tolist(),
        "d": model.d.tolist(),
        "labels": {
            "states": list(model.state_labels),
            "inputs": list(model.input_labels),
            "outputs": list(model.output_labels),
        },
        "units": {"time": model.units, "frequency": f"rad/{model.units}"},
        "metadata": _jsonable(model.metadata),
    }
    if isinstance(model, DiscreteLinearModel):
        doc["ts"] = model.ts
    return doc


def model_from_dict(doc: Mapping):
    kind = doc.get("kind")
    if kind not in ("continuous", "discrete"):
        raise ParameterError(f"unknown model kind {kind!r}")
    labels = doc.get("labels", {})
    units = doc.get("units", {})
    units = units.get("time", "h") if isinstance(units, Mapping) else str(units)
    mats = [np.array(doc[k], dtype=np.float64, ndmin=2) for k in "abcd"]
    kwargs = dict(state_labels=labels.get("states"),
                  input_labels=labels.get("inputs"),
                  output_labels=labels.get("outputs"),
                  units=units, metadata=doc.get("metadata", {}))
    if kind == "discrete":
        return DiscreteLinearModel(*mats, ts=doc.get("ts"), **kwargs)
    return ContinuousLinearModel(*mats, **kwargs)


def dumps(model) -> str:
    # json emits the shortest repr of each double, so values round-trip exactly
    return _io.json_text(model_to_dict(model))


def loads(text: str):
    return model_from_dict(json.loads(text))


def save_model(model, path):
    _io.write_atomic(path, dumps(model))


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def model_from_arrays(a, b, c, d, ts=None, **kwargs):
    if ts is None:
        return ContinuousLinearModel(a, b, c, d, **kwargs)
    return DiscreteLinearModel(a, b, c, d, ts=ts, **kwargs)


__all__ = [
    "ContinuousLinearModel", "DiscreteLinearModel", "FrequencyGrid",
    "c2d_zoh", "freq_response_ct", "freq_response_dt", "freq_response",
    "suggest_sampling_time", "sampling_time_from_radius", "round_down_1sf",
    "model_to_dict", "model_from_dict", "dumps", "loads", "save_model",
    "load_model", "model_from_arrays",
]
