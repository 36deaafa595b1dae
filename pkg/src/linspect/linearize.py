"""Numerical linearization of black-box plants.

Two routes around an operating point:

* `linearize_ct` differentiates the vector field and output map, giving a
  continuous-time model;
* `linearize_dt` differentiates the one-period flow map (RK4 with the input
  held constant), giving a discrete-time model with period ``ts``.

Plant noise never enters: ``h`` is noise-free by construction and noise is
only added by `linspect.plants.simulate`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EvaluationError, LinearizationWindowError, ParameterError
from .numerics import EPS
from .plants.core import DEFAULT_STEP, PlantDescriptor, propagate
from .statespace import ContinuousLinearModel, DiscreteLinearModel

TRIM_TOL = 1e-10


@dataclass(frozen=True)
class FdOptions:
    """Central-difference settings. Column i is perturbed by
    ``max(step_factor * |x_i|, floor)``."""

    step_factor: float = EPS ** (1.0 / 3.0)
    floor: float = EPS ** (1.0 / 3.0)
    scheme: str = "central"

    def __post_init__(self):
        if not self.step_factor > 0 or not self.floor > 0:
            raise ParameterError("step factor and floor must be positive")
        if self.scheme != "central":
            raise ParameterError(f"unsupported scheme {self.scheme!r}")


@dataclass(frozen=True, eq=False)
class OperatingPoint:
    x: np.ndarray
    u: np.ndarray
    source: str = "declared-nominal"  # or "trimmed"

    def __post_init__(self):
        object.__setattr__(self, "x", np.array(self.x, dtype=np.float64).ravel())
        object.__setattr__(self, "u", np.array(self.u, dtype=np.float64).ravel())

    @classmethod
    def nominal(cls, plant):
        return cls(plant.x_nom, plant.u_nom, "declared-nominal")

    @classmethod
    def trimmed(cls, plant, u=None, x_guess=None, tol=TRIM_TOL):
        from .plants.trim import find_equilibrium
        u = plant.u_nom if u is None else u
        x = find_equilibrium(plant, u, x_guess, tol=tol)
        return cls(x, u, "trimmed")

    def check(self, plant):
        if self.x.size != plant.n_states or self.u.size != plant.n_inputs:
            raise DimensionError(
                f"operating point sized ({self.x.size}, {self.u.size}), plant "
                f"needs ({plant.n_states}, {plant.n_inputs})")


def fd_jacobian(fun, x, opts: FdOptions | None = None):
    """Central-difference Jacobian of ``fun`` at ``x`` (shape m x n)."""
    opts = opts or FdOptions()
    x = np.array(x, dtype=np.float64).ravel()
    cols = []
    for i in range(x.size):
        h = max(opts.step_factor * abs(x[i]), opts.floor)
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        with np.errstate(all="ignore"):
            fp = np.asarray(fun(xp), dtype=np.float64).ravel()
            fm = np.asarray(fun(xm), dtype=np.float64).ravel()
        if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(fm))):
            raise EvaluationError(f"non-finite map value perturbing column {i}",
                                  column=i)
        # divide by the step actually taken after rounding x +- h
        cols.append((fp - fm) / (xp[i] - xm[i]))
    return np.column_stack(cols)


def _metadata(plant, op, opts, method, residual, ts=None):
    norm = float(np.max(np.abs(residual))) if residual.size else 0.0
    warnings = []
    if norm > TRIM_TOL:
        warnings.append(
            f"operating point is not an equilibrium (max residual {norm:.3e}); "
            "affine term dropped")
    return {
        "method": method,
        "plant": plant.name,
        "step_factor": opts.step_factor,
        "step_floor": opts.floor,
        "ts": ts,
        "operating_point": {
            "x": op.x.tolist(), "u": op.u.tolist(),
            "y": np.asarray(plant.h(op.x, op.u), dtype=float).tolist(),
            "source": op.source,
        },
        "residual": residual.tolist(),
        "residual_norm": norm,
        "warnings": warnings,
    }


def _split_jacobian(fun, op, opts, n):
    jac = fd_jacobian(fun, np.concatenate([op.x, op.u]), opts)
    return jac[:, :n], jac[:, n:]


def _output_jacobians(plant, op, opts):
    n = plant.n_states
    return _split_jacobian(lambda z: plant.h(z[:n], z[n:]), op, opts, n)


def linearize_ct(plant: PlantDescriptor, op: OperatingPoint | None = None,
                 opts: FdOptions | None = None) -> ContinuousLinearModel:
    """A, B, C, D as finite-difference Jacobians of f and h at ``op``."""
    op = op or OperatingPoint.nominal(plant)
    op.check(plant)
    opts = opts or FdOptions()
    n = plant.n_states
    a, b = _split_jacobian(lambda z: plant.f(z[:n], z[n:]), op, opts, n)
    c, d = _output_jacobians(plant, op, opts)
    residual = np.asarray(plant.f(op.x, op.u), dtype=np.float64)
    return ContinuousLinearModel(
        a, b, c, d, plant.state_labels, plant.input_labels,
        plant.output_labels, "h",
        _metadata(plant, op, opts, "ct-fd", residual))


def flow_map(plant, ts, max_step=DEFAULT_STEP):
    """Phi(x, u): state after ``ts`` hours from x with u held constant."""
    step = min(max_step, ts / 10.0)

    def phi(x, u):
        x_end, reason = propagate(plant, x, u, ts, step)
        if reason is not None:
            raise LinearizationWindowError(
                f"{reason} inside the {ts:g} h flow-map window")
        return x_end

    return phi


def linearize_dt(plant: PlantDescriptor, op: OperatingPoint | None = None,
                 ts: float = None, opts: FdOptions | None = None,
                 max_step=DEFAULT_STEP) -> DiscreteLinearModel:
    """Discrete model from the Jacobians of the one-period flow map."""
    if ts is None or not ts > 0 or not np.isfinite(ts):
        raise ParameterError(f"ts must be positive and finite, got {ts}")
    op = op or OperatingPoint.nominal(plant)
    op.check(plant)
    opts = opts or FdOptions()
    n = plant.n_states
    phi = flow_map(plant, ts, max_step)
    a, b = _split_jacobian(lambda z: phi(z[:n], z[n:]), op, opts, n)
    c, d = _output_jacobians(plant, op, opts)
    residual = phi(op.x, op.u) - op.x
    return DiscreteLinearModel(
        a, b, c, d, plant.state_labels, plant.input_labels,
        plant.output_labels, "h",
        _metadata(plant, op, opts, "dt-flowmap", residual, ts=float(ts)),
        ts=float(ts))
