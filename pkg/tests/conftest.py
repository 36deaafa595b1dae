import numpy as np
import pytest

from linspect.plants import (ChannelSeries, Constraint, PlantDescriptor,
                             SimulationTrace, Termination)
from linspect.statespace import model_from_arrays


def make_trace(series, period=0.0, step=1e-3):
    """Trace from {name: values}; times spaced by ``period`` (or ``step``)."""
    chans = {}
    for name, values in series.items():
        values = np.asarray(values, dtype=float)
        dt = period or step
        chans[name] = ChannelSeries(name, period, np.arange(values.size) * dt, values)
    t_end = max(len(v) for v in series.values()) * (period or step)
    return SimulationTrace(chans, step, 0, Termination("completed", t_end))


def lti_plant(a, b, c, d, u, name="lti", **kwargs):
    a, b, c, d = (np.atleast_2d(np.asarray(m, dtype=float)) for m in (a, b, c, d))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    x = np.linalg.solve(a, -b @ u) if kwargs.pop("equilibrium", True) else kwargs.pop("x")
    return PlantDescriptor(
        name, lambda x, u: a @ x + b @ u, lambda x, u: c @ x + d @ u, x, u,
        [f"x{i}" for i in range(a.shape[0])], [f"u{i}" for i in range(b.shape[1])],
        [f"y{i}" for i in range(c.shape[0])], **kwargs)


def scalar_plant(f, h=None, x0=0.0, u0=0.0, **kwargs):
    h = h or (lambda x, u: np.array([x[0]]))
    return PlantDescriptor("scalar", lambda x, u: np.array([f(x[0], u[0])]), h,
                           [x0], [u0], ["x"], ["u"], ["y"], **kwargs)


def random_model(rng, n, p=2, m=2, ts=None, scale=1.0):
    return model_from_arrays(scale * rng.standard_normal((n, n)),
                             rng.standard_normal((n, m)),
                             rng.standard_normal((p, n)),
                             rng.standard_normal((p, m)), ts=ts)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


__all__ = ["make_trace", "lti_plant", "scalar_plant", "random_model", "Constraint"]
