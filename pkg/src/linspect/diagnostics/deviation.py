"""Per-channel deviation metrics between simulation traces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import ComparisonError, NormalizationError

NOMINAL_PERCENT = "nominal-relative-percent"
LINEARIZATION_ERROR = "linearization-error-fraction"


@dataclass(frozen=True, eq=False)
class DeviationProfile:
    channels: tuple
    values: np.ndarray
    kind: str

    @property
    def unit(self):
        return "percent" if self.kind == NOMINAL_PERCENT else "fraction"

    @property
    def aggregate(self):
        """Sum of absolute per-channel values."""
        return float(np.sum(np.abs(self.values)))

    def as_dict(self):
        return dict(zip(self.channels, self.values.tolist()))


def _nominal_vector(trace, nominal):
    names = trace.channel_names
    if isinstance(nominal, Mapping):
        nom = np.array([float(nominal[n]) for n in names])
    else:
        nom = np.asarray(nominal, dtype=np.float64).ravel()
        if nom.size != len(names):
            raise ComparisonError(
                f"{nom.size} nominal values for {len(names)} channels")
    for name, v in zip(names, nom):
        if v == 0.0:
            raise NormalizationError(f"nominal value of {name} is zero", name)
    return nom


def nominal_deviation_profile(trace_nl, nominal) -> DeviationProfile:
    """100 * (mean of each channel - nominal) / nominal."""
    nom = _nominal_vector(trace_nl, nominal)
    vals = []
    for name, y0 in zip(trace_nl.channel_names, nom):
        ch = trace_nl[name]
        if len(ch) == 0:
            raise ComparisonError(f"channel {name} has no samples")
        vals.append((np.mean(ch.values) - y0) * 100.0 / y0)
    return DeviationProfile(trace_nl.channel_names, np.array(vals), NOMINAL_PERCENT)


def linearization_error_profile(trace_l, trace_nl, nominal) -> DeviationProfile:
    """Mean of (linear - nonlinear) over common sample instants, divided by
    the channel's nominal value. Longer series are cut to the shorter one."""
    names = trace_nl.channel_names
    if tuple(trace_l.channel_names) != tuple(names):
        raise ComparisonError(
            f"channel mismatch: {trace_l.channel_names} vs {names}")
    nom = _nominal_vector(trace_nl, nominal)
    vals = []
    for name, y0 in zip(names, nom):
        cl, cn = trace_l[name], trace_nl[name]
        if cl.period != cn.period:
            raise ComparisonError(
                f"channel {name}: periods {cl.period} vs {cn.period}")
        k = min(len(cl), len(cn))
        if k == 0:
            raise ComparisonError(f"channel {name} has no common samples")
        if not np.allclose(cl.times[:k], cn.times[:k], rtol=0, atol=1e-9):
            raise ComparisonError(f"channel {name}: sample instants differ")
        vals.append(np.mean(cl.values[:k] - cn.values[:k]) / y0)
    return DeviationProfile(names, np.array(vals), LINEARIZATION_ERROR)
