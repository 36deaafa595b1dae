"""Condition number and numerical rank of the transfer matrix across
frequency."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, ParameterError, SingularMatrixError
from ..numerics import EPS, singular_values
from ..statespace import DiscreteLinearModel, FrequencyGrid, freq_response


def numerical_rank(sigma, tol=None, dims=None):
    """Count singular values above a threshold.

    With ``tol=None`` the threshold is ``max(dims) * eps * sigma_max``
    (``dims`` defaults to ``len(sigma)``); otherwise ``tol`` is an absolute
    threshold. ``sigma`` must be sorted descending and nonnegative.
    """
    s = np.asarray(sigma, dtype=np.float64).ravel()
    if s.size == 0:
        return 0
    if np.any(s < 0) or np.any(np.diff(s) > 0):
        raise ContractError("singular values must be nonnegative and descending")
    if tol is None:
        if s[0] == 0.0:
            return 0
        tol = max(dims if dims is not None else (s.size,)) * EPS * s[0]
    return int(np.count_nonzero(s > tol))


@dataclass(frozen=True, eq=False)
class FrequencySweep:
    omega: np.ndarray
    sigma_max: np.ndarray
    sigma_min: np.ndarray
    gamma: np.ndarray
    rank: np.ndarray       # -1 at gaps
    gap: np.ndarray
    rank_tol: float = None  # None = relative machine-epsilon rule
    dims: tuple = (0, 0)

    def __len__(self):
        return self.omega.size

    @property
    def valid(self):
        return ~self.gap

    @property
    def max_rank(self):
        r = self.rank[self.valid]
        return int(r.max()) if r.size else 0

    @property
    def min_rank(self):
        r = self.rank[self.valid]
        return int(r.min()) if r.size else 0

    @property
    def max_gamma(self):
        g = self.gamma[self.valid]
        return float(g.max()) if g.size else float("nan")

    def rank_changes(self):
        """(omega, old_rank, new_rank) where consecutive valid points differ."""
        idx = np.nonzero(self.valid)[0]
        out = []
        for i, j in zip(idx, idx[1:]):
            if self.rank[i] != self.rank[j]:
                out.append((float(self.omega[j]), int(self.rank[i]), int(self.rank[j])))
        return out

    header = ("omega_rad_per_h", "sigma_max", "sigma_min", "gamma", "rank", "gap")

    def rows(self):
        for k in range(self.omega.size):
            gap = bool(self.gap[k])
            yield (self.omega[k], self.sigma_max[k], self.sigma_min[k],
                   self.gamma[k], "nan" if gap else int(self.rank[k]), int(gap))

    def summary(self):
        return {
            "points": int(self.omega.size),
            "gaps": int(self.gap.sum()),
            "max_gamma": self.max_gamma,
            "min_rank": self.min_rank,
            "max_rank": self.max_rank,
            "rank_changes": [list(c) for c in self.rank_changes()],
            "rank_tol": "default" if self.rank_tol is None else self.rank_tol,
        }


def default_grid(model, lo=1e-4, hi=1e4, points=200):
    grid = FrequencyGrid.logspace(lo, hi, points)
    if isinstance(model, DiscreteLinearModel):
        grid = grid.clip(model.nyquist)
    return grid


def _as_grid(grid):
    return grid if isinstance(grid, FrequencyGrid) else FrequencyGrid(grid)


def condition_sweep(model, grid, rank_tol=None):
    """Singular values, condition number and numerical rank of G at each
    grid frequency. Points where the resolvent is singular become gaps."""
    grid = _as_grid(grid)
    if len(grid) == 0:
        raise ParameterError("empty frequency grid")
    if isinstance(model, DiscreteLinearModel) and grid.omega[-1] > model.nyquist * (1 + 1e-12):
        raise ParameterError(
            f"grid exceeds Nyquist frequency {model.nyquist:.6g} rad/h; clip it first")
    n = len(grid)
    smax, smin, gamma = np.full(n, np.nan), np.full(n, np.nan), np.full(n, np.nan)
    rank = np.full(n, -1, dtype=np.int64)
    gap = np.zeros(n, dtype=bool)
    dims = model.shape
    for k, w in enumerate(grid.omega):
        try:
            g = freq_response(model, float(w))
        except SingularMatrixError:
            gap[k] = True
            continue
        s = singular_values(g)
        smax[k], smin[k] = s[0], s[-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            gamma[k] = s[0] / s[-1] if s[0] > 0 else np.inf
        rank[k] = numerical_rank(s, rank_tol, dims)
    return FrequencySweep(grid.omega.copy(), smax, smin, gamma, rank, gap,
                          rank_tol, dims)


def rank_sweep(model, grid, rank_tol=None):
    """Same evaluation as `condition_sweep`; read the rank column and
    ``max_rank`` / ``rank_changes()`` of the result."""
    return condition_sweep(model, grid, rank_tol)
