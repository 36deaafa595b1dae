"""Eigenvalue tables with multiplicity and stability classification."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numerics import eigenvalues
from ..statespace import DiscreteLinearModel

STABLE = "stable"
UNSTABLE = "unstable"
INTEGRATOR = "integrator"
OSCILLATORY = "oscillatory"

CLUSTER_TOL = 1e-6
CT_TOL_INT = 1e-5   # absolute, on |lambda|
DT_TOL_INT = 1e-4   # absolute, on |z - 1|
TOL_STAB = 0.0


def _tagged(unstable, integrator, oscillatory):
    tags = set()
    if unstable:
        tags.add(UNSTABLE)
    if integrator:
        tags.add(INTEGRATOR)
    if oscillatory:
        tags.add(OSCILLATORY)
    if not unstable and not integrator:
        tags.add(STABLE)
    return frozenset(tags)


def classify_ct(lam, tol_int=CT_TOL_INT, tol_stab=TOL_STAB):
    """Classify a continuous-time eigenvalue.

    unstable: Re > tol_stab; integrator: |lam| < tol_int; oscillatory:
    |Im| > tol_int; stable: neither unstable nor integrator. Tags combine.
    """
    lam = complex(lam)
    return _tagged(lam.real > tol_stab, abs(lam) < tol_int,
                   abs(lam.imag) > tol_int)


def classify_dt(z, tol_int=DT_TOL_INT, tol_stab=TOL_STAB):
    """Classify a discrete-time eigenvalue.

    unstable: |z| > 1 + tol_stab; integrator: |z - 1| < tol_int;
    oscillatory: Re z < 0 (left half plane) or |Im z| > tol_int.
    """
    z = complex(z)
    return _tagged(abs(z) > 1.0 + tol_stab, abs(z - 1.0) < tol_int,
                   z.real < 0.0 or abs(z.imag) > tol_int)


@dataclass(frozen=True)
class EigenCluster:
    value: complex
    multiplicity: int
    classes: frozenset
    magnitude: float
    left_half_plane: bool
    imaginary_part: bool

    def label(self):
        return "+".join(sorted(self.classes))


@dataclass(frozen=True)
class EigenReport:
    clusters: tuple
    kind: str
    tolerances: dict

    @property
    def n_states(self):
        return sum(c.multiplicity for c in self.clusters)

    def values(self):
        return np.array([c.value for c in self.clusters])

    def has(self, tag):
        return any(tag in c.classes for c in self.clusters)

    header = ("cluster_id", "re", "im", "multiplicity", "magnitude",
              "classes", "lhp", "imag_nonzero")

    def rows(self):
        for i, c in enumerate(self.clusters, start=1):
            yield (i, c.value.real, c.value.imag, c.multiplicity, c.magnitude,
                   c.label(), c.left_half_plane, c.imaginary_part)

    def to_dict(self):
        return {
            "kind": self.kind,
            "tolerances": dict(self.tolerances),
            "clusters": [
                {"re": c.value.real, "im": c.value.imag,
                 "multiplicity": c.multiplicity, "magnitude": c.magnitude,
                 "classes": sorted(c.classes),
                 "lhp": c.left_half_plane, "imag_nonzero": c.imaginary_part}
                for c in self.clusters
            ],
        }


def cluster_values(values, tol=CLUSTER_TOL):
    """Single-linkage groups: i and j join when
    |v_i - v_j| <= tol * max(1, |v_i|, |v_j|)."""
    values = np.asarray(values, dtype=np.complex128)
    n = values.size
    parent = list(range(n))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(values[i]), abs(values[j]))
            if abs(values[i] - values[j]) <= tol * scale:
                parent[root(j)] = root(i)
    groups = {}
    for i in range(n):
        groups.setdefault(root(i), []).append(i)
    return [values[idx] for idx in groups.values()]


def eigen_report_from_values(values, kind="continuous", cluster_tol=CLUSTER_TOL,
                             tol_int=None, tol_stab=TOL_STAB):
    discrete = kind == "discrete"
    if tol_int is None:
        tol_int = DT_TOL_INT if discrete else CT_TOL_INT
    classify = classify_dt if discrete else classify_ct
    clusters = []
    for members in cluster_values(values, cluster_tol):
        rep = complex(np.mean(members))
        clusters.append(EigenCluster(
            rep, len(members), classify(rep, tol_int, tol_stab), abs(rep),
            rep.real < 0.0, abs(rep.imag) > tol_int))
    if discrete:
        clusters.sort(key=lambda c: (c.magnitude, c.value.real, -c.value.imag))
    else:
        clusters.sort(key=lambda c: (c.value.real, -c.value.imag))
    return EigenReport(tuple(clusters), kind,
                       {"cluster_tol": cluster_tol, "tol_int": tol_int,
                        "tol_stab": tol_stab})


def eigen_report(model, cluster_tol=CLUSTER_TOL, tol_int=None, tol_stab=TOL_STAB):
    kind = "discrete" if isinstance(model, DiscreteLinearModel) else "continuous"
    return eigen_report_from_values(eigenvalues(model.a), kind, cluster_tol,
                                    tol_int, tol_stab)
