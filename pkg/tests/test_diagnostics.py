import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linspect.diagnostics import (INTEGRATOR, LINEARIZATION_ERROR, NOMINAL_PERCENT,
                                  OSCILLATORY, STABLE, UNSTABLE, classify_ct,
                                  classify_dt, compare_linearizations,
                                  condition_sweep, default_grid, eigen_report,
                                  eigen_report_from_values,
                                  linearization_error_profile,
                                  nominal_deviation_profile, numerical_rank,
                                  rank_sweep, simulate_linear)
from linspect.errors import (ComparisonError, ContractError, InsufficientDataError,
                             NormalizationError, ParameterError)
from linspect.linearize import OperatingPoint, linearize_ct, linearize_dt
from linspect.numerics import EPS, singular_values
from linspect.plants import Constraint, InputSchedule, get_plant
from linspect.statespace import (FrequencyGrid, c2d_zoh, freq_response,
                                 model_from_arrays, suggest_sampling_time)

from conftest import make_trace, random_model, scalar_plant

identity_tfm = model_from_arrays([[-1.0]], np.zeros((1, 2)), np.zeros((2, 1)), np.eye(2))
diag_tfm = model_from_arrays([[-1.0]], [[0.0, 1.0]], [[0.0], [1.0]], [[1.0, 0.0], [0.0, 0.0]])


# -- classification --------------------------------------------------------------

def test_classify_ct_fixtures():
    assert classify_ct(3.0648 + 5.0837j) == {UNSTABLE, OSCILLATORY}
    assert classify_ct(-9.3925e-7) == {INTEGRATOR}
    assert classify_ct(-1968.1) == {STABLE}
    assert classify_ct(-2 + 3j) == {STABLE, OSCILLATORY}
    assert classify_ct(2e-6) == {UNSTABLE, INTEGRATOR}


def test_classify_dt_fixtures():
    assert classify_dt(1.0008 + 0.0013j) == {UNSTABLE, OSCILLATORY}
    assert classify_dt(1.0000) == {INTEGRATOR}
    assert classify_dt(0.6114) == {STABLE}
    assert classify_dt(0.9997) == {STABLE}
    assert classify_dt(-0.5) == {STABLE, OSCILLATORY}


def test_classify_tolerances():
    assert classify_ct(-5e-4, tol_int=1e-3) == {INTEGRATOR}
    assert classify_ct(0.01, tol_stab=0.1) == {STABLE}


@settings(max_examples=200, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(1e-3, 1e-2))
def test_ct_dt_stability_agree(re, im, ts):
    lam = complex(re, im)
    if abs(re) * ts > 0.1 or abs(lam) < 1e-2 or abs(re) < 1e-6:
        return
    assert (UNSTABLE in classify_ct(lam)) == (UNSTABLE in classify_dt(np.exp(lam * ts)))


# -- eigen reports ---------------------------------------------------------------

def test_report_repeated_eigenvalue():
    m = model_from_arrays(np.diag([5.0, 5.0, 5.0]), np.ones((3, 1)), np.ones((1, 3)), [[0.0]])
    rep = eigen_report(m)
    assert len(rep.clusters) == 1
    c = rep.clusters[0]
    assert c.value == 5 and c.multiplicity == 3 and c.classes == {UNSTABLE}


def test_report_multiplicity_seven():
    vals = [0.9987] * 7 + [0.5, 1.0]
    rep = eigen_report_from_values(vals, "discrete")
    mults = {round(c.value.real, 4): c.multiplicity for c in rep.clusters}
    assert mults[0.9987] == 7 and rep.n_states == 9


def test_report_cluster_tolerance():
    rep = eigen_report_from_values([1.0, 1.0 + 1e-9], cluster_tol=1e-6)
    assert len(rep.clusters) == 1 and rep.clusters[0].multiplicity == 2
    rep = eigen_report_from_values([1.0, 1.1], cluster_tol=1e-6)
    assert len(rep.clusters) == 2


def test_report_ordering_and_rows():
    rep = eigen_report_from_values([-1, -3 + 1j, -3 - 1j, 2])
    assert [c.value.real for c in rep.clusters] == [-3, -3, -1, 2]
    rows = list(rep.rows())
    assert rows[0][0] == 1 and rows[-1][5] == "unstable"
    assert rep.header[:4] == ("cluster_id", "re", "im", "multiplicity")
    drep = eigen_report_from_values([0.9, -0.2, 0.5j], "discrete")
    assert [c.magnitude for c in drep.clusters] == sorted(c.magnitude for c in drep.clusters)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_report_invariants(seed, n):
    rep = eigen_report(random_model(np.random.default_rng(seed), n))
    assert rep.n_states == n
    for c in rep.clusters:
        assert c.classes
        if c.value.imag != 0:
            mate = [d for d in rep.clusters if abs(d.value - np.conj(c.value)) < 1e-8]
            assert mate and mate[0].multiplicity == c.multiplicity


# -- numerical rank --------------------------------------------------------------

def test_rank_examples():
    assert numerical_rank([1, 1, 1]) == 3
    assert numerical_rank([1, 1e-20]) == 1
    assert numerical_rank([]) == 0
    assert numerical_rank([0, 0]) == 0
    assert numerical_rank([1.0, 0.5], tol=0.5) == 1


def test_rank_default_threshold_uses_dims():
    s = [1.0, 4e-16]
    assert numerical_rank(s, dims=(2, 2)) == 1   # threshold 2 eps = 4.4e-16
    assert numerical_rank(s, dims=(1, 1)) == 2   # threshold eps
    assert numerical_rank([1.0, 3 * EPS], dims=(2, 2)) == 2


def test_rank_contract():
    with pytest.raises(ContractError):
        numerical_rank([0.1, 1.0])
    with pytest.raises(ContractError):
        numerical_rank([1.0, -0.1])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1e3), max_size=12), st.floats(0, 1e3), st.floats(0, 1e3))
def test_rank_brute_force_and_monotone(sigma, t1, t2):
    sigma = sorted(sigma, reverse=True)
    lo, hi = sorted((t1, t2))
    assert numerical_rank(sigma, tol=lo) == sum(s > lo for s in sigma)
    assert numerical_rank(sigma, tol=hi) <= numerical_rank(sigma, tol=lo)


# -- sweeps ----------------------------------------------------------------------

def test_identity_tfm_gamma_one():
    sw = condition_sweep(identity_tfm, FrequencyGrid.logspace(1e-3, 1e3, 50))
    assert np.all(np.abs(sw.gamma - 1) <= 1e-12)
    assert np.all(sw.rank == 2)


def test_diag_tfm_gamma_sqrt2():
    sw = condition_sweep(diag_tfm, FrequencyGrid([0.5, 1.0, 2.0]))
    assert abs(sw.gamma[1] - math.sqrt(2)) <= 1e-10


def test_gamma_matches_singular_values(rng):
    m = random_model(rng, 4, 3, 2)
    grid = FrequencyGrid.logspace(1e-2, 1e2, 20)
    sw = condition_sweep(m, grid)
    for k, w in enumerate(grid.omega):
        s = singular_values(freq_response(m, w))
        assert sw.gamma[k] == s[0] / s[-1]
        assert sw.sigma_max[k] == s[0] and sw.sigma_min[k] == s[-1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-100, 100).filter(lambda c: abs(c) > 1e-3))
def test_gamma_scale_invariant(seed, scale):
    m = random_model(np.random.default_rng(seed), 3)
    scaled = model_from_arrays(m.a, m.b, scale * m.c, scale * m.d)
    grid = FrequencyGrid.logspace(1e-2, 1e2, 15)
    g0, g1 = condition_sweep(m, grid).gamma, condition_sweep(scaled, grid).gamma
    ok = np.isfinite(g0)
    assert np.allclose(g1[ok], g0[ok], rtol=1e-9)
    assert np.all(g0[ok] >= 1)


def test_gaps_recorded():
    osc = model_from_arrays([[0.0, 2.0], [-2.0, 0.0]], np.eye(2), np.eye(2), np.zeros((2, 2)))
    sw = condition_sweep(osc, FrequencyGrid([1.0, 2.0, 3.0]))
    assert sw.gap.tolist() == [False, True, False]
    assert sw.rank[1] == -1 and math.isnan(sw.gamma[1])
    assert sw.summary()["gaps"] == 1
    assert list(sw.rows())[1][4] == "nan"


def test_sweep_errors_and_nyquist():
    with pytest.raises(ParameterError):
        condition_sweep(identity_tfm, [])
    dt = c2d_zoh(diag_tfm, 0.1)
    with pytest.raises(ParameterError):
        condition_sweep(dt, FrequencyGrid([1.0, 100.0]))
    grid = default_grid(dt)
    assert grid.omega[-1] == pytest.approx(dt.nyquist)
    assert len(condition_sweep(dt, grid)) == len(grid)


def test_rank_sweep_full_rank_feedthrough():
    sw = rank_sweep(identity_tfm, FrequencyGrid.logspace(1e-2, 1e2, 10))
    assert sw.max_rank == sw.min_rank == 2
    assert sw.rank_changes() == []


def test_rank_changes_reported():
    m = model_from_arrays([[-1.0]], [[1.0, 0.0]], [[1.0], [0.0]], [[0.0, 0.0], [0.0, 1.0]])
    sw = rank_sweep(m, FrequencyGrid.logspace(1e-2, 1e4, 40), rank_tol=1e-2)
    assert sw.max_rank == 2 and sw.min_rank == 1
    assert len(sw.rank_changes()) == 1


def test_rsr_rank_bound():
    p = get_plant("rsr")
    m = linearize_ct(p)
    sw = rank_sweep(m, default_grid(m, points=40))
    assert sw.max_rank <= min(p.n_outputs, p.n_inputs)


# -- deviation metrics -----------------------------------------------------------

def test_eq1_fixtures():
    tr = make_trace({"a": [2.0, 2.0], "b": [1.1, 1.1], "c": [0.3, 0.3]})
    prof = nominal_deviation_profile(tr, {"a": 2.0, "b": 1.0, "c": 0.25})
    assert prof.kind == NOMINAL_PERCENT and prof.unit == "percent"
    assert np.allclose(prof.values, [0.0, 10.0, 20.0], rtol=0, atol=1e-12)


def test_eq1_zero_nominal():
    tr = make_trace({"a": [1.0], "b": [1.0]})
    with pytest.raises(NormalizationError) as info:
        nominal_deviation_profile(tr, [1.0, 0.0])
    assert info.value.channel == "b"


def test_eq2_fixtures():
    nl = make_trace({"a": [1.0, 2.0, 3.0], "b": [4.0, 4.0, 4.0]})
    same = linearization_error_profile(nl, nl, [1.0, 2.0])
    assert np.all(same.values == 0) and same.aggregate == 0
    lin = make_trace({"a": [1.5, 2.5, 3.5], "b": [4.0, 4.0, 4.0]})
    prof = linearization_error_profile(lin, nl, [2.0, 4.0])
    assert prof.kind == LINEARIZATION_ERROR
    assert np.allclose(prof.values, [0.25, 0.0], rtol=0, atol=1e-12)


def test_eq2_aggregate_sum_of_abs():
    nl = make_trace({"a": [0.0], "b": [0.0], "c": [0.0]})
    lin = make_trace({"a": [0.5], "b": [-0.5], "c": [1.0]})
    assert abs(linearization_error_profile(lin, nl, [1, 1, 1]).aggregate - 2.0) <= 1e-12


def test_eq2_linear_in_offset_scale(rng):
    nl = make_trace({"a": rng.standard_normal(20), "b": rng.standard_normal(20)})
    off = rng.standard_normal((2, 20))
    agg = []
    for c in (1.0, -3.0):
        lin = make_trace({"a": nl["a"].values + c * off[0], "b": nl["b"].values + c * off[1]})
        agg.append(linearization_error_profile(lin, nl, [2.0, 5.0]).aggregate)
    assert agg[1] == pytest.approx(3 * agg[0], rel=1e-12)


def test_eq2_truncates_and_checks_structure():
    nl = make_trace({"a": [1.0, 1.0]})
    lin = make_trace({"a": [2.0, 2.0, 100.0]})
    assert linearization_error_profile(lin, nl, [1.0]).values[0] == 1.0
    with pytest.raises(ComparisonError):
        linearization_error_profile(make_trace({"z": [1.0]}), nl, [1.0])
    with pytest.raises(ComparisonError):
        linearization_error_profile(make_trace({"a": [1.0]}, period=0.1), nl, [1.0])


# -- comparison ------------------------------------------------------------------

def test_exact_model_comparison():
    p = get_plant("linear-demo")
    sched = InputSchedule.step(p.u_nom, 0.1, p.u_nom * 1.02)
    rep = compare_linearizations(p, [linearize_ct(p)], sched, duration=1.0, step=1e-3)
    assert rep.aggregates["ct"] <= 1e-6


def test_cstr_report_two_models():
    p = get_plant("cstr")
    ct = linearize_ct(p)
    dt = linearize_dt(p, ts=suggest_sampling_time(ct))
    sched = InputSchedule.step(p.u_nom, 0.01, p.u_nom * 1.001)
    rep = compare_linearizations(p, [ct, dt], sched, duration=0.2, step=1e-3)
    assert set(rep.aggregates) == {"ct", "dt"}
    assert rep.ratios["ct/dt"] == rep.aggregates["ct"] / rep.aggregates["dt"]
    assert rep.termination.status == "shutdown"
    assert rep.t_end <= rep.termination.time
    header = rep.error_bar_header()
    assert header == ("channel", "nominal", "eq1_percent", "eq2_ct", "eq2_dt")
    for row, name in zip(rep.error_bars(), rep.channels):
        assert row[2] == rep.nonlinear_profile.values[rep.channels.index(name)]
        assert row[3] == abs(rep.profiles["ct"].values[rep.channels.index(name)])


def test_comparison_deterministic():
    p = get_plant("rsr")
    ct = linearize_ct(p)
    sched = InputSchedule.step(p.u_nom, 0.1, p.u_nom * 1.01)
    reps = [compare_linearizations(p, {"ct": ct}, sched, duration=0.5, step=1e-3,
                                   seed=5, repeats=2).to_dict() for _ in range(2)]
    assert reps[0] == reps[1]
    assert reps[0]["scenario"]["repeats"] == 2


def test_insufficient_data():
    p = scalar_plant(lambda x, u: 1.0 + 0 * u, x0=0.0, sample_periods=[0.25],
                     constraints=[Constraint("x", -1.0, 0.1)])
    m = linearize_ct(p)
    with pytest.raises(InsufficientDataError):
        compare_linearizations(p, [m], InputSchedule.constant([0.0]), duration=1.0, step=1e-3)


def test_mismatched_operating_points():
    p = get_plant("linear-demo")
    a = linearize_ct(p)
    b = linearize_ct(p, OperatingPoint(p.x_nom * 1.1, p.u_nom, "declared-nominal"))
    with pytest.raises(ComparisonError):
        compare_linearizations(p, [a, b], InputSchedule.constant(p.u_nom), duration=0.1, step=1e-3)


def test_discrete_model_sample_and_hold():
    p = get_plant("linear-demo").without_noise()
    dt = linearize_dt(p, ts=0.05)
    tr = simulate_linear(dt, p, InputSchedule.constant(p.u_nom), duration=0.2, step=1e-3)
    assert np.allclose(tr["y1"].values, p.y_nom[0], atol=1e-9)
    assert len(tr["y2"]) == 3   # period 0.1 h over 0.2 h
