"""Bundled benchmark plants, addressed by name.

linear-demo
    3-state stable LTI system behind the black-box interface.
cstr
    Exothermic first-order A -> B stirred tank (concentration and
    temperature) held at its open-loop unstable middle steady state.
rsr
    8-state reactor / separator / recycle surrogate with a pure-integrator
    level, noisy outputs, two slow composition analyzers (0.1 h and
    0.25 h) and shutdown limits on reactor pressure and temperature.
"""
import numpy as np

from .core import Constraint, PlantDescriptor

# -- linear-demo -------------------------------------------------------------

LINEAR_DEMO_A = np.array([[-1.0, 0.4, 0.0],
                          [0.0, -2.5, 0.8],
                          [0.3, 0.0, -4.0]])
LINEAR_DEMO_B = np.array([[1.0, 0.0],
                          [0.0, 0.5],
                          [0.2, 1.0]])
LINEAR_DEMO_C = np.array([[1.0, 0.0, 0.0],
                          [0.0, 1.0, 1.0]])
LINEAR_DEMO_D = np.array([[0.0, 0.0],
                          [0.1, 0.0]])
LINEAR_DEMO_U = np.array([1.0, 2.0])


def linear_demo():
    a, b, c, d = LINEAR_DEMO_A, LINEAR_DEMO_B, LINEAR_DEMO_C, LINEAR_DEMO_D
    x_nom = np.linalg.solve(a, -b @ LINEAR_DEMO_U)
    return PlantDescriptor(
        name="linear-demo",
        f=lambda x, u: a @ x + b @ u,
        h=lambda x, u: c @ x + d @ u,
        x_nom=x_nom, u_nom=LINEAR_DEMO_U,
        state_labels=("x1", "x2", "x3"),
        input_labels=("u1", "u2"),
        output_labels=("y1", "y2"),
        sample_periods=(0.0, 0.1),
        description="stable 3-state LTI plant wrapped as a black box",
    )


# -- cstr --------------------------------------------------------------------
# Classic exothermic CSTR data with time converted from minutes to hours.

CSTR_PARAMS = dict(
    q_over_v=60.0,       # 1/h
    ca_feed=1.0,         # mol/m3
    t_feed=350.0,        # K
    k0=7.2e10 * 60.0,    # 1/h
    e_over_r=8750.0,     # K
    heat_gain=5e4 / (1000.0 * 0.239),        # K m3/mol  (-dH / rho cp)
    ua_gain=5e4 / (100.0 * 1000.0 * 0.239) * 60.0,  # 1/h  (UA / V rho cp)
)
CSTR_T_NOM = 370.0  # K; sits between the low and high conversion branches


def cstr_rhs(x, u, p=CSTR_PARAMS):
    ca, temp = x[0], x[1]
    rate = p["k0"] * np.exp(-p["e_over_r"] / temp) * ca
    return np.array([
        p["q_over_v"] * (p["ca_feed"] - ca) - rate,
        p["q_over_v"] * (p["t_feed"] - temp) + p["heat_gain"] * rate
        + p["ua_gain"] * (u[0] - temp),
    ])


def cstr_nominal(t_nom=CSTR_T_NOM, p=CSTR_PARAMS):
    """Steady state (x, u) at reactor temperature ``t_nom`` in closed form."""
    k = p["k0"] * np.exp(-p["e_over_r"] / t_nom)
    ca = p["q_over_v"] * p["ca_feed"] / (p["q_over_v"] + k)
    tc = t_nom - (p["q_over_v"] * (p["t_feed"] - t_nom)
                  + p["heat_gain"] * k * ca) / p["ua_gain"]
    return np.array([ca, t_nom]), np.array([tc])


def cstr():
    x_nom, u_nom = cstr_nominal()
    return PlantDescriptor(
        name="cstr",
        f=cstr_rhs,
        h=lambda x, u: np.array([x[0], x[1]]),
        x_nom=x_nom, u_nom=u_nom,
        state_labels=("Ca", "T"),
        input_labels=("Tc",),
        output_labels=("Ca", "T"),
        noise_std=(0.005, 0.1),
        sample_periods=(0.0, 0.0),
        constraints=(Constraint("T", 340.0, 400.0, "state", 1),),
        description="open-loop unstable exothermic CSTR",
    )


# -- rsr ---------------------------------------------------------------------

RSR_PARAMS = dict(
    v_reactor=10.0,      # m3
    ca_feed=2.0,         # kmol/m3
    t_feed=320.0,        # K
    k0=1.8e11,           # 1/h
    e_over_r=9000.0,     # K
    heat_gain=60.0,      # K m3/kmol
    reactor_cooling=4.0,  # 1/h
    split0=0.3,          # recycle split fraction at 330 K
    split_slope=0.02,    # 1/K
    v_separator=5.0,     # m3
    enrich_a=1.5,
    enrich_b=0.3,
    t_cooling_water=300.0,
    separator_cooling=3.0,  # 1/h
    gas_gain=87.0,       # kPa m3/kmol
    vent_gain=0.1,       # 1/h per unit valve opening
    p_ambient=100.0,     # kPa
    level_gain=2.0,      # %/m3
    expansion=0.002,     # 1/K
)

# Trimmed offline with the level fixed at 50 %; max |f(x_nom, u_nom)| ~ 3e-13.
RSR_X_NOM = np.array([
    0.8605902102851127, 0.9733217516285061, 364.08657035313456,
    2677.6718462386293, 0.8605902102851127, 0.9733217516285061,
    344.1560632618163, 50.0])
RSR_U_NOM = np.array([20.0, 350.0, 1.0, 20.56624253047265])


def _split(ts, p):
    return p["split0"] * np.exp(p["split_slope"] * (ts - 330.0))


def rsr_rhs(x, u, p=RSR_PARAMS):
    ca_r, cb_r, t_r, p_r, ca_s, cb_s, t_s, _level = x
    f_feed, t_cool, vent, f_bottoms = u
    phi = _split(t_s, p)
    f_out = f_feed / (1.0 - phi)
    f_rec = f_out - f_feed
    rate = p["k0"] * np.exp(-p["e_over_r"] / t_r) * ca_r
    vr, vs = p["v_reactor"], p["v_separator"]
    return np.array([
        (f_feed * (p["ca_feed"] - ca_r) + f_rec * (p["enrich_a"] * ca_s - ca_r)) / vr - rate,
        (-f_feed * cb_r + f_rec * (p["enrich_b"] * cb_s - cb_r)) / vr + rate,
        (f_feed * (p["t_feed"] - t_r) + f_rec * (t_s - t_r)) / vr
        + p["heat_gain"] * rate - p["reactor_cooling"] * (t_r - t_cool),
        p["gas_gain"] * rate * t_r / 350.0 - p["vent_gain"] * vent * (p_r - p["p_ambient"]),
        f_out / vs * (ca_r - ca_s),
        f_out / vs * (cb_r - cb_s),
        f_out / vs * (t_r - t_s) - p["separator_cooling"] * (t_s - p["t_cooling_water"]),
        # the level never feeds back: a pure integrator
        p["level_gain"] * (f_feed * (1.0 + p["expansion"] * (t_s - 330.0)) - f_bottoms),
    ])


def rsr_outputs(x, u, p=RSR_PARAMS):
    phi = _split(x[6], p)
    f_rec = u[0] * phi / (1.0 - phi)
    return np.array([x[2], x[3], x[7], x[6], f_rec, x[0], x[5]])


def rsr():
    return PlantDescriptor(
        name="rsr",
        f=rsr_rhs,
        h=rsr_outputs,
        x_nom=RSR_X_NOM, u_nom=RSR_U_NOM,
        state_labels=("CA_r", "CB_r", "T_r", "P_r", "CA_s", "CB_s", "T_s", "L_s"),
        input_labels=("F_feed", "T_cool", "vent", "F_bottoms"),
        output_labels=("T_r", "P_r", "L_s", "T_s", "F_rec", "CA_r", "CB_s"),
        noise_std=(0.1, 2.0, 0.5, 0.1, 0.05, 0.005, 0.005),
        sample_periods=(0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.25),
        constraints=(Constraint("P_r", 1000.0, 3000.0, "state", 3),
                     Constraint("T_r", 330.0, 400.0, "state", 2)),
        description="reactor/separator/recycle surrogate",
    )


_FACTORIES = {"linear-demo": linear_demo, "cstr": cstr, "rsr": rsr}


def plant_names():
    return tuple(_FACTORIES)


def get_plant(name):
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise KeyError(f"unknown plant {name!r}; catalog: "
                       f"{', '.join(_FACTORIES)}") from None


def bundled_plants():
    return {name: make() for name, make in _FACTORIES.items()}
