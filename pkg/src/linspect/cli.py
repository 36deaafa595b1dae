"""``linspect`` command-line front end.

Subcommands::

    linspect linearize --plant rsr --both --ts auto
    linspect eig       --model out/rsr_ct.json
    linspect sweep     --model out/rsr_dt.json --mode both
    linspect compare   --plant rsr --models out/rsr_ct.json out/rsr_dt.json
    linspect simulate  --plant cstr --duration 0.5

Every subcommand accepts ``--config FILE`` (JSON); explicit flags override
the file. The output directory is chosen by ``--out``, else the
``LINSPECT_OUTPUT_DIR`` environment variable, else ``output_dir`` from the
config, else the working directory.

Exit codes: 0 success, 2 configuration/contract error, 3 numerical failure,
4 success with warnings (sweep gaps, Nyquist clipping, non-equilibrium
operating point).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import _io
from .diagnostics import (compare_linearizations, condition_sweep,
                          eigen_report, INTEGRATOR, UNSTABLE)
from .errors import ContractError, LinspectError, NumericalError
from .linearize import FdOptions, OperatingPoint, linearize_ct, linearize_dt
from .plants import (DEFAULT_STEP, InputSchedule, get_plant, plant_names,
                     simulate, write_trace)
from .statespace import (DiscreteLinearModel, FrequencyGrid, load_model,
                         save_model, suggest_sampling_time)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_WARN = 0, 2, 3, 4
OUTPUT_ENV = "LINSPECT_OUTPUT_DIR"


class ConfigError(LinspectError):
    pass


@dataclass
class Scenario:
    duration: float = 1.0
    step: float = DEFAULT_STEP
    seed: int = 0
    repeats: int = 1
    noise: bool = True
    schedule: list = None       # [[t, [u...]], ...]; None = default step test
    step_time: float = 0.1
    step_scale: float = 1.01

    def build_schedule(self, plant):
        if self.schedule is not None:
            return InputSchedule(self.schedule)
        # default excitation: every input scaled by step_scale at step_time
        return InputSchedule.step(plant.u_nom, self.step_time,
                                  plant.u_nom * self.step_scale)


@dataclass
class RunConfig:
    plant: str = None
    model: str = None
    models: list = field(default_factory=list)
    operating_point: str = "nominal"
    step_factor: float = None
    step_floor: float = None
    ts: object = "auto"
    which: str = "both"
    grid_min: float = 1e-4
    grid_max: float = 1e4
    grid_points: int = 200
    rank_tol: object = "default"
    mode: str = "both"
    cluster_tol: float = 1e-6
    tol_int: float = None
    tol_stab: float = 0.0
    scenario: Scenario = field(default_factory=Scenario)
    output_dir: str = None

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(doc)

    @classmethod
    def from_dict(cls, doc):
        cfg = cls()
        simple = ("plant", "model", "models", "operating_point", "ts",
                  "rank_tol", "mode", "output_dir")
        for key in simple:
            if key in doc:
                setattr(cfg, key, doc[key])
        if "linearize" in doc:
            cfg.which = doc["linearize"]
        fd = doc.get("fd", {})
        cfg.step_factor = fd.get("step_factor", cfg.step_factor)
        cfg.step_floor = fd.get("floor", cfg.step_floor)
        grid = doc.get("grid", {})
        cfg.grid_min = grid.get("min", cfg.grid_min)
        cfg.grid_max = grid.get("max", cfg.grid_max)
        cfg.grid_points = grid.get("points", cfg.grid_points)
        eig = doc.get("eig", {})
        cfg.cluster_tol = eig.get("cluster_tol", cfg.cluster_tol)
        cfg.tol_int = eig.get("tol_int", cfg.tol_int)
        cfg.tol_stab = eig.get("tol_stab", cfg.tol_stab)
        sc = doc.get("scenario", {})
        unknown = set(sc) - set(Scenario.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown scenario keys {sorted(unknown)}")
        cfg.scenario = Scenario(**sc)
        return cfg

    def validate(self):
        if not self.grid_min < self.grid_max:
            raise ConfigError("grid min must be < grid max")
        if int(self.grid_points) < 2:
            raise ConfigError("grid needs at least 2 points")
        if self.operating_point not in ("nominal", "trim"):
            raise ConfigError("operating_point must be 'nominal' or 'trim'")
        if self.which not in ("ct", "dt", "both"):
            raise ConfigError("linearize must be 'ct', 'dt' or 'both'")
        if self.mode not in ("condition", "rank", "both"):
            raise ConfigError("mode must be 'condition', 'rank' or 'both'")
        if self.ts != "auto":
            try:
                self.ts = float(self.ts)
            except (TypeError, ValueError):
                raise ConfigError(f"ts must be 'auto' or a number, got {self.ts!r}")
        if self.rank_tol != "default":
            try:
                self.rank_tol = float(self.rank_tol)
            except (TypeError, ValueError):
                raise ConfigError("rank_tol must be 'default' or a number")

    @property
    def rank_threshold(self):
        return None if self.rank_tol == "default" else float(self.rank_tol)

    def fd_options(self):
        defaults = FdOptions()
        return FdOptions(self.step_factor or defaults.step_factor,
                         self.step_floor or defaults.floor)


def _g(x):
    return f"{x:.6g}"


def _out_dir(args, cfg):
    out = args.out or os.environ.get(OUTPUT_ENV) or cfg.output_dir or "."
    os.makedirs(out, exist_ok=True)
    return out


def _plant(cfg):
    if not cfg.plant:
        raise ConfigError(f"no plant given; catalog: {', '.join(plant_names())}")
    try:
        return get_plant(cfg.plant)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None


def _load(path):
    if not path:
        raise ConfigError("no model file given")
    try:
        return load_model(path)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ConfigError(f"cannot read model {path}: {exc}") from exc


def _stem(path):
    return os.path.splitext(os.path.basename(path))[0]


def _print_eigs(label, model):
    rep = eigen_report(model)
    n_unst = sum(c.multiplicity for c in rep.clusters if UNSTABLE in c.classes)
    n_int = sum(c.multiplicity for c in rep.clusters if INTEGRATOR in c.classes)
    radius = max(c.magnitude for c in rep.clusters)
    print(f"{label}: {rep.n_states} eigenvalues, {len(rep.clusters)} clusters, "
          f"{n_unst} unstable, {n_int} integrating, max |.| {_g(radius)}")


def _operating_point(cfg, plant):
    if cfg.operating_point == "trim":
        return OperatingPoint.trimmed(plant)
    return OperatingPoint.nominal(plant)


# -- subcommands -------------------------------------------------------------

def cmd_linearize(args, cfg):
    plant = _plant(cfg)
    out = _out_dir(args, cfg)
    op = _operating_point(cfg, plant)
    opts = cfg.fd_options()
    warn = False
    ct = linearize_ct(plant, op, opts)
    if cfg.which in ("ct", "both"):
        path = os.path.join(out, f"{plant.name}_ct.json")
        save_model(ct, path)
        print(f"wrote {path}")
        _print_eigs("continuous", ct)
        warn |= bool(ct.metadata["warnings"])
    if cfg.which in ("dt", "both"):
        if cfg.ts == "auto":
            raw = suggest_sampling_time(ct, rounded=False)
            ts = suggest_sampling_time(ct)
            print(f"ts auto: raw 1/(2 max|lambda|) = {_g(raw)} h, "
                  f"rounded down = {_g(ts)} h")
        else:
            ts = float(cfg.ts)
        dt = linearize_dt(plant, op, ts, opts)
        path = os.path.join(out, f"{plant.name}_dt.json")
        save_model(dt, path)
        print(f"wrote {path}")
        _print_eigs("discrete", dt)
        warn |= bool(dt.metadata["warnings"])
    for w in ct.metadata["warnings"]:
        print(f"warning: {w}")
    return EXIT_WARN if warn else EXIT_OK


def cmd_eig(args, cfg):
    model = _load(cfg.model)
    out = _out_dir(args, cfg)
    rep = eigen_report(model, cfg.cluster_tol, cfg.tol_int, cfg.tol_stab)
    path = os.path.join(out, f"{_stem(cfg.model)}_eig.csv")
    _io.write_csv(path, rep.header, rep.rows())
    print(f"{'id':>4} {'value':>28} {'mult':>5} {'|.|':>12}  classes")
    for cid, re, im, mult, mag, classes, _lhp, _imag in rep.rows():
        value = f"{_g(re)}{'+' if im >= 0 else '-'}{_g(abs(im))}i" if im else _g(re)
        print(f"{cid:>4} {value:>28} {mult:>5} {_g(mag):>12}  {classes}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sweep(args, cfg):
    model = _load(cfg.model)
    out = _out_dir(args, cfg)
    grid = FrequencyGrid.logspace(cfg.grid_min, cfg.grid_max, int(cfg.grid_points))
    warn = False
    if isinstance(model, DiscreteLinearModel) and grid.omega[-1] > model.nyquist:
        grid = grid.clip(model.nyquist)
        print(f"warning: grid clipped at Nyquist {_g(model.nyquist)} rad/h")
        warn = True
    sweep = condition_sweep(model, grid, cfg.rank_threshold)
    stem = _stem(cfg.model)
    kinds = ("condition", "rank") if cfg.mode == "both" else (cfg.mode,)
    for kind in kinds:
        path = os.path.join(out, f"{stem}_{kind}.csv")
        _io.write_csv(path, sweep.header, sweep.rows())
        print(f"wrote {path}")
    summary = sweep.summary()
    _io.write_json(os.path.join(out, f"{stem}_sweep.json"), summary)
    if summary["gaps"]:
        print(f"warning: {summary['gaps']} singular grid points recorded as gaps")
        warn = True
    print(f"max gamma {_g(summary['max_gamma'])}, min rank {summary['min_rank']}, "
          f"max rank {summary['max_rank']}")
    return EXIT_WARN if warn else EXIT_OK


def cmd_compare(args, cfg):
    plant = _plant(cfg)
    out = _out_dir(args, cfg)
    if cfg.models:
        models = {_stem(p): _load(p) for p in cfg.models}
    else:
        op = _operating_point(cfg, plant)
        ct = linearize_ct(plant, op, cfg.fd_options())
        ts = suggest_sampling_time(ct) if cfg.ts == "auto" else float(cfg.ts)
        models = {"ct": ct, "dt": linearize_dt(plant, op, ts, cfg.fd_options())}
    sc = cfg.scenario
    report = compare_linearizations(
        plant, models, sc.build_schedule(plant), sc.duration, sc.step,
        sc.seed, sc.repeats, sc.noise)
    csv_path = os.path.join(out, "compare_errorbars.csv")
    _io.write_csv(csv_path, report.error_bar_header(), report.error_bars())
    json_path = os.path.join(out, "compare_summary.json")
    _io.write_json(json_path, report.to_dict())
    term = report.termination
    if term.status == "shutdown":
        print(f"nonlinear run shut down at t={_g(term.time)} h "
              f"({term.variable} {term.bound} limit {_g(term.limit)})")
    for name, agg in report.aggregates.items():
        print(f"aggregate {name}: {_g(agg)}")
    for pair, ratio in report.ratios.items():
        print(f"ratio {pair}: {'undefined' if ratio is None else _g(ratio)}")
    print(f"wrote {csv_path}\nwrote {json_path}")
    return EXIT_OK


def cmd_simulate(args, cfg):
    plant = _plant(cfg)
    out = _out_dir(args, cfg)
    sc = cfg.scenario
    trace = simulate(plant, sc.build_schedule(plant), None, sc.duration,
                     sc.step, sc.seed, sc.noise)
    paths = write_trace(trace, out, stem=f"{plant.name}_trace")
    term = trace.termination
    if term.status == "shutdown":
        print(f"shutdown at t={_g(term.time)} h: {term.variable} crossed "
              f"{term.bound} limit {_g(term.limit)}")
    else:
        print(f"completed {_g(term.time)} h")
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


COMMANDS = {"linearize": cmd_linearize, "eig": cmd_eig, "sweep": cmd_sweep,
            "compare": cmd_compare, "simulate": cmd_simulate}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser():
    parser = _Parser(prog="linspect", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--out", help="output directory")

    def scenario(p):
        p.add_argument("--duration", type=float)
        p.add_argument("--step", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--repeats", type=int)
        p.add_argument("--no-noise", action="store_true")

    p = sub.add_parser("linearize", help="continuous and/or discrete linearization")
    common(p)
    p.add_argument("--plant")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ct", dest="which", action="store_const", const="ct")
    g.add_argument("--dt", dest="which", action="store_const", const="dt")
    g.add_argument("--both", dest="which", action="store_const", const="both")
    p.add_argument("--ts", help="sampling period in hours, or 'auto'")
    p.add_argument("--op", dest="operating_point", choices=("nominal", "trim"))
    p.add_argument("--step-factor", type=float)

    p = sub.add_parser("eig", help="eigenvalue table of a model file")
    common(p)
    p.add_argument("--model")
    p.add_argument("--cluster-tol", type=float)
    p.add_argument("--tol-int", type=float)
    p.add_argument("--tol-stab", type=float)

    p = sub.add_parser("sweep", help="condition number / rank versus frequency")
    common(p)
    p.add_argument("--model")
    p.add_argument("--mode", choices=("condition", "rank", "both"))
    p.add_argument("--min", dest="grid_min", type=float)
    p.add_argument("--max", dest="grid_max", type=float)
    p.add_argument("--points", dest="grid_points", type=int)
    p.add_argument("--rank-tol", help="'default' or an absolute threshold")

    p = sub.add_parser("compare", help="score linear models against the plant")
    common(p)
    p.add_argument("--plant")
    p.add_argument("--models", nargs="+")
    p.add_argument("--ts", help="period for on-the-fly discrete model")
    scenario(p)

    p = sub.add_parser("simulate", help="simulate a catalog plant")
    common(p)
    p.add_argument("--plant")
    scenario(p)
    return parser


_SCENARIO_FLAGS = ("duration", "step", "seed", "repeats")


def _merge(cfg, args):
    for key, value in vars(args).items():
        if value is None or key in ("command", "config", "out") + _SCENARIO_FLAGS:
            continue
        if key == "no_noise":
            if value:
                cfg.scenario.noise = False
            continue
        setattr(cfg, key, value)
    for key in _SCENARIO_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg.scenario, key, value)
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
        _merge(cfg, args)
        cfg.validate()
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, ContractError, TypeError) as exc:
        print(f"linspect {args.command}: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        where = getattr(exc, "time", None)
        stamp = f" (t={where:.6g} h)" if where is not None else ""
        print(f"linspect {args.command}: numerical failure{stamp}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
