"""Command line front end.

    memlab run <file> | --preset NAME   simulate and write csv + json report
    memlab sweep <file> | --preset NAME run the frequency sweep of the config
    memlab list                         show built-in preset names

Relative output paths resolve under --out, then $MEMLAB_OUT, then the
working directory. Exit codes: 0 ok, 2 configuration problem, 3 the
simulation itself failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

from .analyze import (
    linearity_fit,
    loop_area,
    phi_q_classify,
    pinch_test,
    frequency_sweep,
    sweep_monotonicity,
)
from .core import ConfigError, Sinusoid, Trajectory
from .expdsl import ExperimentConfig, build_model, parse_experiment, preset_names, preset_source
from .integrate import SimulationError, simulate

SCHEMA_VERSION = 1


def _drive_dict(config: ExperimentConfig) -> dict:
    wf = config.drive.waveform
    out = {
        "kind": config.drive.kind.value,
        "waveform": "sinusoid" if isinstance(wf, Sinusoid) else "square",
        "amplitude": wf.amplitude,
        "frequency": wf.frequency,
    }
    if isinstance(wf, Sinusoid):
        out["phase"] = wf.phase
    else:
        out["duty"] = wf.duty
    return out


def _controls_dict(config: ExperimentConfig) -> dict:
    c = config.controls
    return {
        "dt": c.dt,
        "transient_cycles": c.transient_cycles,
        "record_cycles": c.record_cycles,
        "event_tolerance": c.event_tolerance,
        "steady_state_rel_tol": c.steady_state_rel_tol,
    }


def build_report(config: ExperimentConfig, traj: Trajectory, wall_time_s: float) -> dict:
    """Assemble the run report for an already simulated trajectory."""
    report = {
        "schema_version": SCHEMA_VERSION,
        "experiment": config.name,
        "model": {"kind": config.model_kind, "params": dict(config.model_params)},
        "drive": _drive_dict(config),
        "controls": _controls_dict(config),
        "dt_used": traj.dt,
        "steps_per_cycle": traj.steps_per_cycle,
        "wall_time_s": wall_time_s,
        "pinch": None,
        "loop_areas": None,
        "phi_q": None,
        "linearity": None,
    }
    if "pinch" in config.analyses:
        p = pinch_test(traj)
        report["pinch"] = {
            "pinched": p.pinched,
            "worst_v_at_zero_i": p.worst_v_at_zero_i,
            "worst_i_at_zero_v": p.worst_i_at_zero_v,
            "crossing_count": p.crossing_count,
            "eps_i": p.eps_i,
            "eps_v": p.eps_v,
        }
    if "loop_area" in config.analyses:
        rows = []
        for c in range(traj.n_cycles):
            la = loop_area(traj.cycle(c))
            rows.append(
                {
                    "cycle": c,
                    "area": la.area,
                    "normalized_area": la.normalized_area,
                    "lobe_areas": list(la.lobe_areas),
                }
            )
        report["loop_areas"] = rows
    if "phi_q" in config.analyses:
        cl = phi_q_classify(traj)
        report["phi_q"] = {
            "kind": cl.kind.value,
            "dq_per_cycle": cl.dq_per_cycle,
            "dphi_per_cycle": cl.dphi_per_cycle,
            "max_phi_spread_at_equal_q": cl.max_phi_spread_at_equal_q,
        }
    if "linearity" in config.analyses:
        lf = linearity_fit(traj)
        report["linearity"] = {
            "slope": lf.slope,
            "relative_rms_residual": lf.relative_rms_residual,
        }
    return report


def run_experiment(config: ExperimentConfig, dt_override: float | None = None):
    """Simulate one experiment and build its report. Returns (trajectory, report)."""
    controls = config.controls
    if dt_override is not None:
        controls = replace(controls, dt=dt_override)
        config = replace(config, controls=controls, warnings=config.warnings)
    model = build_model(config)
    start = time.perf_counter()
    traj = simulate(model, config.drive, controls)
    wall = time.perf_counter() - start
    return traj, build_report(config, traj, wall_time_s=wall)


def write_trajectory_csv(path: Path, traj: Trajectory) -> None:
    header = ["t", "u", "y", "v", "i", "phi", "q"]
    header += [f"state{k}" for k in range(traj.state.shape[1])]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for k in range(len(traj)):
            row = [
                traj.t[k], traj.u[k], traj.y[k], traj.v[k], traj.i[k],
                traj.phi[k], traj.q[k],
            ]
            row += [traj.state[k, j] for j in range(traj.state.shape[1])]
            writer.writerow([repr(float(x)) for x in row])


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _out_base(args) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    env = os.environ.get("MEMLAB_OUT")
    return Path(env) if env else Path(".")


def _resolve(base: Path, rel: str) -> Path:
    p = Path(rel)
    if not p.is_absolute():
        p = base / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _load_config(args) -> ExperimentConfig:
    if args.preset and args.file:
        raise ConfigError("give an experiment file or --preset, not both")
    if args.preset:
        text = preset_source(args.preset)
    elif args.file:
        text = Path(args.file).read_text()
    else:
        raise ConfigError("need an experiment file or --preset NAME")
    config = parse_experiment(text)
    for w in config.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return config


def _cmd_run(args) -> int:
    config = _load_config(args)
    traj, report = run_experiment(config, dt_override=args.dt_override)
    base = _out_base(args)
    csv_path = _resolve(base, config.csv_path)
    write_trajectory_csv(csv_path, traj)
    print(f"wrote {csv_path}")
    if config.json_path is not None:
        json_path = _resolve(base, config.json_path)
        _write_json(json_path, report)
        print(f"wrote {json_path}")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    if not config.sweep_frequencies:
        raise ConfigError(f"experiment {config.name!r} has no sweep(...) in its analyze block")
    model = build_model(config)
    start = time.perf_counter()
    points = frequency_sweep(model, config.drive, config.sweep_frequencies, config.controls)
    wall = time.perf_counter() - start

    base = _out_base(args)
    csv_path = _resolve(base, config.csv_path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["f", "normalized_area", "kind", "dq_per_cycle", "dphi_per_cycle"])
        for p in points:
            writer.writerow(
                [
                    repr(p.frequency),
                    repr(p.loop.normalized_area),
                    p.classification.kind.value,
                    repr(p.classification.dq_per_cycle),
                    repr(p.classification.dphi_per_cycle),
                ]
            )
    print(f"wrote {csv_path}")

    if config.json_path is not None:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "experiment": config.name,
            "model": {"kind": config.model_kind, "params": dict(config.model_params)},
            "drive": _drive_dict(config),
            "frequencies": list(config.sweep_frequencies),
            "points": [
                {
                    "frequency": p.frequency,
                    "area": p.loop.area,
                    "normalized_area": p.loop.normalized_area,
                    "kind": p.classification.kind.value,
                    "dq_per_cycle": p.classification.dq_per_cycle,
                    "dphi_per_cycle": p.classification.dphi_per_cycle,
                    "max_phi_spread_at_equal_q": p.classification.max_phi_spread_at_equal_q,
                }
                for p in points
            ],
            "monotonicity": sweep_monotonicity(points),
            "wall_time_s": wall,
        }
        json_path = _resolve(base, config.json_path)
        _write_json(json_path, payload)
        print(f"wrote {json_path}")
    return 0


def _cmd_list(args) -> int:
    for name in preset_names():
        print(name)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memlab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate an experiment and write its outputs")
    run.add_argument("file", nargs="?", help="experiment description file")
    run.add_argument("--preset", help="use a built-in preset instead of a file")
    run.add_argument("--out", help="directory for relative output paths")
    run.add_argument("--dt-override", type=float, default=None,
                     help="replace the configured integrator step")
    run.set_defaults(func=_cmd_run)

    sweep = sub.add_parser("sweep", help="run an experiment's frequency sweep")
    sweep.add_argument("file", nargs="?", help="experiment description file")
    sweep.add_argument("--preset", help="use a built-in preset instead of a file")
    sweep.add_argument("--out", help="directory for relative output paths")
    sweep.set_defaults(func=_cmd_sweep)

    lst = sub.add_parser("list", help="list built-in presets")
    lst.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
