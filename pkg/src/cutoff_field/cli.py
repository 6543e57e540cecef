"""Command line entry point: run | trajectory | predict | oracle | validate."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, ScenarioConfig
from .free import InvalidScenarioError
from .grid import DomainTooSmallError, simulate
from .predictor import predict_final
from .profile import Profile, ProfileError
from .shock import evolve, phase_at, shock_trajectory
from .validators import validate, support

EXIT_OK, EXIT_CONFIG, EXIT_SCENARIO, EXIT_VALIDATION = 0, 2, 3, 4
OUT_ENV = "CUTOFF_FIELD_OUT"


def fmt(v: float | None) -> str:
    if v is None:
        return ""
    return f"{float(v):.17g}"


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if np.isfinite(v) else None
    return obj


def write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(_json_ready(payload), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def sample_rows(p: Profile, samples: int, pad: float = 0.1):
    """``(x, phi)`` rows: every knot (both sides at jumps) plus a uniform fill."""
    sup = support(p, 0.0)
    if sup is None:
        return []
    lo, hi = sup[0] - pad, sup[1] + pad
    fill = np.linspace(lo, hi, samples) if samples > 1 else np.array([])
    knots = {k.x: k for k in p.knots}
    rows = []
    for x in sorted(set(float(v) for v in fill) | set(knots)):
        k = knots.get(x)
        if k is not None and k.left != k.right:
            rows.append((x, k.left))
            rows.append((x, k.right))
        else:
            rows.append((x, p.evaluate(x)))
    return rows


def write_snapshots(path: Path, snaps) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,x,phi\n")
        for t, rows in snaps:
            for x, phi in rows:
                fh.write(f"{fmt(t)},{fmt(x)},{fmt(phi)}\n")


def cmd_run(cfg: ScenarioConfig, out: Path, args) -> int:
    s = cfg.scenario()
    snaps = [(t, sample_rows(evolve(s, t).profile(), args.samples)) for t in cfg.time_list()]
    write_snapshots(out / "snapshots.csv", snaps)
    write_json(out / "events.json", s.events.to_dict())
    return EXIT_OK


def cmd_trajectory(cfg: ScenarioConfig, out: Path, args) -> int:
    s = cfg.scenario()
    times = cfg.time_list()
    traj = shock_trajectory(s, times)
    with (out / "trajectory.csv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,x_s_plus,x_s_minus,phase\n")
        for t, xr, xl in traj.samples:
            ok = np.isfinite(xr)
            fh.write(f"{fmt(t)},{fmt(xr) if ok else 'nan'},{fmt(xl) if ok else 'nan'},{phase_at(s, t).value}\n")
    write_json(out / "events.json", s.events.to_dict())
    return EXIT_OK


def cmd_predict(cfg: ScenarioConfig, out: Path, args) -> int:
    res = predict_final(cfg.packet_profile(), cfg.phi_cut)
    write_json(out / "predict.json", res.to_dict())
    return EXIT_OK


def cmd_oracle(cfg: ScenarioConfig, out: Path, args) -> int:
    if cfg.grid is None:
        raise ConfigError("oracle requires a 'grid' block {h, L, t_end}")
    s = cfg.scenario()
    g = cfg.grid
    run = simulate(s, g["h"], g["L"], g["t_end"], cfg.time_list())
    snaps = [(t, list(zip(xc.tolist(), phi.tolist()))) for t, xc, phi in run.snapshots]
    write_snapshots(out / "snapshots.csv", snaps)
    write_json(
        out / "oracle_events.json",
        {"t_contact": run.t_contact, "t_decay": run.t_decay, "volume_drift": max(run.totals) - min(run.totals)},
    )
    return EXIT_OK


def cmd_validate(cfg: ScenarioConfig, out: Path, args) -> int:
    s = cfg.scenario()
    times = cfg.time_list() or [float(t) for t in np.linspace(-2.0, 2.0, 64)]
    report = validate(s, times)
    payload = report.to_dict(cfg.validation)
    write_json(out / "validation.json", payload)
    return EXIT_OK if payload["ok"] else EXIT_VALIDATION


COMMANDS = {
    "run": cmd_run,
    "trajectory": cmd_trajectory,
    "predict": cmd_predict,
    "oracle": cmd_oracle,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutoff-field", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, type=Path)
        p.add_argument("--out", type=Path, default=None, help=f"output directory (env {OUT_ENV}, default ./out)")
        p.add_argument("--samples", type=int, default=401, help="uniform fill points per snapshot")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = args.out or Path(os.environ.get(OUT_ENV, "out"))
    try:
        cfg = ScenarioConfig.load(args.config)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out, args)
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidScenarioError, ProfileError, DomainTooSmallError) as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
