"""Command-line entry points: run scenarios, validate them, calibrate drag,
and serve the live control endpoint.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .calibrate import calibrate_drag, write_calibration
from .engine import run_scenario
from .scenario import ConfigError, load_scenario, validate_scenario

EXIT_BY_OUTCOME = {"Success": 0, "Timeout": 2, "Stuck": 3, "Overload": 4}


def _load(path: str):
    try:
        cfg = load_scenario(path)
    except (ConfigError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)
    return cfg


def cmd_run(args: argparse.Namespace) -> int:
    cfg = _load(args.scenario)
    if args.dt is not None:
        cfg = dataclasses.replace(cfg, dt=args.dt)
    if args.duration is not None:
        cfg = dataclasses.replace(cfg, duration=args.duration)
    errors, warnings = validate_scenario(cfg)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if errors:
        for e in errors:
            print(f"error: {e}", file=sys.stderr)
        return 1
    records, outcome = run_scenario(cfg, out_path=args.out, csv_path=args.csv)
    last = records[-1].state if records else None
    print(f"{cfg.name}: {outcome.kind} at t={outcome.time:.2f} s "
          f"({outcome.evidence})")
    if last is not None:
        print(f"  {len(records)} records; head at "
              f"({last.head_pose[0]:+.3f}, {last.head_pose[1]:+.3f}) m, "
              f"depth {last.depth_z:.3f} m")
    if args.out:
        print(f"  log: {args.out}")
    if args.csv:
        print(f"  csv: {args.csv}")
    return EXIT_BY_OUTCOME[outcome.kind]


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = _load(args.scenario)
    errors, warnings = validate_scenario(cfg)
    for w in warnings:
        print(f"warning: {w}")
    if errors:
        for e in errors:
            print(f"error: {e}")
        return 1
    print(f"{args.scenario}: ok (config hash {cfg.config_hash()})")
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    geom = None
    if args.scenario:
        geom = _load(args.scenario).geometry
    kwargs = {} if geom is None else {"geom": geom}
    result = calibrate_drag(target_blpc=args.target_blpc, **kwargs)
    print(result.summary())
    if args.out:
        write_calibration(result, args.out)
        print(f"  wrote {args.out}")
    err = abs(result.achieved_blpc - result.target_blpc) / result.target_blpc
    return 0 if err <= 0.05 else 1


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve  # deferred: uvicorn import is slow

    cfg = _load(args.scenario)
    errors, warnings = validate_scenario(cfg)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if errors:
        for e in errors:
            print(f"error: {e}", file=sys.stderr)
        return 1
    host, _, port = args.bind.partition(":")
    decimation = max(1, round(1.0 / (cfg.dt * args.rate))) if args.rate else None
    console = args.console
    if console is None:
        default_console = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        console = default_console if default_console.is_dir() else None
    print(f"serving {cfg.name} on {host or '127.0.0.1'}:{port or 8700} "
          f"(decimation {decimation or 'scenario default'}, "
          f"realtime x{args.realtime_factor})")
    if console:
        print(f"  console at http://{host or '127.0.0.1'}:{port or 8700}/console/")
    serve(cfg, host=host or "127.0.0.1", port=int(port or 8700),
          decimation=decimation, realtime_factor=args.realtime_factor,
          console_dir=console)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eelsim",
                                description="undulatory swimming robot simulator")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario file headless")
    r.add_argument("scenario")
    r.add_argument("--out", help="write JSONL telemetry log")
    r.add_argument("--csv", help="write flat CSV export")
    r.add_argument("--dt", type=float, help="override timestep (s)")
    r.add_argument("--duration", type=float, help="override duration (s)")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("validate", help="check a scenario file")
    v.add_argument("scenario")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("calibrate-drag",
                       help="tune drag anisotropy to the straight-swim target")
    c.add_argument("--target-blpc", type=float, default=0.305)
    c.add_argument("--out", help="write calibration overrides YAML")
    c.add_argument("--scenario", help="take base geometry from this scenario")
    c.set_defaults(func=cmd_calibrate)

    s = sub.add_parser("serve", help="run the live control service")
    s.add_argument("--bind", default="127.0.0.1:8700")
    s.add_argument("--scenario", required=True)
    s.add_argument("--rate", type=float, help="telemetry frames per second")
    s.add_argument("--realtime-factor", type=float, default=1.0,
                   help="sim speed vs wall clock; 0 = unpaced")
    s.add_argument("--console", help="directory of console static assets")
    s.set_defaults(func=cmd_serve)
    return p


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    sys.exit(args.func(args))


if __name__ == "__main__":
    main()
