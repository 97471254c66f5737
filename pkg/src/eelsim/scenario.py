"""Scenario configuration: file schema, degree-suffix handling, fill
schedules, validation, and the stable content digest embedded in logs.

Config keys mirror the dataclass field names; any numeric key may instead be
given with a ``_deg`` suffix and is converted to radians on load.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import yaml

from .cable import JointDynamics, anchor_span
from .core import (ComplianceParams, GaitParams, RobotGeometry,
                   validate_geometry)
from .world import (ContactParams, DepthBarrier, ObstacleField,
                    OutcomeCriteria, build_hex_lattice)


class ConfigError(ValueError):
    pass


def _convert_deg_keys(obj: Any) -> Any:
    """Recursively replace ``foo_deg: v`` with ``foo: radians(v)``."""
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if isinstance(k, str) and k.endswith("_deg"):
                base = k[: -len("_deg")]
                if isinstance(v, (list, tuple)):
                    out[base] = [math.radians(float(x)) for x in v]
                else:
                    out[base] = math.radians(float(v))
            else:
                out[k] = _convert_deg_keys(v)
        return out
    if isinstance(obj, list):
        return [_convert_deg_keys(v) for v in obj]
    return obj


@dataclass(frozen=True)
class FillSchedule:
    """Piecewise-linear per-module fill fractions over time."""

    knots: tuple[tuple[float, tuple[float, ...]], ...]  # (t, fills)

    def __post_init__(self) -> None:
        ts = [t for t, _ in self.knots]
        if ts != sorted(ts):
            raise ValueError("fill schedule knots must be time-ordered")

    def fills_at(self, t: float) -> tuple[float, ...]:
        k = self.knots
        if not k:
            return ()
        if t <= k[0][0]:
            return k[0][1]
        if t >= k[-1][0]:
            return k[-1][1]
        for (t0, f0), (t1, f1) in zip(k, k[1:]):
            if t0 <= t <= t1:
                if t1 == t0:
                    return f1
                w = (t - t0) / (t1 - t0)
                return tuple((1 - w) * a + w * b for a, b in zip(f0, f1))
        return k[-1][1]

    @staticmethod
    def constant(fills: Sequence[float]) -> "FillSchedule":
        return FillSchedule(knots=((0.0, tuple(float(v) for v in fills)),))


def _broadcast_fills(v: Any, module_count: int) -> tuple[float, ...]:
    if isinstance(v, (int, float)):
        return (float(v),) * module_count
    out = tuple(float(x) for x in v)
    if len(out) != module_count:
        raise ConfigError(f"fills need {module_count} values, got {len(out)}")
    return out


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "scenario"
    duration: float = 10.0
    dt: float = 0.005
    geometry: RobotGeometry = RobotGeometry()
    gait: GaitParams = GaitParams(amplitude_A=math.radians(30.0),
                                  spatial_freq_xi=0.5, temporal_freq_omega=0.2)
    compliance: ComplianceParams = ComplianceParams()
    joint_dynamics: JointDynamics = JointDynamics()
    contact: ContactParams = ContactParams()
    initial_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)
    initial_depth: float = 0.0
    fill_schedule: FillSchedule = FillSchedule.constant((0.5, 0.5, 0.5, 0.5))
    obstacles: ObstacleField = ObstacleField()
    criteria: OutcomeCriteria = OutcomeCriteria()
    commands: tuple[tuple[float, dict], ...] = ()  # (t, wire-format command)
    telemetry_decimation: int = 1
    seed: int = 0  # reserved; the engine is deterministic

    def progress_window_seconds(self) -> float | None:
        return self.criteria.progress_window

    def config_hash(self) -> str:
        return hashlib.sha256(
            json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode()
        ).hexdigest()[:16]

    def to_dict(self) -> dict:
        """Canonical mapping, loadable back through scenario_from_dict."""
        comp = dataclasses.asdict(self.compliance)
        if isinstance(comp["G"], tuple):
            comp["G"] = list(comp["G"])
        return {
            "name": self.name,
            "duration": self.duration,
            "dt": self.dt,
            "geometry": dataclasses.asdict(self.geometry),
            "gait": dataclasses.asdict(self.gait),
            "compliance": comp,
            "joint_dynamics": dataclasses.asdict(self.joint_dynamics),
            "contact": dataclasses.asdict(self.contact),
            "initial": {
                "x": self.initial_pose[0], "y": self.initial_pose[1],
                "heading": self.initial_pose[2], "depth_z": self.initial_depth,
            },
            "fill_schedule": [{"t": t, "fills": list(f)}
                              for t, f in self.fill_schedule.knots],
            "obstacles": {
                "posts": [list(p) for p in self.obstacles.posts],
                "barriers": [dataclasses.asdict(b) for b in self.obstacles.lateral_barriers],
                "bounds": list(self.obstacles.bounds) if self.obstacles.bounds else None,
                "water_depth": self.obstacles.water_depth,
            },
            "criteria": dataclasses.asdict(self.criteria),
            "commands": [{"t": t, **c} for t, c in self.commands],
            "telemetry_decimation": self.telemetry_decimation,
            "seed": self.seed,
        }


def scenario_from_dict(raw: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a parsed (YAML/JSON) mapping."""
    d = _convert_deg_keys(dict(raw))

    geom = RobotGeometry(**d.get("geometry", {}))
    gait_kw = d.get("gait", {})
    gait = GaitParams(
        amplitude_A=gait_kw.get("amplitude_A", math.radians(30.0)),
        spatial_freq_xi=gait_kw.get("spatial_freq_xi", 0.5),
        temporal_freq_omega=gait_kw.get("temporal_freq_omega", 0.2),
        offset_phi=gait_kw.get("offset_phi", 0.0),
        joint_count_N=gait_kw.get("joint_count_N", geom.joint_count),
    )
    comp_kw = d.get("compliance", {})
    g_val = comp_kw.get("G", 0.0)
    compliance = ComplianceParams(
        G=tuple(g_val) if isinstance(g_val, (list, tuple)) else float(g_val),
        slack_gain_l0=comp_kw.get("slack_gain_l0", 0.1),
    )
    dyn = JointDynamics(**d.get("joint_dynamics", {}))
    contact = ContactParams(**d.get("contact", {}))

    init = d.get("initial", {})
    pose = (float(init.get("x", 0.0)), float(init.get("y", 0.0)),
            float(init.get("heading", 0.0)))

    obs_kw = d.get("obstacles", {}) or {}
    posts: list[tuple[float, float, float]] = []
    bounds = obs_kw.get("bounds")
    if "lattice" in obs_kw:
        lat = obs_kw["lattice"]
        latf = build_hex_lattice(
            spacing=float(lat["spacing"]), post_diameter=float(lat["post_diameter"]),
            rows=int(lat["rows"]), cols=int(lat["cols"]),
            origin=tuple(lat.get("origin", (0.0, 0.0))),
        )
        posts.extend(latf.posts)
        if bounds is None:
            bounds = latf.bounds
    for p in obs_kw.get("posts", []):
        posts.append((float(p[0]), float(p[1]), float(p[2])))
    barriers = tuple(
        DepthBarrier(z_lo=float(b["z_lo"]), z_hi=float(b["z_hi"]),
                     x_lo=float(b["x_lo"]), x_hi=float(b["x_hi"]))
        for b in obs_kw.get("barriers", [])
    )
    field_ = ObstacleField(
        posts=tuple(posts), lateral_barriers=barriers,
        bounds=tuple(bounds) if bounds is not None else None,
        water_depth=obs_kw.get("water_depth"),
    )

    crit_kw = d.get("criteria", {}) or {}
    window = crit_kw.get("progress_window")
    if window is None and "progress_window_cycles" in crit_kw:
        cyc = crit_kw["progress_window_cycles"]
        window = None if cyc is None else float(cyc) / gait.temporal_freq_omega
    success_x = crit_kw.get("success_x")
    if success_x is None and (field_.posts or field_.lateral_barriers):
        success_x = field_.far_boundary_x  # success = past the field
    criteria = OutcomeCriteria(
        success_x=success_x,
        progress_eps=crit_kw.get("progress_eps", 0.02),
        progress_window=window,
        tau_max=crit_kw.get("tau_max", 1.4),
        t_over=crit_kw.get("t_over", 2.0),
    )

    sched_raw = d.get("fill_schedule")
    if sched_raw:
        knots = tuple(
            (float(k["t"]), _broadcast_fills(k["fills"], geom.module_count))
            for k in sched_raw
        )
        schedule = FillSchedule(knots=knots)
    else:
        schedule = FillSchedule.constant(
            _broadcast_fills(init.get("fills", geom.neutral_fill), geom.module_count))

    commands = tuple(
        (float(c["t"]), {k: v for k, v in c.items() if k != "t"})
        for c in d.get("commands", [])
    )

    return ScenarioConfig(
        name=str(d.get("name", "scenario")),
        duration=float(d.get("duration", 10.0)),
        dt=float(d.get("dt", 0.005)),
        geometry=geom,
        gait=gait,
        compliance=compliance,
        joint_dynamics=dyn,
        contact=contact,
        initial_pose=pose,
        initial_depth=float(init.get("depth_z", 0.0)),
        fill_schedule=schedule,
        obstacles=field_,
        criteria=criteria,
        commands=commands,
        telemetry_decimation=int(d.get("telemetry_decimation", 1)),
        seed=int(d.get("seed", 0)),
    )


def load_scenario(path: str | Path) -> ScenarioConfig:
    raw = yaml.safe_load(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ConfigError(f"scenario file {path} did not parse to a mapping")
    try:
        return scenario_from_dict(raw)
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"invalid scenario {path}: {e}") from e


def validate_scenario(cfg: ScenarioConfig) -> tuple[list[str], list[str]]:
    """Returns (errors, warnings). Errors block a run."""
    errors: list[str] = []
    warnings: list[str] = []
    errors.extend(validate_geometry(cfg.geometry))
    if cfg.duration <= 0:
        errors.append(f"duration must be > 0, got {cfg.duration}")
    if not 0.0 < cfg.dt <= 0.02:
        errors.append(f"dt must be in (0, 0.02], got {cfg.dt}")
    if cfg.gait.joint_count_N != cfg.geometry.joint_count:
        errors.append(
            f"gait joint_count_N={cfg.gait.joint_count_N} does not match "
            f"module_count-1={cfg.geometry.joint_count}")
    for t, fills in cfg.fill_schedule.knots:
        if any(not 0.0 <= f <= 1.0 for f in fills):
            errors.append(f"fill schedule at t={t} outside [0, 1]: {fills}")
    if cfg.telemetry_decimation < 1:
        errors.append("telemetry_decimation must be >= 1")
    max_slope = anchor_span(cfg.geometry) / 2.0
    if cfg.compliance.slack_gain_l0 < max_slope:
        warnings.append(
            f"slack_gain_l0={cfg.compliance.slack_gain_l0:.3f} is below the max "
            f"cable-length slope {max_slope:.3f} m/rad; compliant commands may be infeasible")
    return errors, warnings


def bundled_scenario_path(name: str) -> Path:
    p = Path(__file__).parent / "scenarios" / f"{name}.yaml"
    if not p.exists():
        raise FileNotFoundError(f"no bundled scenario {name!r} at {p}")
    return p
