"""Drag calibration: measure body-lengths-per-cycle for the straight gait and
tune the drag anisotropy to hit a target.

Open-water speed in the quasi-static balance is invariant to scaling both
drag coefficients together, so the only knob that moves BL/cycle is the
ratio Cn/Ct. The calibrator does a secant search on log(ratio - 1), keeping
Ct fixed at its configured value.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .core import ComplianceParams, GaitParams, RobotGeometry
from .engine import EngineCore
from .scenario import FillSchedule, ScenarioConfig
from .world import OutcomeCriteria

STRAIGHT_GAIT = GaitParams(amplitude_A=math.radians(30.0), spatial_freq_xi=0.5,
                           temporal_freq_omega=0.2, offset_phi=0.0, joint_count_N=3)


@dataclass(frozen=True)
class SwimMeasurement:
    bl_per_cycle: float
    drift_fraction: float      # straightness: max deviation from the chord / progress
    mean_speed: float          # m/s along the path
    heading_change_per_cycle: float  # rad
    sweep_radius: float        # m, half the largest extent of the cycle marks


def measure_gait(geom: RobotGeometry, gait: GaitParams,
                 compliance: ComplianceParams = ComplianceParams(G=0.0),
                 cycles: float = 5.0, settle_cycles: float = 1.0,
                 dt: float = 0.005) -> SwimMeasurement:
    """Integrate the gait in open water and report per-cycle path metrics.

    Positions are sampled at phase-aligned cycle marks after the settling
    transient. Progress is the chord between the first and last mark (the
    robot travels straight along its mean orientation, which sits at an
    angle to the head axis at phase zero); drift is the largest perpendicular
    deviation of intermediate marks from that chord.
    """
    period = 1.0 / gait.temporal_freq_omega
    duration = cycles * period
    cfg = ScenarioConfig(
        name="measure", duration=duration, dt=dt, geometry=geom, gait=gait,
        compliance=compliance,
        fill_schedule=FillSchedule.constant((geom.neutral_fill,) * geom.module_count),
        criteria=OutcomeCriteria(progress_window=None),
    )
    core = EngineCore(cfg)
    poses = [core.state.head_pose]
    while not core.finished:
        core.step()
        poses.append(core.state.head_pose)

    steps_per_cycle = round(period / dt)
    i0 = min(round(settle_cycles * steps_per_cycle), len(poses) - 1)
    marks = np.array(poses[i0::steps_per_cycle])
    n_cyc = len(marks) - 1
    chord = marks[-1][:2] - marks[0][:2]
    progress = float(np.hypot(chord[0], chord[1]))
    if progress > 1e-12 and n_cyc >= 2:
        u = chord / progress
        rel = marks[1:-1, :2] - marks[0][:2]
        perp = np.abs(rel[:, 0] * u[1] - rel[:, 1] * u[0])
        drift = float(perp.max()) / progress
    else:
        drift = 0.0
    pts = marks[:, :2]
    dists = [np.linalg.norm(a - b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    return SwimMeasurement(
        bl_per_cycle=progress / geom.body_length / n_cyc,
        drift_fraction=drift,
        mean_speed=progress / (n_cyc * period),
        heading_change_per_cycle=float(marks[-1][2] - marks[0][2]) / n_cyc,
        sweep_radius=float(max(dists)) / 2.0 if dists else 0.0,
    )


@dataclass(frozen=True)
class CalibrationResult:
    geometry: RobotGeometry
    achieved_blpc: float
    target_blpc: float
    ratio: float
    iterations: int

    def summary(self) -> str:
        return (f"Cn/Ct = {self.ratio:.4f} (Cn={self.geometry.drag_normal_Cn:.4f}, "
                f"Ct={self.geometry.drag_tangent_Ct:.4f}) -> "
                f"{self.achieved_blpc:.4f} BL/cycle (target {self.target_blpc})")


def calibrate_drag(target_blpc: float = 0.305,
                   geom: RobotGeometry = RobotGeometry(),
                   gait: GaitParams = STRAIGHT_GAIT,
                   rel_tol: float = 0.02, max_iter: int = 12) -> CalibrationResult:
    """Tune Cn/Ct so the straight gait travels ``target_blpc`` per cycle.

    Secant iteration on s = log(ratio - 1); Ct keeps its configured value
    (overall drag scale does not affect the open-water solution).
    """
    ct = geom.drag_tangent_Ct

    def blpc_at(s: float) -> float:
        ratio = 1.0 + math.exp(s)
        g = dataclasses.replace(geom, drag_normal_Cn=ct * ratio)
        return measure_gait(g, gait, cycles=4.0).bl_per_cycle

    s0 = math.log(geom.drag_normal_Cn / ct - 1.0)
    f0 = blpc_at(s0) - target_blpc
    best_s, best_err = s0, abs(f0)
    if abs(f0) <= rel_tol * target_blpc:
        ratio = 1.0 + math.exp(s0)
        return CalibrationResult(
            geometry=dataclasses.replace(geom, drag_normal_Cn=ct * ratio),
            achieved_blpc=f0 + target_blpc, target_blpc=target_blpc,
            ratio=ratio, iterations=1)

    s1 = s0 + (0.4 if f0 < 0 else -0.4)
    f1 = blpc_at(s1) - target_blpc
    iters = 2
    while iters < max_iter and abs(f1) > rel_tol * target_blpc:
        if f1 == f0:
            break
        s0, s1 = s1, s1 - f1 * (s1 - s0) / (f1 - f0)
        s1 = min(max(s1, math.log(0.05)), math.log(50.0))  # ratio in [1.05, 51]
        f0, f1 = f1, blpc_at(s1) - target_blpc
        iters += 1
        if abs(f1) < best_err:
            best_s, best_err = s1, abs(f1)

    s_final = s1 if abs(f1) <= best_err else best_s
    ratio = 1.0 + math.exp(s_final)
    g_final = dataclasses.replace(geom, drag_normal_Cn=ct * ratio)
    achieved = measure_gait(g_final, gait, cycles=4.0).bl_per_cycle
    return CalibrationResult(geometry=g_final, achieved_blpc=achieved,
                             target_blpc=target_blpc, ratio=ratio, iterations=iters)


def write_calibration(result: CalibrationResult, path: str | Path) -> None:
    """Geometry-overrides YAML that scenario files can merge in."""
    Path(path).write_text(yaml.safe_dump({
        "geometry": {
            "drag_normal_Cn": result.geometry.drag_normal_Cn,
            "drag_tangent_Ct": result.geometry.drag_tangent_Ct,
        },
        "achieved_blpc": result.achieved_blpc,
        "target_blpc": result.target_blpc,
    }, sort_keys=True))
