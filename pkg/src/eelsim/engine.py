"""Fixed-step simulation core: composes gait, cables, hydrodynamics,
buoyancy, and contact into one deterministic loop, with live-command
application at step boundaries and streaming outcome classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import buoyancy, cable, gait, hydro, world
from .core import (ComplianceParams, GaitParams, RobotState,
                   forward_kinematics, initial_state,
                   joint_torques_from_link_wrenches)
from .scenario import (FillSchedule, ScenarioConfig, validate_scenario)
from .telemetry import TelemetryRecord, export_csv


@dataclass(frozen=True)
class SetGait:
    gait: GaitParams


@dataclass(frozen=True)
class SetCompliance:
    G: float | tuple[float, ...]


@dataclass(frozen=True)
class SetFills:
    fills: tuple[float, ...]


@dataclass(frozen=True)
class SetFillRamp:
    target: tuple[float, ...]
    seconds: float


@dataclass(frozen=True)
class Pause:
    pass


@dataclass(frozen=True)
class Resume:
    pass


@dataclass(frozen=True)
class Reset:
    config: ScenarioConfig


CommandMessage = (SetGait | SetCompliance | SetFills | SetFillRamp
                  | Pause | Resume | Reset)


class EngineCore:
    """Single-threaded simulation core.

    Commands are queued externally and drained at step boundaries, so every
    accepted command takes effect within exactly one step. The core itself
    never blocks and never consults a wall clock.
    """

    def __init__(self, config: ScenarioConfig):
        errors, _ = validate_scenario(config)
        if errors:
            raise ValueError("invalid scenario: " + "; ".join(errors))
        self.config = config
        self.paused = False
        self._inbox: list[CommandMessage] = []
        self.reset(config)

    def reset(self, config: ScenarioConfig) -> None:
        errors, _ = validate_scenario(config)
        if errors:
            raise ValueError("invalid scenario: " + "; ".join(errors))
        self.config = config
        self.geom = config.geometry
        self.gait_params = config.gait
        self.compliance = config.compliance
        self.dyn = config.joint_dynamics
        self.contact_params = config.contact
        self.field = config.obstacles
        self.step_index = 0
        self._fill_source: Callable[[float], tuple[float, ...]] = \
            config.fill_schedule.fills_at
        st = initial_state(self.geom, self.gait_params, config.initial_pose,
                           config.fill_schedule.fills_at(0.0))
        self.state = st.replace(depth_z=config.initial_depth)
        self._prev_u = np.zeros(3)
        self.tracker = world.OutcomeTracker(config.criteria)
        self._script = list(config.commands)

    # -- commands ---------------------------------------------------------

    def enqueue(self, cmd: CommandMessage) -> None:
        self._inbox.append(cmd)

    def _apply(self, cmd: CommandMessage) -> None:
        t = self.state.sim_time
        if isinstance(cmd, SetGait):
            if cmd.gait.joint_count_N != self.geom.joint_count:
                raise ValueError("joint_count_N must match the robot geometry")
            self.gait_params = cmd.gait
        elif isinstance(cmd, SetCompliance):
            self.compliance = ComplianceParams(
                G=cmd.G, slack_gain_l0=self.compliance.slack_gain_l0)
        elif isinstance(cmd, SetFills):
            fills = _broadcast(cmd.fills, self.geom.module_count)
            self._fill_source = FillSchedule.constant(fills).fills_at
        elif isinstance(cmd, SetFillRamp):
            target = _broadcast(cmd.target, self.geom.module_count)
            start = self.state.fills
            self._fill_source = FillSchedule(
                knots=((t, start), (t + cmd.seconds, target))).fills_at
        elif isinstance(cmd, Pause):
            self.paused = True
        elif isinstance(cmd, Resume):
            self.paused = False
        elif isinstance(cmd, Reset):
            self.reset(cmd.config)
        else:
            raise TypeError(f"unknown command {cmd!r}")

    def drain_inbox(self) -> None:
        pending, self._inbox = self._inbox, []
        for cmd in pending:
            self._apply(cmd)

    def _apply_scripted(self, t_next: float) -> None:
        from .protocol import command_from_dict  # local: protocol imports us
        while self._script and self._script[0][0] <= t_next + 1e-12:
            _, wire = self._script.pop(0)
            self._apply(command_from_dict(wire))

    # -- stepping ---------------------------------------------------------

    @property
    def finished(self) -> bool:
        if self.tracker.outcome is not None:
            return True
        return self.step_index >= round(self.config.duration / self.config.dt)

    def step(self) -> TelemetryRecord:
        """Advance one fixed step and return its telemetry record."""
        self.drain_inbox()  # may Reset: compute the step time afterwards
        dt = self.config.dt
        t_next = (self.step_index + 1) * dt
        self._apply_scripted(t_next)

        st = self.state
        geom = self.geom
        n_j = geom.joint_count

        # 1: gait template at the new time
        profile = gait.suggested_profile(self.gait_params, t_next)

        # 2-3: cable commands and the angle intervals they admit
        intervals = []
        for i in range(n_j):
            pair = cable.commanded_cable_lengths(
                float(profile[i]), self.compliance, self.gait_params, geom, i)
            intervals.append(cable.angle_interval_from_cables(pair, geom))

        # 4: contact at the current pose (velocities from the previous step)
        chain = forward_kinematics(st.head_pose, st.joint_angles, geom)
        link_vels = hydro.link_midpoint_velocities(
            chain, self._prev_u, st.joint_velocities)
        contact = world.contact_forces(
            chain, self.field, geom, link_vels, self.contact_params, st.depth_z)

        # hydro torque on each joint, from the same (previous-step) velocities
        drag_wrenches = [
            hydro.link_drag(pose, vel, geom)
            for pose, vel in zip(chain.poses(), link_vels)
        ]
        drag_forces = np.array([[w.fx, w.fy] for w in drag_wrenches])
        drag_t_mid = np.array([
            w.torque_about(chain.mids[k]) for k, w in enumerate(drag_wrenches)
        ])
        tau_hydro = joint_torques_from_link_wrenches(chain, drag_forces, drag_t_mid)
        tau_ext = contact.joint_torques + tau_hydro

        # 5: joint resolution inside the feasible intervals
        resolved = np.empty(n_j)
        rates = np.empty(n_j)
        taut = []
        for i in range(n_j):
            a, r = cable.resolve_joint_angle(
                intervals[i], st.joint_angles[i], st.joint_velocities[i],
                float(tau_ext[i]), dt, self.dyn, hard_limit=geom.joint_limit)
            resolved[i], rates[i] = a, r
            taut.append(cable.cable_tension_flags(intervals[i], a))

        # 6: quasi-static planar solve and pose update
        new_state, u = hydro.step_planar(
            st, resolved, rates, contact.wrenches, dt, geom)

        # 7: ballast schedule, heave and pitch
        fills = self._fill_source(t_next)
        new_state = buoyancy.step_vertical(
            new_state, fills, dt, geom, self.field.water_depth)
        new_state = new_state.replace(sim_time=t_next)

        # 8: outcome bookkeeping; motors only carry torque on an active bound
        torque_est = tuple(
            abs(float(tau_ext[i])) if (taut[i][0] or taut[i][1]) else 0.0
            for i in range(n_j)
        )
        self.tracker.update(t_next, new_state.head_pose[0], max(torque_est, default=0.0))
        finished_now = self.tracker.outcome is not None or \
            self.step_index + 1 >= round(self.config.duration / self.config.dt)
        if finished_now:
            outcome = self.tracker.finish(t_next)
            flag = outcome.kind
        else:
            flag = None

        total_forces = tuple(
            (dw.fx + cw.fx, dw.fy + cw.fy,
             dw.torque_about_origin + cw.torque_about_origin)
            for dw, cw in zip(drag_wrenches, contact.wrenches)
        )
        record = TelemetryRecord(
            sim_time=t_next,
            state=new_state,
            link_forces=total_forces,
            contact_flags=contact.flags,
            joint_torques=torque_est,
            outcome=flag,
        )
        self.state = new_state
        self._prev_u = u
        self.step_index += 1
        return record

    def run(self) -> tuple[list[TelemetryRecord], world.Outcome]:
        records = []
        while not self.finished:
            records.append(self.step())
        outcome = self.tracker.finish(self.state.sim_time)
        return records, outcome


def _broadcast(v, module_count: int) -> tuple[float, ...]:
    if isinstance(v, (int, float)):
        return (float(v),) * module_count
    out = tuple(float(x) for x in v)
    if len(out) != module_count:
        raise ValueError(f"need {module_count} fill values, got {len(out)}")
    return out


def step(state: RobotState, config: ScenarioConfig,
         live_commands: Sequence[CommandMessage] = (),
         dt: float | None = None) -> tuple[RobotState, TelemetryRecord]:
    """One-shot step: build a core at ``state``, apply commands, advance once.

    Convenience wrapper over EngineCore for library callers; the core is the
    efficient interface for loops.
    """
    if dt is not None and dt != config.dt:
        import dataclasses
        config = dataclasses.replace(config, dt=dt)
    core = EngineCore(config)
    core.state = state
    core.step_index = round(state.sim_time / config.dt)
    for cmd in live_commands:
        core.enqueue(cmd)
    record = core.step()
    return core.state, record


def run_scenario(config: ScenarioConfig, out_path: str | Path | None = None,
                 csv_path: str | Path | None = None
                 ) -> tuple[list[TelemetryRecord], world.Outcome]:
    """Run a full scenario at fixed dt; optionally write JSONL / CSV logs.

    The JSONL log streams record by record while the run progresses, so a
    crash or interrupt still leaves everything computed so far on disk.
    """
    import json

    core = EngineCore(config)
    records: list[TelemetryRecord] = []
    if out_path is not None:
        with Path(out_path).open("w") as fh:
            header = {"kind": "header", "config_hash": config.config_hash(),
                      "format": 1}
            fh.write(json.dumps(header, separators=(",", ":")) + "\n")
            while not core.finished:
                rec = core.step()
                records.append(rec)
                fh.write(rec.to_json() + "\n")
            outcome = core.tracker.finish(core.state.sim_time)
            fh.write(json.dumps(
                {"kind": "outcome", "outcome": outcome.kind, "time": outcome.time,
                 "evidence": outcome.evidence}, separators=(",", ":")) + "\n")
    else:
        records, outcome = core.run()
    if csv_path is not None:
        export_csv(csv_path, records)
    return records, outcome
