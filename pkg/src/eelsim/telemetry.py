"""Telemetry records and their on-disk forms: newline-delimited JSON with a
config-hash header, plus flat CSV export for plotting.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .core import RobotState


@dataclass(frozen=True)
class TelemetryRecord:
    """One per simulation step; serializes losslessly round-trip."""

    sim_time: float
    state: RobotState
    link_forces: tuple[tuple[float, float, float], ...]  # (fx, fy, torque) per link
    contact_flags: tuple[bool, ...]
    joint_torques: tuple[float, ...]
    outcome: str | None = None

    def to_dict(self) -> dict:
        return {
            "sim_time": self.sim_time,
            "state": self.state.to_dict(),
            "link_forces": [list(f) for f in self.link_forces],
            "contact_flags": list(self.contact_flags),
            "joint_torques": list(self.joint_torques),
            "outcome": self.outcome,
        }

    @staticmethod
    def from_dict(d: dict) -> "TelemetryRecord":
        return TelemetryRecord(
            sim_time=d["sim_time"],
            state=RobotState.from_dict(d["state"]),
            link_forces=tuple(tuple(f) for f in d["link_forces"]),
            contact_flags=tuple(bool(b) for b in d["contact_flags"]),
            joint_torques=tuple(d["joint_torques"]),
            outcome=d.get("outcome"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @staticmethod
    def from_json(line: str) -> "TelemetryRecord":
        return TelemetryRecord.from_dict(json.loads(line))


def write_log(path: str | Path, records: Iterable[TelemetryRecord],
              config_hash: str, outcome: "object | None" = None) -> None:
    """JSONL log: one header line with the config hash, then one record per line."""
    path = Path(path)
    with path.open("w") as fh:
        header = {"kind": "header", "config_hash": config_hash, "format": 1}
        fh.write(json.dumps(header, separators=(",", ":")) + "\n")
        for rec in records:
            fh.write(rec.to_json() + "\n")
        if outcome is not None:
            fh.write(json.dumps(
                {"kind": "outcome", "outcome": outcome.kind, "time": outcome.time,
                 "evidence": outcome.evidence}, separators=(",", ":")) + "\n")


def read_log(path: str | Path) -> tuple[dict, list[TelemetryRecord], dict | None]:
    """Returns (header, records, outcome line or None)."""
    path = Path(path)
    header: dict = {}
    records: list[TelemetryRecord] = []
    outcome: dict | None = None
    with path.open() as fh:
        for i, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if i == 0 and obj.get("kind") == "header":
                header = obj
            elif obj.get("kind") == "outcome":
                outcome = obj
            else:
                records.append(TelemetryRecord.from_dict(obj))
    return header, records, outcome


def csv_columns(n_links: int, n_joints: int) -> list[str]:
    cols = ["sim_time", "x", "y", "heading", "depth_z", "heave_rate", "pitch", "pitch_rate"]
    cols += [f"q{i}" for i in range(n_joints)]
    cols += [f"dq{i}" for i in range(n_joints)]
    cols += [f"fill{i}" for i in range(n_links)]
    cols += [f"tau{i}" for i in range(n_joints)]
    cols += [f"contact{i}" for i in range(n_links)]
    cols += ["outcome"]
    return cols


def export_csv(path: str | Path, records: Iterable[TelemetryRecord]) -> None:
    path = Path(path)
    records = list(records)
    if not records:
        path.write_text("")
        return
    first = records[0]
    n_links = len(first.state.fills)
    n_joints = len(first.state.joint_angles)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(csv_columns(n_links, n_joints))
        for r in records:
            s = r.state
            row = [r.sim_time, *s.head_pose, s.depth_z, s.heave_rate, s.pitch, s.pitch_rate]
            row += list(s.joint_angles) + list(s.joint_velocities) + list(s.fills)
            row += list(r.joint_torques)
            row += [int(b) for b in r.contact_flags]
            row += [r.outcome or ""]
            w.writerow(row)
