"""Wire protocol shared by the control service and its clients.

Messages are JSON text frames. Client -> server frames carry a command
(types: set_gait, set_compliance, set_fills, set_fill_ramp, pause, resume,
reset) plus a client-chosen ``seq``; the server replies with an ``ack``
echoing the seq and streams ``telemetry`` frames. Malformed input gets an
``error`` frame and the connection stays open. All numbers are SI units and
radians.
"""

from __future__ import annotations

from typing import Any

from .core import ComplianceParams, GaitParams
from .engine import (CommandMessage, Pause, Reset, Resume, SetCompliance,
                     SetFillRamp, SetFills, SetGait)
from .scenario import scenario_from_dict
from .telemetry import TelemetryRecord

COMMAND_TYPES = ("set_gait", "set_compliance", "set_fills", "set_fill_ramp",
                 "pause", "resume", "reset")


class ProtocolError(ValueError):
    pass


def command_from_dict(d: dict) -> CommandMessage:
    if not isinstance(d, dict) or "type" not in d:
        raise ProtocolError("command must be an object with a 'type' field")
    t = d["type"]
    try:
        if t == "set_gait":
            g = d["gait"]
            return SetGait(gait=GaitParams(
                amplitude_A=float(g["amplitude_A"]),
                spatial_freq_xi=float(g["spatial_freq_xi"]),
                temporal_freq_omega=float(g["temporal_freq_omega"]),
                offset_phi=float(g.get("offset_phi", 0.0)),
                joint_count_N=int(g["joint_count_N"]),
            ))
        if t == "set_compliance":
            G = d["G"]
            G = tuple(float(x) for x in G) if isinstance(G, (list, tuple)) else float(G)
            ComplianceParams(G=G)  # validate range
            return SetCompliance(G=G)
        if t == "set_fills":
            return SetFills(fills=_fills(d["fills"]))
        if t == "set_fill_ramp":
            seconds = float(d["seconds"])
            if seconds <= 0:
                raise ProtocolError("ramp seconds must be > 0")
            return SetFillRamp(target=_fills(d["target"]), seconds=seconds)
        if t == "pause":
            return Pause()
        if t == "resume":
            return Resume()
        if t == "reset":
            return Reset(config=scenario_from_dict(d["scenario"]))
    except ProtocolError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ProtocolError(f"bad {t} command: {e}") from e
    raise ProtocolError(f"unknown command type {t!r}")


def _fills(v: Any) -> tuple[float, ...]:
    vals = (float(v),) if isinstance(v, (int, float)) else tuple(float(x) for x in v)
    for f in vals:
        if not 0.0 <= f <= 1.0:
            raise ProtocolError(f"fill {f} outside [0, 1]")
    return vals


def command_to_dict(cmd: CommandMessage, seq: int | None = None) -> dict:
    if isinstance(cmd, SetGait):
        g = cmd.gait
        d = {"type": "set_gait", "gait": {
            "amplitude_A": g.amplitude_A, "spatial_freq_xi": g.spatial_freq_xi,
            "temporal_freq_omega": g.temporal_freq_omega,
            "offset_phi": g.offset_phi, "joint_count_N": g.joint_count_N}}
    elif isinstance(cmd, SetCompliance):
        d = {"type": "set_compliance",
             "G": list(cmd.G) if isinstance(cmd.G, tuple) else cmd.G}
    elif isinstance(cmd, SetFills):
        d = {"type": "set_fills", "fills": list(cmd.fills)}
    elif isinstance(cmd, SetFillRamp):
        d = {"type": "set_fill_ramp", "target": list(cmd.target),
             "seconds": cmd.seconds}
    elif isinstance(cmd, Pause):
        d = {"type": "pause"}
    elif isinstance(cmd, Resume):
        d = {"type": "resume"}
    elif isinstance(cmd, Reset):
        d = {"type": "reset", "scenario": cmd.config.to_dict()}
    else:
        raise ProtocolError(f"unknown command {cmd!r}")
    if seq is not None:
        d["seq"] = seq
    return d


def telemetry_message(record: TelemetryRecord, seq: int) -> dict:
    return {"type": "telemetry", "seq": seq, "record": record.to_dict()}


def ack_message(seq: Any, applies_at: float) -> dict:
    return {"type": "ack", "seq": seq, "applies_at": applies_at}


def error_message(message: str, seq: Any = None) -> dict:
    d = {"type": "error", "message": message}
    if seq is not None:
        d["seq"] = seq
    return d
