/**
 * Wire protocol spoken with the control service: JSON text frames over a
 * WebSocket. Command frames carry a client sequence number; the service
 * replies with `ack` frames and streams `telemetry`.
 *
 * All numeric fields are SI units with angles in radians; the UI works in
 * degrees and converts at the boundary.
 */

export interface GaitWire {
  amplitude_A: number;
  spatial_freq_xi: number;
  temporal_freq_omega: number;
  offset_phi: number;
  joint_count_N: number;
}

export type Command =
  | { type: "set_gait"; seq: number; gait: GaitWire }
  | { type: "set_compliance"; seq: number; G: number | number[] }
  | { type: "set_fills"; seq: number; fills: number[] }
  | { type: "set_fill_ramp"; seq: number; target: number[]; seconds: number }
  | { type: "pause"; seq: number }
  | { type: "resume"; seq: number };

export interface RobotStateWire {
  head_pose: [number, number, number];
  joint_angles: number[];
  joint_velocities: number[];
  depth_z: number;
  heave_rate: number;
  pitch: number;
  pitch_rate: number;
  fills: number[];
  sim_time: number;
}

export interface TelemetryRecordWire {
  sim_time: number;
  state: RobotStateWire;
  link_forces: [number, number, number][];
  contact_flags: boolean[];
  joint_torques: number[];
  outcome: string | null;
}

export type ServerMessage =
  | { type: "telemetry"; seq: number; record: TelemetryRecordWire }
  | { type: "ack"; seq: number | null; applies_at: number }
  | { type: "error"; message: string; seq?: number | null };

export function degToRad(deg: number): number {
  return (deg * Math.PI) / 180;
}

export function radToDeg(rad: number): number {
  return (rad * 180) / Math.PI;
}

const isNum = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);
const isNumArray = (v: unknown): v is number[] =>
  Array.isArray(v) && v.every(isNum);

/** Validate a command before it goes on the wire; returns a reason or null. */
export function commandProblem(cmd: Command): string | null {
  switch (cmd.type) {
    case "set_gait": {
      const g = cmd.gait;
      if (!isNum(g.amplitude_A) || g.amplitude_A <= 0 || g.amplitude_A >= Math.PI / 2)
        return "amplitude out of range";
      if (!isNum(g.temporal_freq_omega) || g.temporal_freq_omega <= 0)
        return "temporal frequency must be positive";
      if (Math.abs(g.offset_phi) + g.amplitude_A >= Math.PI / 2)
        return "offset plus amplitude exceeds joint headroom";
      if (!Number.isInteger(g.joint_count_N) || g.joint_count_N < 1)
        return "bad joint count";
      return null;
    }
    case "set_compliance": {
      const gs = Array.isArray(cmd.G) ? cmd.G : [cmd.G];
      return gs.every((g) => isNum(g) && g >= 0 && g <= 1)
        ? null
        : "G must be within [0, 1]";
    }
    case "set_fills":
      return isNumArray(cmd.fills) && cmd.fills.every((f) => f >= 0 && f <= 1)
        ? null
        : "fills must be within [0, 1]";
    case "set_fill_ramp":
      if (!isNumArray(cmd.target) || !cmd.target.every((f) => f >= 0 && f <= 1))
        return "ramp target must be within [0, 1]";
      return isNum(cmd.seconds) && cmd.seconds > 0
        ? null
        : "ramp seconds must be positive";
    case "pause":
    case "resume":
      return null;
  }
}

export function encodeCommand(cmd: Command): string {
  const problem = commandProblem(cmd);
  if (problem) throw new Error(problem);
  return JSON.stringify(cmd);
}

export function decodeServerMessage(text: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null || !("type" in obj)) return null;
  const m = obj as Record<string, unknown>;
  if (m.type === "telemetry" && typeof m.record === "object" && m.record !== null) {
    return m as unknown as ServerMessage;
  }
  if (m.type === "ack" && isNum(m.applies_at)) {
    return m as unknown as ServerMessage;
  }
  if (m.type === "error" && typeof m.message === "string") {
    return m as unknown as ServerMessage;
  }
  return null;
}
