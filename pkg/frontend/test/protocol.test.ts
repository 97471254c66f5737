import { describe, expect, it } from "vitest";

import {
  Command, commandProblem, decodeServerMessage, degToRad, encodeCommand,
  radToDeg,
} from "../src/protocol.js";

describe("degree/radian conversion", () => {
  it("is exact at the snap points used by the panel", () => {
    // exactness = identical to the canonical expression deg * PI / 180
    expect(degToRad(20)).toBe((20 * Math.PI) / 180);
    expect(degToRad(30)).toBe((30 * Math.PI) / 180);
    expect(degToRad(50)).toBe((50 * Math.PI) / 180);
    expect(degToRad(0)).toBe(0);
    expect(degToRad(-20)).toBe(-(20 * Math.PI) / 180);
  });

  it("round-trips within one ulp", () => {
    for (const d of [20, 30, 50, 12.5, -37]) {
      expect(radToDeg(degToRad(d))).toBeCloseTo(d, 12);
    }
  });

  it("20 deg offset encodes as 0.349 rad on the wire", () => {
    const cmd: Command = {
      type: "set_gait", seq: 1,
      gait: {
        amplitude_A: degToRad(30), spatial_freq_xi: 0.5,
        temporal_freq_omega: 0.2, offset_phi: degToRad(20), joint_count_N: 3,
      },
    };
    const wire = JSON.parse(encodeCommand(cmd));
    expect(wire.gait.offset_phi).toBeCloseTo(0.3490658503988659, 15);
  });
});

describe("command validation", () => {
  it("accepts well-formed commands", () => {
    const ok: Command[] = [
      { type: "set_compliance", seq: 1, G: 0.5 },
      { type: "set_fills", seq: 2, fills: [0, 0.5, 1, 0.25] },
      { type: "set_fill_ramp", seq: 3, target: [1, 1, 1, 1], seconds: 20 },
      { type: "pause", seq: 4 },
      { type: "resume", seq: 5 },
    ];
    for (const cmd of ok) expect(commandProblem(cmd)).toBeNull();
  });

  it("rejects out-of-range values", () => {
    expect(commandProblem({ type: "set_compliance", seq: 1, G: 1.2 })).toMatch(/G/);
    expect(commandProblem({ type: "set_fills", seq: 1, fills: [2] })).toMatch(/fills/);
    expect(commandProblem(
      { type: "set_fill_ramp", seq: 1, target: [0.5], seconds: 0 })).toMatch(/seconds/);
    expect(commandProblem({
      type: "set_gait", seq: 1,
      gait: { amplitude_A: 2.0, spatial_freq_xi: 0.5, temporal_freq_omega: 0.2,
              offset_phi: 0, joint_count_N: 3 },
    })).toMatch(/amplitude/);
    expect(() =>
      encodeCommand({ type: "set_fills", seq: 1, fills: [9] })).toThrow();
  });

  it("rejects gait whose offset eats the joint headroom", () => {
    expect(commandProblem({
      type: "set_gait", seq: 1,
      gait: { amplitude_A: degToRad(80), spatial_freq_xi: 0.5,
              temporal_freq_omega: 0.2, offset_phi: degToRad(20),
              joint_count_N: 3 },
    })).toMatch(/headroom/);
  });
});

describe("server message decoding", () => {
  const record = {
    sim_time: 1.0,
    state: {
      head_pose: [0, 0, 0], joint_angles: [0, 0, 0],
      joint_velocities: [0, 0, 0], depth_z: 0, heave_rate: 0, pitch: 0,
      pitch_rate: 0, fills: [0.5, 0.5, 0.5, 0.5], sim_time: 1.0,
    },
    link_forces: [], contact_flags: [], joint_torques: [], outcome: null,
  };

  it("round-trips telemetry, ack and error frames", () => {
    const frames = [
      { type: "telemetry", seq: 1, record },
      { type: "ack", seq: 5, applies_at: 1.005 },
      { type: "error", message: "not controller", seq: 2 },
    ];
    for (const f of frames) {
      const decoded = decodeServerMessage(JSON.stringify(f));
      expect(decoded).not.toBeNull();
      expect(JSON.parse(JSON.stringify(decoded))).toEqual(f);
    }
  });

  it("returns null on garbage without throwing", () => {
    expect(decodeServerMessage("{nope")).toBeNull();
    expect(decodeServerMessage(JSON.stringify({ type: "mystery" }))).toBeNull();
    expect(decodeServerMessage(JSON.stringify({ type: "ack" }))).toBeNull();
  });
});
