import { describe, expect, it } from "vitest";

import { ServerMessage, TelemetryRecordWire } from "../src/protocol.js";
import { ConsoleStore, STRIP_LIMIT, TRAIL_LIMIT } from "../src/state.js";
import { RenderGovernor } from "../src/throttle.js";
import { backoffDelay } from "../src/net.js";

function telemetry(t: number, x = 0): ServerMessage {
  const record: TelemetryRecordWire = {
    sim_time: t,
    state: {
      head_pose: [x, 0, 0], joint_angles: [0.1, 0.2, 0.3],
      joint_velocities: [0, 0, 0], depth_z: 0.5, heave_rate: 0, pitch: 0.05,
      pitch_rate: 0, fills: [0.5, 0.5, 0.5, 0.5], sim_time: t,
    },
    link_forces: [], contact_flags: [false, false, false, false],
    joint_torques: [0, 0, 0], outcome: null,
  };
  return { type: "telemetry", seq: Math.round(t * 100), record };
}

describe("store", () => {
  it("display state equals the last received telemetry", () => {
    const store = new ConsoleStore();
    store.apply(telemetry(1.0, 0.1));
    store.apply(telemetry(2.0, 0.2));
    expect(store.latest?.sim_time).toBe(2.0);
    expect(store.latest?.state.head_pose[0]).toBe(0.2);
    expect(store.trail.length).toBe(2);
  });

  it("bounds the trail and strip buffers (no unbounded growth)", () => {
    const store = new ConsoleStore();
    for (let i = 0; i < TRAIL_LIMIT + 500; i++) store.apply(telemetry(i * 0.1, i));
    expect(store.trail.length).toBe(TRAIL_LIMIT);
    expect(store.strips.length).toBeLessThanOrEqual(STRIP_LIMIT);
    // newest data retained
    expect(store.latest?.state.head_pose[0]).toBe(TRAIL_LIMIT + 499);
  });

  it("matches acks to pending commands", () => {
    const store = new ConsoleStore();
    store.recordSent(3, "ramp", 0);
    store.apply({ type: "ack", seq: 3, applies_at: 0.005 });
    expect(store.pending.length).toBe(0);
    expect(store.history.at(-1)).toMatchObject({ seq: 3, label: "ramp", ok: true });
  });

  it("switches to observer mode on a not-controller error", () => {
    const store = new ConsoleStore();
    store.recordSent(1, "pause", 0);
    store.apply({ type: "error", message: "not controller: busy", seq: 1 });
    expect(store.observerMode).toBe(true);
    expect(store.history.at(-1)?.ok).toBe(false);
  });

  it("reset clears session data but keeps history", () => {
    const store = new ConsoleStore();
    store.apply(telemetry(1.0));
    store.apply({ type: "ack", seq: null, applies_at: 1.0 });
    store.resetSession();
    expect(store.latest).toBeNull();
    expect(store.trail.length).toBe(0);
    expect(store.history.length).toBe(1);
  });
});

describe("render governor", () => {
  it("renders at >= minHz even while frames flood in", () => {
    const gov = new RenderGovernor(10, 60);
    let draws = 0;
    let now = 0;
    for (let i = 0; i < 1000; i++) {
      now += 2; // 500 Hz telemetry
      if (gov.due(now, true)) {
        gov.mark(now);
        draws += 1;
      }
    }
    const hz = draws / (now / 1000);
    expect(hz).toBeGreaterThanOrEqual(10);
    expect(hz).toBeLessThanOrEqual(61);
  });

  it("keeps the minimum rate with no new data", () => {
    const gov = new RenderGovernor(10, 60);
    let draws = 0;
    for (let now = 0; now <= 1000; now += 5) {
      if (gov.due(now, false)) {
        gov.mark(now);
        draws += 1;
      }
    }
    expect(draws).toBeGreaterThanOrEqual(10);
    expect(draws).toBeLessThanOrEqual(11);
  });
});

describe("reconnect backoff", () => {
  it("grows exponentially and saturates", () => {
    expect(backoffDelay(0)).toBe(500);
    expect(backoffDelay(1)).toBe(1000);
    expect(backoffDelay(2)).toBe(2000);
    expect(backoffDelay(10)).toBe(8000);
  });
});
