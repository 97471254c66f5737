/**
 * Single client-side store: the view renders exactly what the last
 * telemetry frame said (no extrapolation), plus connection/ack bookkeeping
 * and a bounded head-trail for the top-down view.
 */

import { ServerMessage, TelemetryRecordWire } from "./protocol.js";

export type ConnectionPhase = "connecting" | "open" | "closed";

export interface PendingAck {
  seq: number;
  label: string;
  sentAt: number;
}

export interface AckedCommand {
  seq: number | null;
  label: string;
  ok: boolean;
  detail: string;
}

export const TRAIL_LIMIT = 4000;
export const STRIP_LIMIT = 2400;

export interface StripSample {
  t: number;
  depth: number;
  pitch: number;
  joints: number[];
}

export class ConsoleStore {
  phase: ConnectionPhase = "connecting";
  observerMode = false;
  latest: TelemetryRecordWire | null = null;
  trail: [number, number][] = [];
  strips: StripSample[] = [];
  pending: PendingAck[] = [];
  history: AckedCommand[] = [];
  droppedFrames = 0;
  dirty = false;

  setPhase(phase: ConnectionPhase): void {
    this.phase = phase;
    this.dirty = true;
  }

  recordSent(seq: number, label: string, now: number): void {
    this.pending.push({ seq, label, sentAt: now });
    if (this.pending.length > 32) this.pending.shift();
    this.dirty = true;
  }

  private resolvePending(seq: number | null): PendingAck | undefined {
    const i = this.pending.findIndex((p) => p.seq === seq);
    return i >= 0 ? this.pending.splice(i, 1)[0] : undefined;
  }

  apply(msg: ServerMessage): void {
    switch (msg.type) {
      case "telemetry": {
        this.latest = msg.record;
        const [x, y] = msg.record.state.head_pose;
        this.trail.push([x, y]);
        if (this.trail.length > TRAIL_LIMIT) this.trail.shift();
        this.strips.push({
          t: msg.record.sim_time,
          depth: msg.record.state.depth_z,
          pitch: msg.record.state.pitch,
          joints: [...msg.record.state.joint_angles],
        });
        if (this.strips.length > STRIP_LIMIT) this.strips.shift();
        break;
      }
      case "ack": {
        const p = this.resolvePending(msg.seq ?? null);
        this.history.push({
          seq: msg.seq ?? null,
          label: p?.label ?? "command",
          ok: true,
          detail: `applies at t=${msg.applies_at.toFixed(3)} s`,
        });
        break;
      }
      case "error": {
        const p = this.resolvePending(msg.seq ?? null);
        if (msg.message.includes("not controller")) this.observerMode = true;
        this.history.push({
          seq: msg.seq ?? null,
          label: p?.label ?? "command",
          ok: false,
          detail: msg.message,
        });
        break;
      }
    }
    if (this.history.length > 20) this.history.shift();
    this.dirty = true;
  }

  noteDroppedFrame(): void {
    this.droppedFrames += 1;
  }

  /** Reset per-session data on reconnect; keep the command history. */
  resetSession(): void {
    this.latest = null;
    this.trail = [];
    this.strips = [];
    this.pending = [];
    this.observerMode = false;
    this.dirty = true;
  }
}
