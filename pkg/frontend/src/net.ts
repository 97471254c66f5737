/**
 * WebSocket client: decodes frames into the store, reconnects with
 * exponential backoff, and assigns command sequence numbers.
 */

import { Command, commandProblem, decodeServerMessage } from "./protocol.js";
import { ConsoleStore } from "./state.js";

export const BACKOFF_BASE_MS = 500;
export const BACKOFF_MAX_MS = 8000;

export function backoffDelay(attempt: number): number {
  return Math.min(BACKOFF_BASE_MS * 2 ** attempt, BACKOFF_MAX_MS);
}

type SocketFactory = (url: string) => WebSocket;

export class ServiceLink {
  private ws: WebSocket | null = null;
  private attempt = 0;
  private seq = 0;
  private closedByUser = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private url: string,
    private store: ConsoleStore,
    private makeSocket: SocketFactory = (u) => new WebSocket(u),
  ) {}

  connect(): void {
    this.store.setPhase("connecting");
    const ws = this.makeSocket(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.attempt = 0;
      this.store.resetSession();
      this.store.setPhase("open");
    };
    ws.onmessage = (ev: MessageEvent) => {
      const msg = decodeServerMessage(String(ev.data));
      if (msg) this.store.apply(msg);
      else this.store.noteDroppedFrame();
    };
    ws.onclose = () => {
      this.store.setPhase("closed");
      this.ws = null;
      if (!this.closedByUser) this.scheduleReconnect();
    };
    ws.onerror = () => {
      /* onclose follows; backoff handles it */
    };
  }

  private scheduleReconnect(): void {
    const delay = backoffDelay(this.attempt);
    this.attempt += 1;
    this.timer = setTimeout(() => this.connect(), delay);
  }

  close(): void {
    this.closedByUser = true;
    if (this.timer) clearTimeout(this.timer);
    this.ws?.close();
  }

  /** Send a command; returns its seq, or -1 if invalid / not connected. */
  send(cmd: Omit<Command, "seq">, label: string, now = Date.now()): number {
    if (!this.ws || this.ws.readyState !== 1 /* OPEN */) return -1;
    this.seq += 1;
    const full = { ...cmd, seq: this.seq } as Command;
    const problem = commandProblem(full);
    if (problem) {
      this.store.history.push({
        seq: this.seq, label, ok: false, detail: `rejected locally: ${problem}`,
      });
      this.store.dirty = true;
      return -1;
    }
    this.ws.send(JSON.stringify(full));
    this.store.recordSent(this.seq, label, now);
    return this.seq;
  }
}
