/**
 * Display-rate governor: telemetry may arrive far faster than the screen
 * needs. The store always keeps only the latest frame, so rendering simply
 * samples it on a timer; this helper decides when a redraw is due, keeping
 * the display rate within [minHz, maxHz] without queueing frames.
 */

export class RenderGovernor {
  private lastDraw = -Infinity;

  constructor(public minHz = 10, public maxHz = 60) {}

  /** True when a redraw should happen at time `now` (ms). */
  due(now: number, dirty: boolean): boolean {
    const sinceMs = now - this.lastDraw;
    if (sinceMs >= 1000 / this.minHz) return true;   // keep the minimum rate
    if (dirty && sinceMs >= 1000 / this.maxHz) return true;
    return false;
  }

  mark(now: number): void {
    this.lastDraw = now;
  }
}
