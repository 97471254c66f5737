/**
 * Console entry point: fetch the scenario layout, open the telemetry
 * socket, mount the command panel, and drive the three views from a
 * requestAnimationFrame loop throttled by the render governor.
 *
 * Service address: same origin by default, or ?service=host:port.
 */

import { ServiceLink } from "./net.js";
import { mountPanel } from "./panel.js";
import { drawSideView, drawStrips, drawTopDown, scenarioInfoFromConfig,
         ScenarioInfo } from "./render.js";
import { ConsoleStore } from "./state.js";
import { RenderGovernor } from "./throttle.js";

function serviceBase(): string {
  const q = new URLSearchParams(window.location.search).get("service");
  if (q) return q.includes("://") ? q : `http://${q}`;
  return window.location.origin;
}

async function start(): Promise<void> {
  const base = serviceBase();
  const wsUrl = base.replace(/^http/, "ws") + "/ws";
  const store = new ConsoleStore();

  const res = await fetch(base + "/scenario");
  const scenario = await res.json();
  const info: ScenarioInfo = scenarioInfoFromConfig(scenario.config);

  const link = new ServiceLink(wsUrl, store);
  link.connect();

  const topCanvas = document.getElementById("top-view") as HTMLCanvasElement;
  const sideCanvas = document.getElementById("side-view") as HTMLCanvasElement;
  const stripCanvas = document.getElementById("strips") as HTMLCanvasElement;
  const status = document.getElementById("status") as HTMLElement;
  const panelRoot = document.getElementById("panel") as HTMLElement;

  mountPanel(panelRoot, link, store,
             scenario.config.gait.joint_count_N,
             scenario.config.geometry.module_count);

  const governor = new RenderGovernor(10, 60);
  const frame = (now: number) => {
    if (governor.due(now, store.dirty)) {
      governor.mark(now);
      store.dirty = false;
      drawTopDown(topCanvas.getContext("2d")!, store, info);
      drawSideView(sideCanvas.getContext("2d")!, store, info);
      drawStrips(stripCanvas.getContext("2d")!, store);
      const t = store.latest ? store.latest.sim_time.toFixed(2) : "-";
      const outcome = store.latest?.outcome ? ` | outcome: ${store.latest.outcome}` : "";
      status.textContent =
        `${store.phase}${store.observerMode ? " (observer)" : ""} | ` +
        `sim t=${t} s${outcome} | dropped ${store.droppedFrames}`;
      status.className = store.phase === "open" ? "ok" : "err";
    }
    requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);
}

start().catch((e) => {
  const status = document.getElementById("status");
  if (status) {
    status.textContent = `failed to start: ${e}`;
    status.className = "err";
  }
});
