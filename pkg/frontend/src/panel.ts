/**
 * Command panel: sliders for the gait template (degrees in the UI, radians
 * on the wire), compliance with snap points at the three canonical states,
 * per-module fill sliders and a ramp-all control. Every emission lists its
 * ack status from the store.
 */

import { ServiceLink } from "./net.js";
import { degToRad } from "./protocol.js";
import { ConsoleStore } from "./state.js";

export interface PanelValues {
  amplitudeDeg: number;
  xi: number;
  omega: number;
  offsetDeg: number;
  G: number;
  fills: number[];
  rampSeconds: number;
}

export const G_SNAP_POINTS = [0, 0.5, 1];
export const SNAP_TOLERANCE = 0.06;

/** Snap a raw compliance slider value onto 0 / 0.5 / 1 when close. */
export function snapG(raw: number): number {
  for (const s of G_SNAP_POINTS) {
    if (Math.abs(raw - s) <= SNAP_TOLERANCE) return s;
  }
  return raw;
}

export function clampPanel(v: PanelValues): PanelValues {
  const amplitude = Math.min(Math.max(v.amplitudeDeg, 1), 85);
  // keep |offset| + amplitude inside the 90 deg joint headroom
  const offsetCap = Math.max(0, 88 - amplitude);
  return {
    ...v,
    amplitudeDeg: amplitude,
    offsetDeg: Math.min(Math.max(v.offsetDeg, -offsetCap), offsetCap),
    xi: Math.min(Math.max(v.xi, 0.05), 2),
    omega: Math.min(Math.max(v.omega, 0.01), 2),
    G: Math.min(Math.max(v.G, 0), 1),
    fills: v.fills.map((f) => Math.min(Math.max(f, 0), 1)),
    rampSeconds: Math.min(Math.max(v.rampSeconds, 0.5), 120),
  };
}

export function emitGait(link: ServiceLink, v: PanelValues, jointCount: number): number {
  return link.send(
    {
      type: "set_gait",
      gait: {
        amplitude_A: degToRad(v.amplitudeDeg),
        spatial_freq_xi: v.xi,
        temporal_freq_omega: v.omega,
        offset_phi: degToRad(v.offsetDeg),
        joint_count_N: jointCount,
      },
    } as never,
    `gait A=${v.amplitudeDeg}° ξ=${v.xi} ω=${v.omega} φ=${v.offsetDeg}°`,
  );
}

export function emitCompliance(link: ServiceLink, g: number): number {
  return link.send({ type: "set_compliance", G: g } as never, `G=${g}`);
}

export function emitFills(link: ServiceLink, fills: number[]): number {
  return link.send({ type: "set_fills", fills } as never,
    `fills ${fills.map((f) => f.toFixed(2)).join("/")}`);
}

export function emitRampAll(link: ServiceLink, target: number, n: number,
                            seconds: number): number {
  return link.send(
    { type: "set_fill_ramp", target: Array(n).fill(target), seconds } as never,
    `ramp all→${target.toFixed(2)} over ${seconds}s`,
  );
}

export function emitPause(link: ServiceLink, paused: boolean): number {
  return link.send({ type: paused ? "resume" : "pause" } as never,
    paused ? "resume" : "pause");
}

/** Build the DOM controls; returns a disposer. Pure-DOM, no framework. */
export function mountPanel(
  root: HTMLElement, link: ServiceLink, store: ConsoleStore,
  jointCount: number, moduleCount: number,
): () => void {
  const v: PanelValues = {
    amplitudeDeg: 30, xi: 0.5, omega: 0.2, offsetDeg: 0,
    G: 0, fills: Array(moduleCount).fill(0.5), rampSeconds: 20,
  };

  root.innerHTML = "";
  const fieldset = document.createElement("fieldset");
  fieldset.id = "command-panel";
  root.appendChild(fieldset);

  const slider = (
    label: string, min: number, max: number, step: number, value: number,
    oninput: (x: number) => void,
  ) => {
    const row = document.createElement("label");
    row.className = "ctl";
    const span = document.createElement("span");
    span.textContent = label;
    const input = document.createElement("input");
    input.type = "range";
    Object.assign(input, { min: String(min), max: String(max), step: String(step) });
    input.value = String(value);
    const out = document.createElement("output");
    out.textContent = String(value);
    input.oninput = () => {
      const x = parseFloat(input.value);
      oninput(x);
      out.textContent = input.value;
    };
    row.append(span, input, out);
    fieldset.appendChild(row);
    return input;
  };

  slider("amplitude A (deg)", 1, 85, 1, v.amplitudeDeg, (x) => (v.amplitudeDeg = x));
  slider("spatial freq ξ", 0.05, 2, 0.05, v.xi, (x) => (v.xi = x));
  slider("temporal freq ω (Hz)", 0.01, 1, 0.01, v.omega, (x) => (v.omega = x));
  slider("offset φ (deg)", -45, 45, 1, v.offsetDeg, (x) => (v.offsetDeg = x));

  const applyGait = document.createElement("button");
  applyGait.textContent = "apply gait";
  applyGait.onclick = () => emitGait(link, clampPanel(v), jointCount);
  fieldset.appendChild(applyGait);

  const gSlider = slider("compliance G (snaps 0 / 0.5 / 1)", 0, 1, 0.01, v.G, (x) => {
    v.G = snapG(x);
    gSlider.value = String(v.G);
  });
  const applyG = document.createElement("button");
  applyG.textContent = "apply compliance";
  applyG.onclick = () => emitCompliance(link, clampPanel(v).G);
  fieldset.appendChild(applyG);

  for (let i = 0; i < moduleCount; i++) {
    slider(`fill module ${i}`, 0, 1, 0.01, v.fills[i], (x) => (v.fills[i] = x));
  }
  const applyFills = document.createElement("button");
  applyFills.textContent = "apply fills";
  applyFills.onclick = () => emitFills(link, clampPanel(v).fills);
  fieldset.appendChild(applyFills);

  slider("ramp duration (s)", 0.5, 60, 0.5, v.rampSeconds, (x) => (v.rampSeconds = x));
  const rampFull = document.createElement("button");
  rampFull.textContent = "ramp all full (dive)";
  rampFull.onclick = () => emitRampAll(link, 1.0, moduleCount, clampPanel(v).rampSeconds);
  const rampEmpty = document.createElement("button");
  rampEmpty.textContent = "ramp all empty (surface)";
  rampEmpty.onclick = () => emitRampAll(link, 0.0, moduleCount, clampPanel(v).rampSeconds);
  const pauseBtn = document.createElement("button");
  pauseBtn.textContent = "pause/resume";
  let paused = false;
  pauseBtn.onclick = () => {
    emitPause(link, paused);
    paused = !paused;
  };
  fieldset.append(rampFull, rampEmpty, pauseBtn);

  const ackList = document.createElement("ul");
  ackList.id = "ack-list";
  root.appendChild(ackList);
  const timer = setInterval(() => {
    if (store.observerMode) fieldset.disabled = true;
    else if (store.phase !== "open") fieldset.disabled = true;
    else fieldset.disabled = false;
    ackList.innerHTML = store.history
      .slice(-8)
      .map((h) => `<li class="${h.ok ? "ok" : "err"}">#${h.seq ?? "?"} ${h.label}: `
        + `${h.ok ? "ack" : "error"} (${h.detail})</li>`)
      .reverse()
      .join("");
  }, 250);
  return () => clearInterval(timer);
}
