/**
 * Canvas views: top-down planar view (links, posts, trail), side depth view
 * with barrier bands, and time-series strips. Everything drawn comes
 * straight from the last telemetry frame; there is no client-side physics.
 */

import { ConsoleStore } from "./state.js";

export interface ScenarioInfo {
  linkPitch: number;
  moduleCount: number;
  bodyRadius: number;
  posts: [number, number, number][];
  barriers: { z_lo: number; z_hi: number; x_lo: number; x_hi: number }[];
  bounds: [number, number, number, number] | null;
  waterDepth: number | null;
}

export function scenarioInfoFromConfig(config: any): ScenarioInfo {
  const geom = config.geometry;
  const obs = config.obstacles ?? {};
  return {
    linkPitch: geom.module_length + 2 * geom.joint_half_length_Lj,
    moduleCount: geom.module_count,
    bodyRadius: geom.module_diameter / 2,
    posts: obs.posts ?? [],
    barriers: obs.barriers ?? [],
    bounds: obs.bounds ?? null,
    waterDepth: obs.water_depth ?? null,
  };
}

/** Display-only forward kinematics: link midpoints and headings. */
export function linkPoses(
  head: [number, number, number],
  jointAngles: number[],
  linkPitch: number,
): { mids: [number, number][]; headings: number[] } {
  const half = linkPitch / 2;
  const mids: [number, number][] = [[head[0], head[1]]];
  const headings = [head[2]];
  for (let i = 0; i < jointAngles.length; i++) {
    const h = headings[i];
    const px = mids[i][0] - half * Math.cos(h);
    const py = mids[i][1] - half * Math.sin(h);
    const h2 = h + jointAngles[i];
    headings.push(h2);
    mids.push([px - half * Math.cos(h2), py - half * Math.sin(h2)]);
  }
  return { mids, headings };
}

export interface Viewport {
  scale: number;
  ox: number;
  oy: number;
  flipY: boolean;
}

/** Fit a world box into a canvas with margins; world y up unless flipY. */
export function fitViewport(
  box: [number, number, number, number],
  width: number,
  height: number,
  margin = 20,
  flipY = true,
): Viewport {
  const [x0, y0, x1, y1] = box;
  const w = Math.max(x1 - x0, 1e-6);
  const h = Math.max(y1 - y0, 1e-6);
  const scale = Math.min((width - 2 * margin) / w, (height - 2 * margin) / h);
  const cx = (x0 + x1) / 2;
  const cy = (y0 + y1) / 2;
  return {
    scale,
    ox: width / 2 - cx * scale,
    oy: flipY ? height / 2 + cy * scale : height / 2 - cy * scale,
    flipY,
  };
}

export function toScreen(v: Viewport, x: number, y: number): [number, number] {
  return [v.ox + x * v.scale, v.flipY ? v.oy - y * v.scale : v.oy + y * v.scale];
}

function worldBox(store: ConsoleStore, info: ScenarioInfo): [number, number, number, number] {
  let x0 = -1.2, y0 = -1.2, x1 = 1.2, y1 = 1.2;
  if (info.bounds) [x0, y0, x1, y1] = info.bounds;
  for (const [x, y] of store.trail) {
    x0 = Math.min(x0, x - 0.3); x1 = Math.max(x1, x + 0.3);
    y0 = Math.min(y0, y - 0.3); y1 = Math.max(y1, y + 0.3);
  }
  return [x0, y0, x1, y1];
}

export function drawTopDown(
  ctx: CanvasRenderingContext2D, store: ConsoleStore, info: ScenarioInfo,
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#0b1d2a";
  ctx.fillRect(0, 0, width, height);
  const vp = fitViewport(worldBox(store, info), width, height);

  ctx.fillStyle = "#4a5a66";
  for (const [cx, cy, r] of info.posts) {
    const [sx, sy] = toScreen(vp, cx, cy);
    ctx.beginPath();
    ctx.arc(sx, sy, r * vp.scale, 0, 2 * Math.PI);
    ctx.fill();
  }

  if (store.trail.length > 1) {
    ctx.strokeStyle = "#3fa7ff88";
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    store.trail.forEach(([x, y], i) => {
      const [sx, sy] = toScreen(vp, x, y);
      i ? ctx.lineTo(sx, sy) : ctx.moveTo(sx, sy);
    });
    ctx.stroke();
  }

  const rec = store.latest;
  if (!rec) return;
  const { mids, headings } = linkPoses(
    rec.state.head_pose, rec.state.joint_angles, info.linkPitch);
  ctx.lineCap = "round";
  mids.forEach(([x, y], i) => {
    const h = headings[i];
    const half = info.linkPitch * 0.42;
    const [ax, ay] = toScreen(vp, x - half * Math.cos(h), y - half * Math.sin(h));
    const [bx, by] = toScreen(vp, x + half * Math.cos(h), y + half * Math.sin(h));
    ctx.strokeStyle = rec.contact_flags[i] ? "#ff9f43" : "#e8f4ff";
    ctx.lineWidth = Math.max(2, 2 * info.bodyRadius * vp.scale);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
  });
  // head marker
  const [hx, hy] = toScreen(vp, mids[0][0], mids[0][1]);
  ctx.fillStyle = "#ffd166";
  ctx.beginPath();
  ctx.arc(hx, hy, 4, 0, 2 * Math.PI);
  ctx.fill();
}

export function drawSideView(
  ctx: CanvasRenderingContext2D, store: ConsoleStore, info: ScenarioInfo,
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#08131c";
  ctx.fillRect(0, 0, width, height);
  const box = worldBox(store, info);
  const zMax = info.waterDepth ?? 2.0;
  const vp = fitViewport([box[0], 0, box[2], zMax], width, height, 16, false);

  ctx.fillStyle = "#4a5a6688";
  for (const b of info.barriers) {
    const [ax, ay] = toScreen(vp, b.x_lo, b.z_lo);
    const [bx, by] = toScreen(vp, b.x_hi, b.z_hi);
    ctx.fillRect(ax, ay, bx - ax, by - ay);
  }
  ctx.strokeStyle = "#2a6f97";
  ctx.beginPath();
  const [s0x, s0y] = toScreen(vp, box[0], 0);
  const [s1x] = toScreen(vp, box[2], 0);
  ctx.moveTo(s0x, s0y);
  ctx.lineTo(s1x, s0y);
  ctx.stroke();

  if (store.strips.length > 1) {
    ctx.strokeStyle = "#3fa7ff";
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    let started = false;
    for (let i = 0; i < store.strips.length; i++) {
      const x = store.trail[Math.max(0, store.trail.length - store.strips.length + i)];
      if (!x) continue;
      const [sx, sy] = toScreen(vp, x[0], store.strips[i].depth);
      started ? ctx.lineTo(sx, sy) : ctx.moveTo(sx, sy);
      started = true;
    }
    ctx.stroke();
  }
  const rec = store.latest;
  if (rec) {
    const [sx, sy] = toScreen(vp, rec.state.head_pose[0], rec.state.depth_z);
    ctx.save();
    ctx.translate(sx, sy);
    ctx.rotate(rec.state.pitch);
    ctx.fillStyle = "#ffd166";
    ctx.fillRect(-14, -3, 28, 6);
    ctx.restore();
  }
}

export function drawStrips(ctx: CanvasRenderingContext2D, store: ConsoleStore): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#08131c";
  ctx.fillRect(0, 0, width, height);
  const s = store.strips;
  if (s.length < 2) return;
  const t0 = s[0].t;
  const t1 = s[s.length - 1].t;
  const nJoints = s[0].joints.length;
  const rows: { label: string; get: (k: number) => number; color: string }[] = [
    { label: "depth m", get: (k) => s[k].depth, color: "#3fa7ff" },
    { label: "pitch deg", get: (k) => (s[k].pitch * 180) / Math.PI, color: "#ffd166" },
  ];
  for (let j = 0; j < nJoints; j++) {
    rows.push({
      label: `joint ${j} deg`,
      get: (k) => (s[k].joints[j] * 180) / Math.PI,
      color: ["#8ecae6", "#95d5b2", "#f4978e"][j % 3],
    });
  }
  const rowH = height / rows.length;
  rows.forEach((row, r) => {
    let lo = Infinity, hi = -Infinity;
    for (let k = 0; k < s.length; k++) {
      const v = row.get(k);
      lo = Math.min(lo, v); hi = Math.max(hi, v);
    }
    if (hi - lo < 1e-6) { hi += 0.5; lo -= 0.5; }
    ctx.strokeStyle = row.color;
    ctx.lineWidth = 1;
    ctx.beginPath();
    for (let k = 0; k < s.length; k++) {
      const x = ((s[k].t - t0) / Math.max(t1 - t0, 1e-9)) * width;
      const y = r * rowH + rowH - ((row.get(k) - lo) / (hi - lo)) * (rowH - 12) - 6;
      k ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
    }
    ctx.stroke();
    ctx.fillStyle = "#9fb3c8";
    ctx.font = "10px sans-serif";
    ctx.fillText(`${row.label} [${lo.toFixed(2)}, ${hi.toFixed(2)}]`, 4, r * rowH + 11);
  });
}
