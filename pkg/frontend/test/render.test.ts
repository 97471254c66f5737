import { describe, expect, it } from "vitest";

import { fitViewport, linkPoses, scenarioInfoFromConfig, toScreen }
  from "../src/render.js";
import { clampPanel, snapG } from "../src/panel.js";

describe("display kinematics", () => {
  it("straight chain lies along the heading with one pitch spacing", () => {
    const { mids, headings } = linkPoses([0, 0, 0], [0, 0, 0], 0.25);
    expect(mids).toEqual([[0, 0], [-0.25, 0], [-0.5, 0], [-0.75, 0]]);
    expect(headings).toEqual([0, 0, 0, 0]);
  });

  it("right-angle joint rotates the downstream links", () => {
    const { mids, headings } = linkPoses([0, 0, 0], [Math.PI / 2], 0.25);
    expect(headings[1]).toBeCloseTo(Math.PI / 2, 12);
    expect(mids[1][0]).toBeCloseTo(-0.125, 12);
    expect(mids[1][1]).toBeCloseTo(-0.125, 12);
  });
});

describe("viewport fitting", () => {
  it("maps the world box inside the canvas with margins", () => {
    const vp = fitViewport([0, 0, 2, 1], 800, 400, 20);
    const corners = [toScreen(vp, 0, 0), toScreen(vp, 2, 1)];
    for (const [sx, sy] of corners) {
      expect(sx).toBeGreaterThanOrEqual(19);
      expect(sx).toBeLessThanOrEqual(781);
      expect(sy).toBeGreaterThanOrEqual(19);
      expect(sy).toBeLessThanOrEqual(381);
    }
  });

  it("flipY puts larger world y higher on screen", () => {
    const vp = fitViewport([0, 0, 1, 1], 100, 100);
    const [, syLow] = toScreen(vp, 0.5, 0.0);
    const [, syHigh] = toScreen(vp, 0.5, 1.0);
    expect(syHigh).toBeLessThan(syLow);
  });
});

describe("scenario info extraction", () => {
  it("derives link pitch and passes obstacles through", () => {
    const info = scenarioInfoFromConfig({
      geometry: { module_length: 0.1, joint_half_length_Lj: 0.075,
                  module_count: 4, module_diameter: 0.1 },
      obstacles: { posts: [[1, 0, 0.038]], barriers: [], bounds: [0, -1, 2, 1],
                   water_depth: 1.82 },
    });
    expect(info.linkPitch).toBeCloseTo(0.25, 12);
    expect(info.posts.length).toBe(1);
    expect(info.waterDepth).toBe(1.82);
  });
});

describe("panel", () => {
  it("snaps compliance to the three canonical states", () => {
    expect(snapG(0.02)).toBe(0);
    expect(snapG(0.47)).toBe(0.5);
    expect(snapG(0.97)).toBe(1);
    expect(snapG(0.25)).toBe(0.25);
  });

  it("clamps out-of-range input and preserves joint headroom", () => {
    const v = clampPanel({
      amplitudeDeg: 120, xi: 5, omega: -1, offsetDeg: 40, G: 2,
      fills: [-0.5, 1.5, 0.5, 0.5], rampSeconds: 500,
    });
    expect(v.amplitudeDeg).toBe(85);
    expect(Math.abs(v.offsetDeg) + v.amplitudeDeg).toBeLessThan(90);
    expect(v.G).toBe(1);
    expect(v.fills[0]).toBe(0);
    expect(v.fills[1]).toBe(1);
    expect(v.rampSeconds).toBe(120);
  });
});
