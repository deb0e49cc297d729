import { describe, expect, it } from "vitest";

import { DEFAULT_CAMERA, dragCamera, project } from "../src/projection.js";
import { fixture } from "./helpers.js";

interface Sample {
  camera: { elevation: number; azimuth: number };
  points: number[][];
  screen: number[][];
}

describe("project", () => {
  it("matches the server renderer on sampled points and cameras", () => {
    const samples = fixture<Sample[]>("projection-samples.json");
    expect(samples.length).toBeGreaterThan(0);
    for (const sample of samples) {
      sample.points.forEach((point, k) => {
        const expected = sample.screen[k]!;
        const [sx, sy] = project(sample.camera, point, 1);
        expect(sx).toBeCloseTo(expected[0]!, 12);
        expect(sy).toBeCloseTo(expected[1]!, 12);
      });
    }
  });

  it("is linear in the radius", () => {
    const point = [0.3, -0.8, 0.5];
    const [x1, y1] = project(DEFAULT_CAMERA, point, 1);
    const [x2, y2] = project(DEFAULT_CAMERA, point, 144);
    expect(x2).toBeCloseTo(144 * x1, 9);
    expect(y2).toBeCloseTo(144 * y1, 9);
  });

  it("sends the origin to the panel center", () => {
    expect(project(DEFAULT_CAMERA, [0, 0, 0], 100)).toEqual([0, -0]);
  });
});

describe("camera", () => {
  it("defaults to elevation 70, azimuth 110", () => {
    expect(DEFAULT_CAMERA).toEqual({ elevation: 70, azimuth: 110 });
  });

  it("drag wraps azimuth and clamps elevation away from the poles", () => {
    expect(dragCamera({ elevation: 70, azimuth: 350 }, 20, 0).azimuth).toBe(10);
    expect(dragCamera({ elevation: 70, azimuth: 10 }, -20, 0).azimuth).toBe(350);
    expect(dragCamera({ elevation: 70, azimuth: 110 }, 0, 100).elevation).toBe(5);
    expect(dragCamera({ elevation: 70, azimuth: 110 }, 0, -200).elevation).toBe(175);
    expect(dragCamera({ elevation: 70, azimuth: 110 }, 0, 0)).toEqual({
      elevation: 70,
      azimuth: 110,
    });
  });
});
