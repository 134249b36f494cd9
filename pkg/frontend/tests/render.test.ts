import { describe, expect, it } from "vitest";
import { ApiError, type CurveResponse, type InterpResponse } from "../src/api.js";
import { fitViewport, modelToScreen } from "../src/mapping.js";
import type { Point } from "../src/presets.js";
import {
  boundMessage,
  curveSceneSvg,
  hasViolations,
  interpSceneSvg,
  reportHtml,
} from "../src/render.js";

const POLYGON: Point[] = [
  [0, 0],
  [1, 2],
  [3, 2.5],
  [4, 0],
];

// A sigma=0 response: the server collapses the curve onto the chord.
const CHORD_FRAME: CurveResponse = {
  t: [0, 0.25, 0.5, 0.75, 1],
  curves: [
    {
      sigma: 0,
      points: [
        [0, 0],
        [0.625, 0],
        [2, 0],
        [3.375, 0],
        [4, 0],
      ],
    },
  ],
};

function view(overrides: Partial<Parameters<typeof curveSceneSvg>[1]> = {}) {
  return {
    polygon: POLYGON,
    sigma: 0,
    showPolygon: true,
    showPath: false,
    pathT: 0.5,
    width: 640,
    height: 480,
    ...overrides,
  };
}

function extractPoints(svg: string, cls: string): [number, number][] {
  const m = svg.match(new RegExp(`<polyline class="${cls}" points="([^"]+)"`));
  expect(m, `polyline ${cls} present`).not.toBeNull();
  return m![1].split(" ").map((pair) => {
    const [a, b] = pair.split(",");
    return [Number(a), Number(b)];
  });
}

describe("curve scene", () => {
  it("draws exactly the server samples, mapped to screen", () => {
    const svg = curveSceneSvg(CHORD_FRAME, view());
    const drawn = extractPoints(svg, "curve");
    const fitPts = [...POLYGON, ...CHORD_FRAME.curves[0].points] as Point[];
    const map = fitViewport(fitPts, 640, 480);
    CHORD_FRAME.curves[0].points.forEach((p, i) => {
      const [px, py] = modelToScreen(map, p);
      expect(drawn[i][0]).toBeCloseTo(px, 2);
      expect(drawn[i][1]).toBeCloseTo(py, 2);
    });
  });

  it("renders the sigma-zero frame as a straight chord on screen", () => {
    const svg = curveSceneSvg(CHORD_FRAME, view());
    const drawn = extractPoints(svg, "curve");
    const [x0, y0] = drawn[0];
    const [x1, y1] = drawn[drawn.length - 1];
    for (const [x, y] of drawn) {
      const cross = (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0);
      expect(Math.abs(cross)).toBeLessThan(1e-6 * Math.hypot(x1 - x0, y1 - y0) + 0.02);
    }
  });

  it("marks the polygon vertices as draggable handles", () => {
    const svg = curveSceneSvg(CHORD_FRAME, view());
    const handles = svg.match(/data-kind="vertex"/g) ?? [];
    expect(handles.length).toBe(POLYGON.length);
    expect(svg).toContain('class="control-polygon"');
  });

  it("renders ghosts for every non-active sigma", () => {
    const frame: CurveResponse = {
      t: [0, 0.5, 1],
      curves: [0, 0.25, 0.5, 0.75, 1].map((sigma) => ({
        sigma,
        points: [
          [0, 0],
          [2, sigma],
          [4, 0],
        ] as [number, number][],
      })),
    };
    const svg = curveSceneSvg(frame, view({ sigma: 0.5 }));
    const ghosts = svg.match(/class="ghost"/g) ?? [];
    expect(ghosts.length).toBe(4);
    const main = extractPoints(svg, "curve");
    expect(main.length).toBe(3);
  });

  it("draws the point path trace from same-index samples", () => {
    const frame: CurveResponse = {
      t: [0, 0.5, 1],
      curves: [0, 1].map((sigma) => ({
        sigma,
        points: [
          [0, 0],
          [2, 1 + sigma],
          [4, 0],
        ] as [number, number][],
      })),
    };
    const svg = curveSceneSvg(frame, view({ sigma: 1, showPath: true, pathT: 0.5 }));
    const trace = extractPoints(svg, "point-path");
    expect(trace.length).toBe(2);
    expect(svg).toContain('data-kind="path-dot"');
  });

  it("renders without a frame before the first response", () => {
    const svg = curveSceneSvg(null, view());
    expect(svg).toContain("<svg");
    expect(svg).not.toContain('class="curve"');
    expect(svg).toContain('data-kind="vertex"');
  });
});

function interpFrame(overrides: Partial<InterpResponse> = {}): InterpResponse {
  return {
    solution: { s: 0.05 },
    bounds: { s: 0.08450000000000002 },
    samples: { x: [0, 1, 2], y: [0.5, 0.7, 0.881] },
    report: {
      bounds: { s: 0.08450000000000002 },
      violations: [],
      continuity: { order1: [1e-30, 2e-30] },
    },
    ...overrides,
  };
}

const DATASET: Point[] = [
  [0, 0.5],
  [1, 0.7],
  [2, 0.881],
];

describe("interpolation scene", () => {
  it("draws markers for every dataset point plus the curve", () => {
    const svg = interpSceneSvg(interpFrame(), {
      dataset: DATASET,
      showJumps: false,
      width: 640,
      height: 480,
    });
    const knots = svg.match(/data-kind="knot"/g) ?? [];
    expect(knots.length).toBe(3);
    expect(svg).toContain('class="interp-curve"');
  });

  it("never draws a curve next to a nonempty violation list", () => {
    const bad = interpFrame();
    bad.report = { ...bad.report, violations: [{ row: 3 }] };
    expect(hasViolations(bad)).toBe(true);
    const svg = interpSceneSvg(bad, {
      dataset: DATASET,
      showJumps: false,
      width: 640,
      height: 480,
    });
    expect(svg).not.toContain('class="interp-curve"');
    const knots = svg.match(/data-kind="knot"/g) ?? [];
    expect(knots.length).toBe(3); // data stays visible
  });

  it("shows jump bars when asked", () => {
    const svg = interpSceneSvg(interpFrame(), {
      dataset: DATASET,
      showJumps: true,
      width: 640,
      height: 480,
    });
    const bars = svg.match(/class="jump-bar"/g) ?? [];
    expect(bars.length).toBe(2);
  });
});

describe("inline messages", () => {
  it("surfaces the violated bound for an infeasible parameter", () => {
    const err = new ApiError(
      422,
      "infeasible_parameter",
      "s must satisfy 0 < s < 0.08450000000000002, got 0.2",
      "s",
      0.08450000000000002,
    );
    const msg = boundMessage(err);
    expect(msg).toContain("s");
    expect(msg).toContain("0.0845");
    expect(msg).not.toContain("0.08450000000000002"); // trimmed for display
  });

  it("summarizes the report", () => {
    const html = reportHtml(interpFrame());
    expect(html).toContain("bound s");
    expect(html).toContain("0.0845");
    expect(html).toContain("order1");
    expect(html).toContain("all satisfied");
    const degenerate = interpFrame();
    degenerate.report = { ...degenerate.report, continuity: { degenerate: true } };
    expect(reportHtml(degenerate)).toContain("degenerate");
  });
});
