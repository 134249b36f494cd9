import type { ApiError, CurveResponse, InterpResponse } from "./api.js";
import { fitViewport, modelToScreen, type ScreenMap } from "./mapping.js";
import type { Point } from "./presets.js";

// Pure SVG builders: server geometry in, markup string out. The caller owns
// the DOM; keeping these string-valued keeps them testable without one.

const CURVE_COLOR = "#1f6f8b";
const GHOST_COLOR = "#b8cdd6";
const MARKER_COLOR = "#b43b3b";
const POLYGON_COLOR = "#999999";
const PATH_COLOR = "#8b6f1f";

function fmt(v: number): string {
  return v.toFixed(2);
}

function polylineAttr(map: ScreenMap, points: readonly Point[]): string {
  return points
    .map((p) => {
      const [px, py] = modelToScreen(map, p);
      return `${fmt(px)},${fmt(py)}`;
    })
    .join(" ");
}

function circles(
  map: ScreenMap,
  points: readonly Point[],
  radius: number,
  fill: string,
  kind: string,
): string {
  return points
    .map((p, i) => {
      const [px, py] = modelToScreen(map, p);
      return (
        `<circle cx="${fmt(px)}" cy="${fmt(py)}" r="${radius}" fill="${fill}" ` +
        `data-kind="${kind}" data-index="${i}"/>`
      );
    })
    .join("\n");
}

export interface CurveView {
  polygon: readonly Point[];
  sigma: number;
  showPolygon: boolean;
  showPath: boolean;
  pathT: number;
  width: number;
  height: number;
}

function nearestIndex(values: readonly number[], target: number): number {
  let best = 0;
  for (let i = 1; i < values.length; i++) {
    if (Math.abs(values[i] - target) < Math.abs(values[best] - target)) best = i;
  }
  return best;
}

export function curveSceneSvg(frame: CurveResponse | null, view: CurveView): string {
  const fitPoints: Point[] = [...view.polygon];
  if (frame !== null) {
    for (const c of frame.curves) fitPoints.push(...c.points);
  }
  const map = fitViewport(fitPoints, view.width, view.height);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${view.width}" height="${view.height}" ` +
      `viewBox="0 0 ${view.width} ${view.height}">`,
  );
  parts.push(`<rect x="0" y="0" width="${view.width}" height="${view.height}" fill="#ffffff"/>`);

  let mainIdx = -1;
  if (frame !== null && frame.curves.length > 0) {
    mainIdx = nearestIndex(frame.curves.map((c) => c.sigma), view.sigma);
    frame.curves.forEach((c, i) => {
      if (i === mainIdx) return;
      parts.push(
        `<polyline class="ghost" points="${polylineAttr(map, c.points)}" ` +
          `fill="none" stroke="${GHOST_COLOR}" stroke-width="1"/>`,
      );
    });
  }
  if (view.showPolygon) {
    parts.push(
      `<polyline class="control-polygon" points="${polylineAttr(map, view.polygon)}" ` +
        `fill="none" stroke="${POLYGON_COLOR}" stroke-width="1" stroke-dasharray="5 4"/>`,
    );
  }
  if (frame !== null && mainIdx >= 0) {
    parts.push(
      `<polyline class="curve" points="${polylineAttr(map, frame.curves[mainIdx].points)}" ` +
        `fill="none" stroke="${CURVE_COLOR}" stroke-width="2"/>`,
    );
    if (view.showPath && frame.curves.length > 1) {
      // The trace of one curve point across sigma; the service samples every
      // sigma on the same t grid, so same-index points line up.
      const ti = nearestIndex(frame.t, view.pathT);
      const trace = [...frame.curves]
        .sort((a, b) => a.sigma - b.sigma)
        .map((c) => c.points[ti]);
      parts.push(
        `<polyline class="point-path" points="${polylineAttr(map, trace)}" ` +
          `fill="none" stroke="${PATH_COLOR}" stroke-width="1.5"/>`,
      );
      parts.push(circles(map, trace, 2.5, PATH_COLOR, "path-dot"));
    }
  }
  if (view.showPolygon) {
    parts.push(circles(map, view.polygon, 5, MARKER_COLOR, "vertex"));
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export interface InterpView {
  dataset: readonly Point[];
  showJumps: boolean;
  width: number;
  height: number;
}

export function hasViolations(frame: InterpResponse): boolean {
  return frame.report.violations.length > 0;
}

export function interpSceneSvg(frame: InterpResponse | null, view: InterpView): string {
  const fitPoints: Point[] = [...view.dataset];
  const showCurve = frame !== null && !hasViolations(frame);
  if (showCurve) {
    for (let i = 0; i < frame.samples.x.length; i++) {
      fitPoints.push([frame.samples.x[i], frame.samples.y[i]]);
    }
  }
  const map = fitViewport(fitPoints, view.width, view.height);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${view.width}" height="${view.height}" ` +
      `viewBox="0 0 ${view.width} ${view.height}">`,
  );
  parts.push(`<rect x="0" y="0" width="${view.width}" height="${view.height}" fill="#ffffff"/>`);
  if (showCurve) {
    const pts = frame.samples.x.map((x, i): Point => [x, frame.samples.y[i]]);
    parts.push(
      `<polyline class="interp-curve" points="${polylineAttr(map, pts)}" ` +
        `fill="none" stroke="${CURVE_COLOR}" stroke-width="2"/>`,
    );
  }
  if (frame !== null && view.showJumps) {
    const jumps = frame.report.continuity.order2 ?? frame.report.continuity.order1 ?? [];
    if (jumps.length > 0) {
      // One bar per interior knot in a strip along the bottom edge, scaled to
      // the largest jump; purely diagnostic.
      const peak = Math.max(...jumps, 1e-300);
      const strip = 0.12 * view.height;
      jumps.forEach((j, i) => {
        const knot = view.dataset[i + 1];
        if (knot === undefined) return;
        const [px] = modelToScreen(map, knot);
        const h = Math.max(1, (j / peak) * strip);
        parts.push(
          `<rect class="jump-bar" x="${fmt(px - 2)}" y="${fmt(view.height - h)}" ` +
            `width="4" height="${fmt(h)}" fill="${PATH_COLOR}"/>`,
        );
      });
    }
  }
  parts.push(circles(map, view.dataset, 4.5, MARKER_COLOR, "knot"));
  parts.push("</svg>");
  return parts.join("\n");
}

function trimNumber(v: number): string {
  return String(Number(v.toPrecision(6)));
}

// Inline annotation for an infeasible parameter: names the parameter and the
// feasible bound the server reported.
export function boundMessage(err: ApiError): string {
  const name = err.field ?? "parameter";
  if (err.bound !== undefined) {
    return `${name} is infeasible, bound ${trimNumber(err.bound)}`;
  }
  return `${name} is infeasible`;
}

export function errorMessage(err: unknown): string {
  if (err instanceof Error) return err.message;
  return String(err);
}

export function reportHtml(frame: InterpResponse): string {
  const rows: string[] = [];
  for (const [name, value] of Object.entries(frame.bounds)) {
    rows.push(`<div>bound ${name} &lt; ${trimNumber(value)}</div>`);
  }
  const cont = frame.report.continuity;
  if (cont.degenerate) {
    rows.push("<div>degenerate at sigma 0: no d/dx continuity defined</div>");
  } else {
    for (const order of ["order1", "order2"] as const) {
      const jumps = cont[order];
      if (jumps === undefined || jumps.length === 0) continue;
      const worst = Math.max(...jumps);
      rows.push(`<div>${order} worst jump ${worst.toExponential(2)}</div>`);
    }
  }
  if (frame.report.violations.length > 0) {
    rows.push(`<div class="violations">violations: ${frame.report.violations.length}</div>`);
  } else {
    rows.push("<div>constraints: all satisfied</div>");
  }
  return rows.join("\n");
}
