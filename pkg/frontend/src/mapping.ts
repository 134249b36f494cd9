import type { Point } from "./presets.js";

// Model-to-screen mapping is the only geometry the client computes itself;
// every curve point comes from the server.

export interface ScreenMap {
  readonly x0: number;
  readonly y0: number;
  readonly sx: number;
  readonly sy: number;
  readonly width: number;
  readonly height: number;
  readonly margin: number;
}

export function fitViewport(
  points: Iterable<Point>,
  width: number,
  height: number,
  margin = 40,
): ScreenMap {
  let x0 = Infinity;
  let x1 = -Infinity;
  let y0 = Infinity;
  let y1 = -Infinity;
  for (const [x, y] of points) {
    if (x < x0) x0 = x;
    if (x > x1) x1 = x;
    if (y < y0) y0 = y;
    if (y > y1) y1 = y;
  }
  if (!Number.isFinite(x0)) {
    x0 = 0;
    x1 = 1;
    y0 = 0;
    y1 = 1;
  }
  // Degenerate extents get padded so a flat dataset still fills the frame.
  if (x1 - x0 === 0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 === 0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const sx = (width - 2 * margin) / (x1 - x0);
  const sy = (height - 2 * margin) / (y1 - y0);
  return { x0, y0, sx, sy, width, height, margin };
}

export function modelToScreen(map: ScreenMap, p: Point): [number, number] {
  const px = map.margin + (p[0] - map.x0) * map.sx;
  const py = map.height - map.margin - (p[1] - map.y0) * map.sy;
  return [px, py];
}

export function screenToModel(map: ScreenMap, px: number, py: number): [number, number] {
  const x = map.x0 + (px - map.margin) / map.sx;
  const y = map.y0 + (map.height - map.margin - py) / map.sy;
  return [x, y];
}
