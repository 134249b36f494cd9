export type Point = readonly [number, number];

// The 8-point monotone benchmark dataset bundled with the service
// (curvecraft.demo_dataset). Its order-1 feasibility bound is 0.0845.
export const BENCHMARK_DATASET: readonly Point[] = [
  [0.0, 0.5],
  [0.292, 0.572],
  [0.461, 0.613],
  [0.799, 0.69],
  [1.172, 0.763],
  [1.409, 0.804],
  [1.798, 0.858],
  [2.0, 0.881],
];

export const DEFAULT_POLYGON: readonly Point[] = [
  [0, 0],
  [1, 2],
  [3, 2.5],
  [4, 0],
];

export const GHOST_SIGMAS: readonly number[] = [0, 0.25, 0.5, 0.75, 1];

export const DEFAULT_SYSTEM_PARAMS: Record<string, Record<string, number>> = {
  bernstein: { degree: 3 },
  p_bezier: { gamma: 1 },
  lambda_mu: { lambda: 0, mu: 0 },
  yan_cubic: { lambda: 0 },
};

export const DEFAULT_AUX_PARAMS: Record<string, Record<string, number>> = {
  bernstein_tail: { n: 5 },
  trig: { k: 1 },
};
