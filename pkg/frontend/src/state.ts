import type {
  AuxDescriptor,
  AuxInfo,
  CurveRequest,
  FamilyInfo,
  InterpRequest,
  ParamSpec,
  SystemDescriptor,
} from "./api.js";
import {
  DEFAULT_AUX_PARAMS,
  DEFAULT_POLYGON,
  DEFAULT_SYSTEM_PARAMS,
  GHOST_SIGMAS,
  BENCHMARK_DATASET,
  type Point,
} from "./presets.js";

export type Mode = "curve" | "interp";
export type InterpMode = "c1" | "c2";
export type Strategy = "sol1" | "appendix_c" | "remark";

export interface Catalog {
  families: FamilyInfo[];
  aux: AuxInfo[];
}

export interface InterpSettings {
  readonly mode: InterpMode;
  readonly strategy: Strategy;
  readonly s: number;
  readonly zeta: number;
  readonly eta: number;
  readonly auxAuto: boolean;
}

export interface DisplayToggles {
  readonly polygon: boolean;
  readonly ghosts: boolean;
  readonly path: boolean;
  readonly jumps: boolean;
}

export interface StudioState {
  readonly catalog: Catalog | null;
  readonly mode: Mode;
  readonly family: string;
  readonly systemParams: Readonly<Record<string, number>>;
  readonly auxName: string;
  readonly auxParams: Readonly<Record<string, number>>;
  readonly sigma: number;
  readonly polygon: readonly Point[];
  readonly dataset: readonly Point[];
  readonly interp: InterpSettings;
  readonly display: DisplayToggles;
  readonly pathT: number;
}

export type Action =
  | { kind: "catalog"; families: FamilyInfo[]; aux: AuxInfo[] }
  | { kind: "mode"; mode: Mode }
  | { kind: "family"; family: string }
  | { kind: "systemParam"; name: string; value: number }
  | { kind: "aux"; name: string }
  | { kind: "auxParam"; name: string; value: number }
  | { kind: "sigma"; value: number }
  | { kind: "dragVertex"; index: number; x: number; y: number }
  | { kind: "dragKnot"; index: number; x: number; f: number }
  | { kind: "interpMode"; mode: InterpMode }
  | { kind: "strategy"; strategy: Strategy }
  | { kind: "interpParam"; name: "s" | "zeta" | "eta"; value: number }
  | { kind: "auxAuto"; value: boolean }
  | { kind: "toggle"; name: keyof DisplayToggles }
  | { kind: "pathT"; value: number }
  | { kind: "preset"; name: "benchmark" };

export function initialState(): StudioState {
  return {
    catalog: null,
    mode: "curve",
    family: "bernstein",
    systemParams: { ...DEFAULT_SYSTEM_PARAMS.bernstein },
    auxName: "cubic",
    auxParams: {},
    sigma: 0.5,
    polygon: DEFAULT_POLYGON,
    dataset: BENCHMARK_DATASET,
    interp: { mode: "c1", strategy: "sol1", s: 0.05, zeta: 0.02, eta: 0.003, auxAuto: true },
    display: { polygon: true, ghosts: false, path: false, jumps: false },
    pathT: 0.5,
  };
}

function clampToSpec(spec: ParamSpec, value: number): number {
  let v = value;
  if (spec.kind === "int" || spec.kind === "odd_int") v = Math.round(v);
  if (spec.kind === "odd_int" && v % 2 === 0) v += v < value ? 1 : -1;
  if (spec.min !== undefined && v < spec.min) v = spec.min;
  if (spec.max !== undefined && v > spec.max) v = spec.max;
  if (spec.kind === "odd_int" && v % 2 === 0) v += spec.min !== undefined && v <= spec.min ? 1 : -1;
  return v;
}

function paramSpecs(state: StudioState, which: "system" | "aux"): ParamSpec[] {
  if (state.catalog === null) return [];
  if (which === "system") {
    return state.catalog.families.find((f) => f.family === state.family)?.params ?? [];
  }
  return state.catalog.aux.find((a) => a.aux === state.auxName)?.params ?? [];
}

function clampParams(
  params: Record<string, number>,
  specs: ParamSpec[],
): Record<string, number> {
  const out: Record<string, number> = {};
  for (const spec of specs) {
    const v = params[spec.name];
    out[spec.name] = clampToSpec(spec, v ?? spec.min ?? 0);
  }
  return out;
}

const clamp01 = (v: number) => Math.min(1, Math.max(0, v));

export function reduce(state: StudioState, action: Action): StudioState {
  switch (action.kind) {
    case "catalog": {
      const catalog = { families: action.families, aux: action.aux };
      const next = { ...state, catalog };
      return {
        ...next,
        systemParams: clampParams({ ...state.systemParams }, paramSpecs(next, "system")),
        auxParams: clampParams({ ...state.auxParams }, paramSpecs(next, "aux")),
      };
    }
    case "mode":
      return action.mode === state.mode ? state : { ...state, mode: action.mode };
    case "family": {
      if (state.catalog !== null && !state.catalog.families.some((f) => f.family === action.family)) {
        return state;
      }
      const next = { ...state, family: action.family, systemParams: { ...(DEFAULT_SYSTEM_PARAMS[action.family] ?? {}) } };
      return { ...next, systemParams: clampParams({ ...next.systemParams }, paramSpecs(next, "system")) };
    }
    case "systemParam": {
      const spec = paramSpecs(state, "system").find((p) => p.name === action.name);
      if (spec === undefined) return state;
      return {
        ...state,
        systemParams: { ...state.systemParams, [action.name]: clampToSpec(spec, action.value) },
      };
    }
    case "aux": {
      if (state.catalog !== null && !state.catalog.aux.some((a) => a.aux === action.name)) {
        return state;
      }
      const next = { ...state, auxName: action.name, auxParams: { ...(DEFAULT_AUX_PARAMS[action.name] ?? {}) } };
      return { ...next, auxParams: clampParams({ ...next.auxParams }, paramSpecs(next, "aux")) };
    }
    case "auxParam": {
      const spec = paramSpecs(state, "aux").find((p) => p.name === action.name);
      if (spec === undefined) return state;
      return {
        ...state,
        auxParams: { ...state.auxParams, [action.name]: clampToSpec(spec, action.value) },
      };
    }
    case "sigma":
      return { ...state, sigma: clamp01(action.value) };
    case "dragVertex": {
      if (action.index < 0 || action.index >= state.polygon.length) return state;
      const polygon = state.polygon.map((p, i) =>
        i === action.index ? ([action.x, action.y] as Point) : p,
      );
      return { ...state, polygon };
    }
    case "dragKnot": {
      const pts = state.dataset;
      const i = action.index;
      if (i < 0 || i >= pts.length) return state;
      const span = pts[pts.length - 1][0] - pts[0][0] || 1;
      const gap = 1e-3 * span;
      let x = action.x;
      if (i > 0) x = Math.max(x, pts[i - 1][0] + gap);
      if (i < pts.length - 1) x = Math.min(x, pts[i + 1][0] - gap);
      if (i > 0 && x <= pts[i - 1][0]) return state; // no room: block the drag
      if (i < pts.length - 1 && x >= pts[i + 1][0]) return state;
      let f = action.f;
      if (i > 0) f = Math.max(f, pts[i - 1][1]);
      if (i < pts.length - 1) f = Math.min(f, pts[i + 1][1]);
      const dataset = pts.map((p, j) => (j === i ? ([x, f] as Point) : p));
      return { ...state, dataset };
    }
    case "interpMode": {
      if (action.mode === state.interp.mode) return state;
      const strategy: Strategy =
        action.mode === "c1" ? "sol1" : state.interp.strategy === "sol1" ? "appendix_c" : state.interp.strategy;
      return { ...state, interp: { ...state.interp, mode: action.mode, strategy } };
    }
    case "strategy": {
      const legal: Strategy[] = state.interp.mode === "c1" ? ["sol1"] : ["appendix_c", "remark"];
      if (!legal.includes(action.strategy)) return state;
      return { ...state, interp: { ...state.interp, strategy: action.strategy } };
    }
    case "interpParam": {
      const value = Math.max(1e-6, action.value);
      return { ...state, interp: { ...state.interp, [action.name]: value } };
    }
    case "auxAuto":
      return { ...state, interp: { ...state.interp, auxAuto: action.value } };
    case "toggle":
      return {
        ...state,
        display: { ...state.display, [action.name]: !state.display[action.name] },
      };
    case "pathT":
      return { ...state, pathT: clamp01(action.value) };
    case "preset":
      return { ...state, mode: "interp", dataset: BENCHMARK_DATASET };
  }
}

export function wireSystem(state: StudioState): SystemDescriptor {
  return { family: state.family, ...state.systemParams };
}

export function wireAux(state: StudioState): AuxDescriptor {
  return { aux: state.auxName, ...state.auxParams };
}

export const CURVE_SAMPLES = 201;
export const INTERP_SAMPLES = 501;

export function curvePayload(state: StudioState, samples = CURVE_SAMPLES): CurveRequest {
  const body: CurveRequest = {
    basis: { system: wireSystem(state), aux: wireAux(state), sigma: state.sigma },
    polygon: state.polygon.map((p) => [p[0], p[1]]),
    samples,
  };
  if (state.display.ghosts || state.display.path) {
    const sigmas = new Set([...GHOST_SIGMAS, state.sigma]);
    body.sigmas = Array.from(sigmas).sort((a, b) => a - b);
  }
  return body;
}

export function interpPayload(state: StudioState, samples = INTERP_SAMPLES): InterpRequest {
  const body: InterpRequest = {
    dataset: state.dataset.map((p) => [p[0], p[1]]),
    mode: state.interp.mode,
    solution_strategy: state.interp.strategy,
    sigma: state.sigma,
    samples,
  };
  if (state.interp.strategy === "remark") {
    body.zeta = state.interp.zeta;
    body.eta = state.interp.eta;
  } else {
    body.s = state.interp.s;
  }
  if (!state.interp.auxAuto) body.aux = wireAux(state);
  return body;
}

// Cache identity for the request channel: two states that serialize to the
// same payload need no second request.
export function stateKey(state: StudioState): string {
  const body = state.mode === "curve" ? curvePayload(state) : interpPayload(state);
  return state.mode + ":" + JSON.stringify(body);
}
