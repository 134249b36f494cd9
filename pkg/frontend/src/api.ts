// Typed client for the curvecraft HTTP service. All curve mathematics stays
// on the server; this module only moves JSON.

export interface ParamSpec {
  name: string;
  kind: "int" | "float" | "odd_int";
  min?: number;
  max?: number;
}

export interface FamilyInfo {
  family: string;
  monotonicity_preserving: boolean;
  params: ParamSpec[];
}

export interface AuxInfo {
  aux: string;
  increasing: boolean | string;
  c2_compatible: boolean | string;
  params: ParamSpec[];
}

export type SystemDescriptor = { family: string } & Record<string, unknown>;
export type AuxDescriptor = { aux: string } & Record<string, unknown>;

export interface CurveRequest {
  basis: { system: SystemDescriptor; aux: AuxDescriptor; sigma: number };
  polygon: number[][];
  samples?: number;
  sigmas?: number[];
}

export interface CurveResponse {
  t: number[];
  curves: { sigma: number; points: [number, number][] }[];
}

export interface InterpRequest {
  dataset: number[][];
  mode: "c1" | "c2";
  solution_strategy?: "sol1" | "appendix_c" | "remark";
  s?: number;
  zeta?: number;
  eta?: number;
  sigma: number;
  aux?: AuxDescriptor;
  samples?: number;
}

export interface InterpReport {
  bounds: Record<string, number>;
  violations: unknown[];
  continuity: { order1?: number[]; order2?: number[]; degenerate?: boolean };
}

export interface InterpResponse {
  solution: Record<string, unknown>;
  bounds: Record<string, number>;
  samples: { x: number[]; y: number[] };
  report: InterpReport;
}

// Structured error from the service: {code, field, message} plus the violated
// bound on 422 responses.
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly field?: string,
    readonly bound?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

// Transport-level failure (server down, connection reset). Retryable.
export class NetworkFailure extends Error {
  constructor(message: string, override readonly cause?: unknown) {
    super(message);
    this.name = "NetworkFailure";
  }
}

export function isRetryable(err: unknown): boolean {
  return err instanceof NetworkFailure;
}

export class StudioApi {
  constructor(readonly base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path, init);
    } catch (err) {
      throw new NetworkFailure(`cannot reach ${this.base}`, err);
    }
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      if (resp.ok) throw new NetworkFailure("malformed response body");
    }
    if (!resp.ok) {
      const e = (body ?? {}) as Record<string, unknown>;
      throw new ApiError(
        resp.status,
        typeof e.code === "string" ? e.code : "http_error",
        typeof e.message === "string" ? e.message : `HTTP ${resp.status}`,
        typeof e.field === "string" ? e.field : undefined,
        typeof e.bound === "number" ? e.bound : undefined,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async getBases(): Promise<FamilyInfo[]> {
    const doc = await this.request<{ families: FamilyInfo[] }>("/api/bases");
    return doc.families;
  }

  async getAux(): Promise<AuxInfo[]> {
    const doc = await this.request<{ aux: AuxInfo[] }>("/api/aux");
    return doc.aux;
  }

  postCurve(body: CurveRequest): Promise<CurveResponse> {
    return this.post<CurveResponse>("/api/curve", body);
  }

  postInterpolate(body: InterpRequest): Promise<InterpResponse> {
    return this.post<InterpResponse>("/api/interpolate", body);
  }
}

export const DEFAULT_SERVICE = "http://127.0.0.1:8720";

// The page is usually opened from a file or a static host while the service
// listens on its own port, so the base is explicit: ?api=http://host:port
// overrides, otherwise the default local service address.
export function apiBaseFromLocation(loc: { search: string }): string {
  const override = new URLSearchParams(loc.search).get("api");
  return override ?? DEFAULT_SERVICE;
}
