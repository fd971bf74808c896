import type { FlatDcn, MeshJson, ProbeJson, Vec2, WeightsJson } from "./wire.js";

/** Domain failure reported by the service (HTTP 422 with a detail string). */
export class ServiceError extends Error {
  constructor(
    public readonly errorClass: string,
    detail: string,
  ) {
    super(detail);
    this.name = "ServiceError";
  }
}

export interface FrameResult {
  vertices: Vec2[];
  degenerate: number[];
  probe_dcns: FlatDcn[];
}

/**
 * Thin typed wrapper over the local dcn2d service. One method per
 * endpoint, JSON in and out; no numeric work happens on this side of
 * the wall.
 */
export class CoreClient {
  constructor(public readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (res.status === 422) {
      const payload = (await res.json()) as { detail?: unknown };
      const detail = typeof payload.detail === "string" ? payload.detail : JSON.stringify(payload.detail);
      const colon = detail.indexOf(":");
      throw new ServiceError(colon > 0 ? detail.slice(0, colon) : "DomainError", detail);
    }
    if (!res.ok) throw new Error(`${path}: HTTP ${res.status}`);
    return (await res.json()) as T;
  }

  async health(): Promise<{ ok: boolean; version: string }> {
    const res = await fetch(this.baseUrl + "/health");
    if (!res.ok) throw new Error(`/health: HTTP ${res.status}`);
    return (await res.json()) as { ok: boolean; version: string };
  }

  grid(rows: number, cols: number, rect: [number, number, number, number] = [0, 0, 1, 1]): Promise<MeshJson> {
    return this.post<MeshJson>("/grid", { rows, cols, rect });
  }

  async probeDcns(probes: readonly ProbeJson[]): Promise<FlatDcn[]> {
    const out = await this.post<{ dcns: FlatDcn[] }>("/probe-dcns", { probes });
    return out.dcns;
  }

  async weights(mesh: MeshJson, probes: readonly ProbeJson[], alpha?: number, eps?: number): Promise<WeightsJson> {
    const body: Record<string, unknown> = { mesh, probes };
    if (alpha !== undefined) body.alpha = alpha;
    if (eps !== undefined) body.eps = eps;
    const out = await this.post<{ weights: WeightsJson }>("/weights", body);
    return out.weights;
  }

  async blend(dcns: FlatDcn[], weights: number[]): Promise<FlatDcn> {
    const out = await this.post<{ dcn: FlatDcn }>("/blend", { dcns, weights });
    return out.dcn;
  }

  async deform(mesh: MeshJson, probes: readonly ProbeJson[], weights: WeightsJson | null = null): Promise<Vec2[]> {
    const body: Record<string, unknown> = { mesh, probes };
    if (weights !== null) body.weights = weights;
    const out = await this.post<{ vertices: Vec2[] }>("/deform", body);
    return out.vertices;
  }

  frame(payload: {
    vertices: Vec2[];
    probes: readonly ProbeJson[];
    weights: WeightsJson;
    previous: Vec2[] | null;
  }): Promise<FrameResult> {
    return this.post<FrameResult>("/frame", payload);
  }
}
