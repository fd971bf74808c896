/**
 * Wire schemas shared with the dcn2d CLI and local service.
 *
 * Everything the UI persists or sends over the boundary is one of these
 * shapes, so a session exported here can be replayed headlessly with
 * `dcn2d deform --mesh mesh.json --probes probes.json --weights weights.json`.
 */

export type Vec2 = [number, number];

/** Flat unit DCN: [p0.re, p0.im, p1.re, p1.im]. Opaque to the UI. */
export type FlatDcn = [number, number, number, number];

export interface MeshJson {
  vertices: Vec2[];
  triangles: [number, number, number][];
  uv: Vec2[];
}

export interface PoseJson {
  center: Vec2;
  angle: number;
}

export interface ProbeJson {
  id: string | number;
  initial: PoseJson;
  current: PoseJson;
}

/** Dense row-major weight matrix, probes x vertices. */
export type WeightsJson = number[][];

function isVec2(x: unknown): x is Vec2 {
  return (
    Array.isArray(x) &&
    x.length === 2 &&
    typeof x[0] === "number" &&
    typeof x[1] === "number" &&
    Number.isFinite(x[0]) &&
    Number.isFinite(x[1])
  );
}

function fail(what: string): never {
  throw new Error(`malformed ${what}`);
}

export function decodeMesh(data: unknown): MeshJson {
  const d = data as MeshJson;
  if (typeof d !== "object" || d === null) fail("mesh: not an object");
  if (!Array.isArray(d.vertices) || !d.vertices.every(isVec2)) fail("mesh: vertices");
  if (!Array.isArray(d.uv) || !d.uv.every(isVec2)) fail("mesh: uv");
  if (d.uv.length !== d.vertices.length) fail("mesh: uv length");
  if (
    !Array.isArray(d.triangles) ||
    !d.triangles.every(
      (t) => Array.isArray(t) && t.length === 3 && t.every((i) => Number.isInteger(i) && i >= 0 && i < d.vertices.length),
    )
  ) {
    fail("mesh: triangles");
  }
  return { vertices: d.vertices, triangles: d.triangles, uv: d.uv };
}

function decodePose(x: unknown, what: string): PoseJson {
  const p = x as PoseJson;
  if (typeof p !== "object" || p === null || !isVec2(p.center) || typeof p.angle !== "number" || !Number.isFinite(p.angle)) {
    fail(what);
  }
  return { center: [p.center[0], p.center[1]], angle: p.angle };
}

export function decodeProbes(data: unknown): ProbeJson[] {
  if (!Array.isArray(data)) fail("probes: not a list");
  return data.map((x, i) => {
    const d = x as ProbeJson;
    if (typeof d !== "object" || d === null) fail(`probes[${i}]`);
    if (typeof d.id !== "string" && typeof d.id !== "number") fail(`probes[${i}].id`);
    return {
      id: d.id,
      initial: decodePose(d.initial, `probes[${i}].initial`),
      current: decodePose(d.current, `probes[${i}].current`),
    };
  });
}

export function decodeWeights(data: unknown, nProbes: number, nVertices: number): WeightsJson {
  if (!Array.isArray(data) || data.length !== nProbes) fail(`weights: expected ${nProbes} rows`);
  return data.map((row, i) => {
    if (!Array.isArray(row) || row.length !== nVertices) fail(`weights[${i}]: expected ${nVertices} columns`);
    if (!row.every((w) => typeof w === "number" && Number.isFinite(w) && w >= 0)) fail(`weights[${i}]: nonneg finite`);
    return row.slice();
  });
}

export function meshBounds(mesh: MeshJson): { min: Vec2; max: Vec2 } {
  let minX = Infinity,
    minY = Infinity,
    maxX = -Infinity,
    maxY = -Infinity;
  for (const [x, y] of mesh.vertices) {
    if (x < minX) minX = x;
    if (y < minY) minY = y;
    if (x > maxX) maxX = x;
    if (y > maxY) maxY = y;
  }
  return { min: [minX, minY], max: [maxX, maxY] };
}
