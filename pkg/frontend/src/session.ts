import {
  decodeMesh,
  decodeProbes,
  decodeWeights,
  meshBounds,
  type MeshJson,
  type ProbeJson,
  type Vec2,
  type WeightsJson,
} from "./wire.js";

export type Mode = "place" | "deform";

const UNDO_DEPTH = 100;

interface Snapshot {
  mode: Mode;
  probes: ProbeJson[];
  weights: WeightsJson | null;
  weightsStale: boolean;
}

/**
 * Editable deformation session: a rest mesh, a probe list and a weight
 * matrix, plus the place/deform mode switch.
 *
 * Pure state. All geometry the session touches is probe bookkeeping in
 * mesh coordinates; the deformation itself always happens on the other
 * side of the service boundary. Weights are likewise fetched from the
 * service (or painted as raw data), never derived here.
 *
 * Mode rules:
 *  - place mode: probes can be added, removed and repositioned; a probe's
 *    initial and current pose are kept identical.
 *  - deform mode: entered only with probes and fresh weights; initial
 *    poses are frozen and gestures edit current poses only.
 *  - returning to place mode resets current = initial.
 */
export class Session {
  readonly mesh: MeshJson;
  private readonly min: Vec2;
  private readonly max: Vec2;

  private _mode: Mode = "place";
  private _probes: ProbeJson[] = [];
  private _weights: WeightsJson | null = null;
  private _weightsStale = false;
  private nextId = 1;
  private undoStack: Snapshot[] = [];

  /** Bumped on every mutation so the app layer knows to refresh. */
  rev = 0;

  constructor(mesh: MeshJson) {
    this.mesh = mesh;
    const b = meshBounds(mesh);
    this.min = b.min;
    this.max = b.max;
  }

  get mode(): Mode {
    return this._mode;
  }

  get probes(): readonly ProbeJson[] {
    return this._probes;
  }

  get weights(): WeightsJson | null {
    return this._weights;
  }

  get weightsStale(): boolean {
    return this._weightsStale;
  }

  get vertexCount(): number {
    return this.mesh.vertices.length;
  }

  private touch(): void {
    this.rev += 1;
  }

  private probe(id: string | number): ProbeJson {
    const p = this._probes.find((q) => q.id === id);
    if (p === undefined) throw new Error(`no probe ${id}`);
    return p;
  }

  contains(p: Vec2): boolean {
    const eps = 1e-12;
    return (
      p[0] >= this.min[0] - eps && p[0] <= this.max[0] + eps && p[1] >= this.min[1] - eps && p[1] <= this.max[1] + eps
    );
  }

  /**
   * Add a probe at a mesh point with angle 0, initial == current.
   * Clicks outside the mesh are ignored (returns null). Place mode only.
   */
  placeProbe(point: Vec2): ProbeJson | null {
    if (this._mode !== "place") throw new Error("probes are editable in place mode only");
    if (!this.contains(point)) return null;
    const id = `p${this.nextId++}`;
    const probe: ProbeJson = {
      id,
      initial: { center: [point[0], point[1]], angle: 0 },
      current: { center: [point[0], point[1]], angle: 0 },
    };
    this._probes.push(probe);
    this._weightsStale = true;
    this.touch();
    return probe;
  }

  removeProbe(id: string | number): void {
    if (this._mode !== "place") throw new Error("probes are editable in place mode only");
    const i = this._probes.findIndex((q) => q.id === id);
    if (i < 0) throw new Error(`no probe ${id}`);
    this._probes.splice(i, 1);
    this._weightsStale = true;
    this.touch();
  }

  /** Move a probe's placement (both poses) to a new point. Place mode only. */
  repositionProbe(id: string | number, point: Vec2): void {
    if (this._mode !== "place") throw new Error("probes are editable in place mode only");
    if (!this.contains(point)) return;
    const p = this.probe(id);
    p.initial.center = [point[0], point[1]];
    p.current.center = [point[0], point[1]];
    this._weightsStale = true;
    this.touch();
  }

  /** Install a probes x vertices weight matrix (from /weights or a file). */
  setWeights(matrix: unknown): void {
    this._weights = decodeWeights(matrix, this._probes.length, this.vertexCount);
    this._weightsStale = false;
    this.touch();
  }

  /**
   * Brush raw weight into one probe's row around a mesh point. Linear
   * falloff to the radius; clamped at zero. The matrix stays raw data in
   * the weights file schema; normalization is the core's business.
   */
  paintWeight(id: string | number, point: Vec2, radius: number, delta: number): void {
    if (this._mode !== "place") throw new Error("weights are painted in place mode only");
    if (this._weights === null || this._weightsStale) throw new Error("no fresh weights to paint on");
    if (!(radius > 0)) throw new Error("brush radius must be positive");
    const row = this._weights[this._probes.findIndex((q) => q.id === id)];
    if (row === undefined) throw new Error(`no probe ${id}`);
    const r2 = radius * radius;
    this.mesh.vertices.forEach(([x, y], j) => {
      const dx = x - point[0];
      const dy = y - point[1];
      const d2 = dx * dx + dy * dy;
      if (d2 > r2) return;
      const falloff = 1 - Math.sqrt(d2) / radius;
      row[j] = Math.max(0, row[j] + delta * falloff);
    });
    this.touch();
  }

  get canEnterDeform(): boolean {
    return this._probes.length > 0 && this._weights !== null && !this._weightsStale;
  }

  /** Freeze initial poses and start gesturing on current ones. */
  enterDeform(): void {
    if (this._mode === "deform") return;
    if (!this.canEnterDeform) throw new Error("deform mode needs probes and fresh weights");
    for (const p of this._probes) {
      p.initial = { center: [p.current.center[0], p.current.center[1]], angle: p.current.angle };
    }
    this._mode = "deform";
    this.touch();
  }

  /** Back to editing; current poses snap back to the frozen initials. */
  enterPlace(): void {
    if (this._mode === "place") return;
    for (const p of this._probes) {
      p.current = { center: [p.initial.center[0], p.initial.center[1]], angle: p.initial.angle };
    }
    this._mode = "place";
    this.touch();
  }

  /** Translate a probe's current pose. Deform mode only. */
  dragProbe(id: string | number, delta: Vec2): void {
    if (this._mode !== "deform") throw new Error("drag gestures need deform mode");
    const p = this.probe(id);
    p.current.center = [p.current.center[0] + delta[0], p.current.center[1] + delta[1]];
    this.touch();
  }

  /**
   * Rotate a probe's current pose by a small step. The angle accumulates
   * unwrapped so successive twists stay continuous; callers hand in
   * per-move deltas, never absolute angles.
   */
  rotateProbe(id: string | number, deltaAngle: number): void {
    if (this._mode !== "deform") throw new Error("rotate gestures need deform mode");
    const p = this.probe(id);
    p.current.angle += deltaAngle;
    this.touch();
  }

  /** Record the present document; one checkpoint per logical user action. */
  checkpoint(): void {
    this.undoStack.push({
      mode: this._mode,
      probes: structuredClone(this._probes),
      weights: this._weights === null ? null : structuredClone(this._weights),
      weightsStale: this._weightsStale,
    });
    if (this.undoStack.length > UNDO_DEPTH) this.undoStack.shift();
  }

  /** Linear undo; returns false when the stack is empty. */
  undo(): boolean {
    const snap = this.undoStack.pop();
    if (snap === undefined) return false;
    this._mode = snap.mode;
    this._probes = snap.probes;
    this._weights = snap.weights;
    this._weightsStale = snap.weightsStale;
    this.touch();
    return true;
  }

  /** The three CLI-schema files; replayable via `dcn2d deform`. */
  exportFiles(): { mesh: MeshJson; probes: ProbeJson[]; weights: WeightsJson } {
    if (this._weights === null) throw new Error("no weights to export");
    return {
      mesh: structuredClone(this.mesh),
      probes: structuredClone(this._probes),
      weights: structuredClone(this._weights),
    };
  }

  /** Request body for POST /frame: rest vertices in, deformed out. */
  framePayload(previous: Vec2[] | null = null): {
    vertices: Vec2[];
    probes: ProbeJson[];
    weights: WeightsJson;
    previous: Vec2[] | null;
  } {
    if (this._weights === null || this._weightsStale) throw new Error("frame needs fresh weights");
    return {
      vertices: this.mesh.vertices,
      probes: this._probes,
      weights: this._weights,
      previous,
    };
  }

  /**
   * Rebuild a session from the three exported files. Poses import
   * verbatim; a file whose current poses differ from the initials lands
   * in deform mode, otherwise in place mode.
   */
  static import(meshData: unknown, probesData: unknown, weightsData: unknown): Session {
    const mesh = decodeMesh(meshData);
    const session = new Session(mesh);
    session._probes = decodeProbes(probesData);
    session._weights = decodeWeights(weightsData, session._probes.length, mesh.vertices.length);
    for (const p of session._probes) {
      const m = /^p(\d+)$/.exec(String(p.id));
      if (m !== null) session.nextId = Math.max(session.nextId, Number(m[1]) + 1);
    }
    const moved = session._probes.some(
      (p) =>
        p.current.center[0] !== p.initial.center[0] ||
        p.current.center[1] !== p.initial.center[1] ||
        p.current.angle !== p.initial.angle,
    );
    session._mode = moved && session._probes.length > 0 ? "deform" : "place";
    return session;
  }
}
