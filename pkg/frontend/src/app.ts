import { CoreClient, ServiceError } from "./client.js";
import { GestureController } from "./gestures.js";
import { drawMesh, drawProbes, makeCheckerTexture } from "./renderer.js";
import { Session } from "./session.js";
import { Viewport } from "./view.js";
import { meshBounds, type Vec2 } from "./wire.js";

const SERVICE_URL = new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8787";
const GRID_ROWS = 30;
const GRID_COLS = 30;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

class App {
  private readonly client = new CoreClient(SERVICE_URL);
  private readonly canvas = el<HTMLCanvasElement>("canvas");
  private readonly ctx: CanvasRenderingContext2D;
  private view = new Viewport(1, 1);

  private session!: Session;
  private gestures!: GestureController;
  private texture: (CanvasImageSource & { width: number; height: number }) = makeCheckerTexture();

  private positions: Vec2[] = []; // latest deformed vertices (mesh coords)
  private degenerateCount = 0;
  private frameDirty = false;
  private inFlight = false;
  private weightsBusy = false;

  // perf HUD: last boundary round-trip and a smoothed average
  private lastFrameMs = 0;
  private avgFrameMs = 0;

  private brushOn = false;
  private painting = false;

  constructor() {
    const ctx = this.canvas.getContext("2d");
    if (ctx === null) throw new Error("2d context unavailable");
    this.ctx = ctx;
  }

  async start(): Promise<void> {
    try {
      await this.client.health();
    } catch {
      // boundary load failure is a blocking error screen, not a console line
      el<HTMLDivElement>("fatal").hidden = false;
      el<HTMLSpanElement>("fatal-url").textContent = SERVICE_URL;
      return;
    }
    const mesh = await this.client.grid(GRID_ROWS, GRID_COLS);
    this.installSession(new Session(mesh));
    this.bindUi();
    this.resize();
    requestAnimationFrame(() => this.tick());
  }

  private installSession(session: Session): void {
    this.session = session;
    this.gestures = new GestureController(session, this.view);
    this.positions = session.mesh.vertices.map((v) => [v[0], v[1]]);
    this.degenerateCount = 0;
    this.frameDirty = this.session.mode === "deform";
    const b = meshBounds(session.mesh);
    this.view.fit(b.min, b.max);
    if (session.weightsStale || (session.probes.length > 0 && session.weights === null)) void this.refreshWeights();
  }

  private bindUi(): void {
    window.addEventListener("resize", () => this.resize());

    this.canvas.addEventListener("contextmenu", (e) => e.preventDefault());
    this.canvas.addEventListener("pointerdown", (e) => {
      this.canvas.setPointerCapture(e.pointerId);
      if (this.brushOn && this.session.mode === "place") {
        this.startPaint(e);
        return;
      }
      this.gestures.pointerDown(this.pointer(e));
      this.afterMutation();
    });
    this.canvas.addEventListener("pointermove", (e) => {
      if (this.painting) {
        this.paintAt(e);
        return;
      }
      this.gestures.pointerMove(this.pointer(e));
      this.afterMutation();
    });
    const up = (e: PointerEvent): void => {
      if (this.painting) {
        this.painting = false;
        return;
      }
      this.gestures.pointerUp(this.pointer(e));
      this.afterMutation();
    };
    this.canvas.addEventListener("pointerup", up);
    this.canvas.addEventListener("pointercancel", up);

    el<HTMLButtonElement>("mode").addEventListener("click", () => this.toggleMode());
    el<HTMLButtonElement>("undo").addEventListener("click", () => {
      if (this.session.undo()) this.afterMutation(true);
    });
    window.addEventListener("keydown", (e) => {
      if ((e.ctrlKey || e.metaKey) && e.key === "z") {
        e.preventDefault();
        if (this.session.undo()) this.afterMutation(true);
      }
    });
    el<HTMLButtonElement>("delete").addEventListener("click", () => {
      const id = this.gestures.selected;
      if (id === null || this.session.mode !== "place") return;
      this.session.checkpoint();
      this.session.removeProbe(id);
      this.gestures.selected = null;
      this.afterMutation(true);
    });
    el<HTMLButtonElement>("rebind").addEventListener("click", () => void this.refreshWeights(true));
    el<HTMLInputElement>("brush").addEventListener("change", (e) => {
      this.brushOn = (e.target as HTMLInputElement).checked;
    });

    el<HTMLInputElement>("image-file").addEventListener("change", async (e) => {
      const file = (e.target as HTMLInputElement).files?.[0];
      if (file === undefined) return;
      this.texture = await createImageBitmap(file);
      this.draw();
    });

    el<HTMLButtonElement>("export").addEventListener("click", () => this.exportSession());
    el<HTMLInputElement>("import-files").addEventListener("change", (e) => {
      void this.importSession((e.target as HTMLInputElement).files);
    });
  }

  private pointer(e: PointerEvent): { id: number; x: number; y: number; button: number; altKey: boolean } {
    const r = this.canvas.getBoundingClientRect();
    return { id: e.pointerId, x: e.clientX - r.left, y: e.clientY - r.top, button: e.button, altKey: e.altKey };
  }

  private startPaint(e: PointerEvent): void {
    const id = this.gestures.selected;
    if (id === null || this.session.weights === null || this.session.weightsStale) return;
    this.painting = true;
    this.session.checkpoint();
    this.paintAt(e);
  }

  private paintAt(e: PointerEvent): void {
    const id = this.gestures.selected;
    if (id === null) return;
    const p = this.pointer(e);
    const radius = this.view.lengthToMesh(Number(el<HTMLInputElement>("brush-radius").value));
    const delta = e.shiftKey ? -0.5 : 0.5;
    this.session.paintWeight(id, this.view.toMesh([p.x, p.y]), radius, delta);
    this.afterMutation();
  }

  private toggleMode(): void {
    if (this.session.mode === "place") {
      if (!this.session.canEnterDeform) return;
      this.session.enterDeform();
      this.frameDirty = true;
    } else {
      this.session.enterPlace();
      this.positions = this.session.mesh.vertices.map((v) => [v[0], v[1]]);
      this.degenerateCount = 0;
    }
    this.afterMutation();
  }

  private afterMutation(redraw = false): void {
    if (this.session.mode === "deform") this.frameDirty = true;
    if (this.session.weightsStale && !this.weightsBusy) void this.refreshWeights();
    this.updateHud();
    if (redraw || this.session.mode === "place") this.draw();
  }

  private async refreshWeights(force = false): Promise<void> {
    if (this.session.probes.length === 0) return;
    if (!force && !this.session.weightsStale && this.session.weights !== null) return;
    this.weightsBusy = true;
    try {
      const w = await this.client.weights(this.session.mesh, this.session.probes);
      this.session.setWeights(w);
    } catch (err) {
      this.setStatus(err instanceof Error ? err.message : String(err));
    } finally {
      this.weightsBusy = false;
    }
    this.updateHud();
    this.draw();
  }

  /** One boundary call per frame, skipped while a previous one is in flight. */
  private tick(): void {
    if (this.frameDirty && !this.inFlight && this.session.mode === "deform" && !this.session.weightsStale) {
      this.frameDirty = false;
      this.inFlight = true;
      const t0 = performance.now();
      this.client
        .frame(this.session.framePayload(this.positions))
        .then((res) => {
          this.positions = res.vertices;
          this.degenerateCount = res.degenerate.length;
          this.lastFrameMs = performance.now() - t0;
          this.avgFrameMs = this.avgFrameMs === 0 ? this.lastFrameMs : 0.9 * this.avgFrameMs + 0.1 * this.lastFrameMs;
        })
        .catch((err) => {
          if (err instanceof ServiceError) this.setStatus(err.message);
          else this.setStatus(`boundary call failed: ${err}`);
        })
        .finally(() => {
          this.inFlight = false;
          this.updateHud();
          this.draw();
        });
    }
    requestAnimationFrame(() => this.tick());
  }

  private resize(): void {
    const holder = el<HTMLDivElement>("stage");
    this.canvas.width = holder.clientWidth;
    this.canvas.height = holder.clientHeight;
    this.view.width = this.canvas.width;
    this.view.height = this.canvas.height;
    const b = meshBounds(this.session.mesh);
    this.view.fit(b.min, b.max);
    this.draw();
  }

  private draw(): void {
    const ctx = this.ctx;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.fillStyle = "#16202e";
    ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    drawMesh(ctx, this.texture, this.session.mesh, this.positions, this.view, this.session.mode === "place");
    drawProbes(ctx, this.session, this.gestures, this.view);
  }

  private setStatus(text: string): void {
    el<HTMLSpanElement>("status").textContent = text;
  }

  private updateHud(): void {
    el<HTMLButtonElement>("mode").textContent = this.session.mode === "place" ? "start deforming" : "back to placing";
    el<HTMLButtonElement>("mode").disabled = this.session.mode === "place" && !this.session.canEnterDeform;
    el<HTMLSpanElement>("probe-count").textContent = `${this.session.probes.length} probe(s)`;
    const badge = el<HTMLSpanElement>("degenerate");
    badge.hidden = this.degenerateCount === 0;
    badge.textContent = `degenerate blend at ${this.degenerateCount} vertex(es); holding previous positions`;
    el<HTMLSpanElement>("perf").textContent =
      this.session.mode === "deform" ? `frame ${this.lastFrameMs.toFixed(1)} ms (avg ${this.avgFrameMs.toFixed(1)})` : "";
    this.setStatus(this.session.weightsStale ? "recomputing weights…" : "");
  }

  private exportSession(): void {
    let files;
    try {
      files = this.session.exportFiles();
    } catch (err) {
      this.setStatus(err instanceof Error ? err.message : String(err));
      return;
    }
    const save = (name: string, data: unknown): void => {
      const blob = new Blob([JSON.stringify(data)], { type: "application/json" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = name;
      a.click();
      URL.revokeObjectURL(a.href);
    };
    save("mesh.json", files.mesh);
    save("probes.json", files.probes);
    save("weights.json", files.weights);
  }

  /** Expects the three exported files (by name) in one multi-select. */
  private async importSession(list: FileList | null): Promise<void> {
    if (list === null || list.length === 0) return;
    const byName = new Map<string, File>();
    for (const f of Array.from(list)) byName.set(f.name, f);
    const read = async (name: string): Promise<unknown> => {
      const f = byName.get(name);
      if (f === undefined) throw new Error(`import needs ${name}`);
      return JSON.parse(await f.text()) as unknown;
    };
    try {
      const session = Session.import(await read("mesh.json"), await read("probes.json"), await read("weights.json"));
      this.installSession(session);
      this.updateHud();
      this.draw();
    } catch (err) {
      this.setStatus(err instanceof Error ? err.message : String(err));
    }
  }
}

void new App().start();
