import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { CoreClient, ServiceError } from "../src/client.js";
import { Session } from "../src/session.js";
import type { MeshJson, Vec2 } from "../src/wire.js";

/**
 * End-to-end checks against the real local service: the UI side of the
 * boundary must see exactly what the headless CLI computes, and a frame
 * round trip for the interactive workload must fit the latency budget.
 */

const PORT = 18000 + (process.pid % 1000);
let service: ChildProcess;
let client: CoreClient;
let stderrTail = "";

async function waitForHealth(): Promise<void> {
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const h = await client.health();
      if (h.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error(`service never came up on :${PORT}\n${stderrTail}`);
    await new Promise((r) => setTimeout(r, 100));
  }
}

beforeAll(async () => {
  client = new CoreClient(`http://127.0.0.1:${PORT}`);
  service = spawn("python3", ["-m", "dualcomplex.service", "--port", String(PORT)], {
    stdio: ["ignore", "ignore", "pipe"],
  });
  service.stderr!.on("data", (chunk: Buffer) => {
    stderrTail = (stderrTail + chunk.toString()).slice(-2000);
  });
  await waitForHealth();
});

afterAll(() => {
  service.kill();
});

function runCli(args: string[]): unknown {
  const res = spawnSync("python3", ["-m", "dualcomplex.cli", ...args], { encoding: "utf8" });
  if (res.status !== 0) throw new Error(`cli exited ${res.status}: ${res.stderr}`);
  return JSON.parse(res.stdout) as unknown;
}

function maxVertexError(a: Vec2[], b: Vec2[]): number {
  expect(a.length).toBe(b.length);
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    worst = Math.max(worst, Math.abs(a[i][0] - b[i][0]), Math.abs(a[i][1] - b[i][1]));
  }
  return worst;
}

describe("boundary wiring", () => {
  it("grid response matches the CLI grid schema exactly", async () => {
    const served = await client.grid(4, 5, [0, 0, 2, 1]);
    const cli = runCli(["grid", "--rows", "4", "--cols", "5", "--rect", "0", "0", "2", "1"]) as MeshJson;
    expect(served).toEqual(cli);
  });

  it("blend midpoint through the boundary equals cmd_blend output", async () => {
    const dcns: [number, number, number, number][] = [
      [1, 0, 0, 0],
      [1, 0, 1, 0],
    ];
    const weights = [0.5, 0.5];
    const served = await client.blend(dcns, weights);

    const dir = mkdtempSync(join(tmpdir(), "dcn2d-ui-"));
    try {
      const file = join(dir, "blend.json");
      writeFileSync(file, JSON.stringify({ dcns, weights }));
      const cli = runCli(["blend", "--input", file]);
      expect(served).toEqual(cli);
      expect(served).toEqual([1, 0, 0.5, 0]);
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  });

  it("echo: identity probes in, rest vertices out, bitwise", async () => {
    const mesh = await client.grid(6, 6);
    const session = new Session(mesh);
    session.placeProbe([0.2, 0.2]);
    session.placeProbe([0.8, 0.5]);
    session.placeProbe([0.4, 0.9]);
    session.setWeights(await client.weights(mesh, session.probes));
    session.enterDeform();
    const res = await client.frame(session.framePayload());
    expect(res.degenerate).toEqual([]);
    expect(res.vertices).toEqual(mesh.vertices);
  });

  it("domain failures surface as typed service errors", async () => {
    // opposite half-turns behind a zero-weight anchor: the hemisphere
    // alignment cannot rescue this sum, so the blend degenerates
    const halfTurns: [number, number, number, number][] = [
      [1, 0, 0, 0],
      [0, 1, 0, 0],
      [0, -1, 0, 0],
    ];
    const w = [0, 0.5, 0.5];
    await expect(client.blend(halfTurns, w)).rejects.toThrowError(ServiceError);
    await expect(client.blend(halfTurns, w)).rejects.toThrow(/DegenerateBlend/);
  });
});

describe("weights through the boundary", () => {
  it("a single probe gets weight 1 on every vertex", async () => {
    const mesh = await client.grid(5, 5);
    const session = new Session(mesh);
    session.placeProbe([0.31, 0.62]);
    const w = await client.weights(mesh, session.probes);
    expect(w.length).toBe(1);
    expect(w[0].every((x) => x === 1)).toBe(true);
  });

  it("a probe sitting on a vertex owns it outright", async () => {
    const mesh = await client.grid(5, 5);
    const session = new Session(mesh);
    session.placeProbe([0, 0]); // vertex 0 of the grid
    session.placeProbe([0.7, 0.7]);
    const w = await client.weights(mesh, session.probes);
    expect(w[0][0]).toBe(1);
    expect(w[1][0]).toBe(0);
  });
});

describe("session replay equivalence", () => {
  it("an exported session replayed via the CLI reproduces the last frame within 1e-9", async () => {
    const mesh = await client.grid(30, 30);
    const session = new Session(mesh);

    // eight probes scattered over the square
    const spots: Vec2[] = [
      [0.15, 0.2],
      [0.5, 0.1],
      [0.85, 0.25],
      [0.1, 0.55],
      [0.9, 0.6],
      [0.25, 0.85],
      [0.6, 0.9],
      [0.5, 0.5],
    ];
    for (const p of spots) expect(session.placeProbe(p)).not.toBeNull();
    session.setWeights(await client.weights(mesh, session.probes));
    session.enterDeform();

    // a scripted editing pass: translate some, twist others
    const ids = session.probes.map((p) => p.id);
    session.dragProbe(ids[0], [0.12, 0.05]);
    session.rotateProbe(ids[1], 0.6);
    session.dragProbe(ids[2], [-0.08, 0.1]);
    session.rotateProbe(ids[2], -0.45);
    session.dragProbe(ids[4], [0.02, -0.11]);
    session.rotateProbe(ids[5], 0.9);
    session.dragProbe(ids[6], [-0.05, -0.04]);
    session.rotateProbe(ids[7], -0.2);
    session.dragProbe(ids[7], [0.07, 0.03]);

    const frame = await client.frame(session.framePayload());
    expect(frame.degenerate).toEqual([]);

    const files = session.exportFiles();
    const dir = mkdtempSync(join(tmpdir(), "dcn2d-ui-"));
    try {
      writeFileSync(join(dir, "mesh.json"), JSON.stringify(files.mesh));
      writeFileSync(join(dir, "probes.json"), JSON.stringify(files.probes));
      writeFileSync(join(dir, "weights.json"), JSON.stringify(files.weights));
      const replayed = runCli([
        "deform",
        "--mesh",
        join(dir, "mesh.json"),
        "--probes",
        join(dir, "probes.json"),
        "--weights",
        join(dir, "weights.json"),
      ]) as MeshJson;
      const err = maxVertexError(frame.vertices, replayed.vertices);
      expect(err).toBeLessThanOrEqual(1e-9);
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  });

  it("imported session files reproduce the same frame", async () => {
    const mesh = await client.grid(8, 8);
    const session = new Session(mesh);
    session.placeProbe([0.3, 0.3]);
    session.placeProbe([0.7, 0.6]);
    session.setWeights(await client.weights(mesh, session.probes));
    session.enterDeform();
    session.dragProbe(session.probes[0].id, [0.2, 0]);
    session.rotateProbe(session.probes[1].id, 0.8);

    const files = session.exportFiles();
    const twin = Session.import(files.mesh, files.probes, files.weights);
    expect(twin.mode).toBe("deform");
    const a = await client.frame(session.framePayload());
    const b = await client.frame(twin.framePayload());
    expect(b.vertices).toEqual(a.vertices);
  });
});

describe("frame budget", () => {
  it("30x30 grid with 8 probes: median frame round trip within 16 ms", async () => {
    const mesh = await client.grid(30, 30);
    const session = new Session(mesh);
    for (let i = 0; i < 8; i++) {
      expect(session.placeProbe([0.1 + 0.1 * i, 0.2 + 0.08 * i])).not.toBeNull();
    }
    session.setWeights(await client.weights(mesh, session.probes));
    session.enterDeform();

    const ids = session.probes.map((p) => p.id);
    let previous: Vec2[] | null = null;
    const samples: number[] = [];
    const frames = 40;
    for (let k = 0; k < frames; k++) {
      // keep the workload honest: every frame moves a probe
      session.dragProbe(ids[k % 8], [0.003, -0.002]);
      session.rotateProbe(ids[(k + 3) % 8], 0.01);
      const t0 = performance.now();
      const res = await client.frame(session.framePayload(previous));
      samples.push(performance.now() - t0);
      previous = res.vertices;
    }
    samples.sort((x, y) => x - y);
    const median = samples[Math.floor(frames / 2)];
    console.log(
      `frame round trip: median ${median.toFixed(2)} ms, ` +
        `p90 ${samples[Math.floor(frames * 0.9)].toFixed(2)} ms over ${frames} frames`,
    );
    expect(median).toBeLessThanOrEqual(16);
  });
});
