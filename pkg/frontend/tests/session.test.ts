import { describe, expect, it } from "vitest";
import { Session } from "../src/session.js";
import type { MeshJson } from "../src/wire.js";

function unitSquare(): MeshJson {
  return {
    vertices: [
      [0, 0],
      [1, 0],
      [0, 1],
      [1, 1],
    ],
    triangles: [
      [0, 1, 2],
      [1, 3, 2],
    ],
    uv: [
      [0, 0],
      [1, 0],
      [0, 1],
      [1, 1],
    ],
  };
}

function ones(rows: number, cols: number): number[][] {
  return Array.from({ length: rows }, () => Array.from({ length: cols }, () => 1));
}

describe("probe placement", () => {
  it("adds a probe with angle 0 and initial == current", () => {
    const s = new Session(unitSquare());
    const p = s.placeProbe([0.25, 0.5]);
    expect(p).not.toBeNull();
    expect(p!.initial).toEqual({ center: [0.25, 0.5], angle: 0 });
    expect(p!.current).toEqual({ center: [0.25, 0.5], angle: 0 });
    expect(s.weightsStale).toBe(true);
  });

  it("ignores clicks outside the mesh", () => {
    const s = new Session(unitSquare());
    expect(s.placeProbe([1.5, 0.5])).toBeNull();
    expect(s.placeProbe([0.5, -0.1])).toBeNull();
    expect(s.probes.length).toBe(0);
    // boundary points count as inside
    expect(s.placeProbe([1, 1])).not.toBeNull();
  });

  it("reposition moves both poses and goes stale", () => {
    const s = new Session(unitSquare());
    const p = s.placeProbe([0.2, 0.2])!;
    s.setWeights(ones(1, 4));
    s.repositionProbe(p.id, [0.8, 0.6]);
    expect(p.initial.center).toEqual([0.8, 0.6]);
    expect(p.current.center).toEqual([0.8, 0.6]);
    expect(s.weightsStale).toBe(true);
  });

  it("removing the only probe disables deform mode", () => {
    const s = new Session(unitSquare());
    const p = s.placeProbe([0.5, 0.5])!;
    s.setWeights(ones(1, 4));
    expect(s.canEnterDeform).toBe(true);
    s.removeProbe(p.id);
    expect(s.canEnterDeform).toBe(false);
  });
});

describe("mode switch", () => {
  function ready(): Session {
    const s = new Session(unitSquare());
    s.placeProbe([0.5, 0.5]);
    s.setWeights(ones(1, 4));
    return s;
  }

  it("needs probes and fresh weights to enter deform mode", () => {
    const s = new Session(unitSquare());
    expect(s.canEnterDeform).toBe(false);
    expect(() => s.enterDeform()).toThrow();
    s.placeProbe([0.5, 0.5]);
    expect(s.canEnterDeform).toBe(false); // weights stale
    s.setWeights(ones(1, 4));
    expect(s.canEnterDeform).toBe(true);
  });

  it("freezes initial poses on entering deform mode", () => {
    const s = ready();
    s.enterDeform();
    const p = s.probes[0];
    s.dragProbe(p.id, [0.1, 0.2]);
    s.rotateProbe(p.id, 0.7);
    expect(p.initial).toEqual({ center: [0.5, 0.5], angle: 0 });
    expect(p.current.center[0]).toBeCloseTo(0.6, 12);
    expect(p.current.center[1]).toBeCloseTo(0.7, 12);
    expect(p.current.angle).toBeCloseTo(0.7, 12);
  });

  it("returning to place mode resets current = initial", () => {
    const s = ready();
    s.enterDeform();
    const p = s.probes[0];
    s.dragProbe(p.id, [0.3, 0]);
    s.enterPlace();
    expect(p.current).toEqual(p.initial);
  });

  it("probes are editable only in place mode", () => {
    const s = ready();
    s.enterDeform();
    expect(() => s.placeProbe([0.1, 0.1])).toThrow(/place mode/);
    expect(() => s.removeProbe(s.probes[0].id)).toThrow(/place mode/);
    expect(() => s.repositionProbe(s.probes[0].id, [0.1, 0.1])).toThrow(/place mode/);
  });

  it("drag and rotate gestures need deform mode", () => {
    const s = ready();
    expect(() => s.dragProbe(s.probes[0].id, [0.1, 0])).toThrow(/deform mode/);
    expect(() => s.rotateProbe(s.probes[0].id, 0.1)).toThrow(/deform mode/);
  });

  it("accumulates rotation unwrapped past a full turn", () => {
    const s = ready();
    s.enterDeform();
    const id = s.probes[0].id;
    for (let i = 0; i < 3; i++) s.rotateProbe(id, Math.PI);
    expect(s.probes[0].current.angle).toBeCloseTo(3 * Math.PI, 12);
  });
});

describe("weights", () => {
  it("rejects a matrix with the wrong shape", () => {
    const s = new Session(unitSquare());
    s.placeProbe([0.5, 0.5]);
    expect(() => s.setWeights(ones(2, 4))).toThrow(/rows/);
    expect(() => s.setWeights(ones(1, 3))).toThrow(/columns/);
    expect(() => s.setWeights([[1, -1, 1, 1]])).toThrow(/nonneg/);
  });

  it("brush adds weight only within the radius, clamped at zero", () => {
    const s = new Session(unitSquare());
    const p = s.placeProbe([0, 0])!;
    s.setWeights([[0.2, 0.2, 0.2, 0.2]]);
    s.paintWeight(p.id, [0, 0], 0.5, 1);
    const w = s.weights![0];
    expect(w[0]).toBeCloseTo(1.2, 12); // distance 0, full falloff
    expect(w[1]).toBe(0.2); // distance 1 > radius: untouched
    expect(w[3]).toBe(0.2);
    s.paintWeight(p.id, [0, 0], 0.5, -100);
    expect(s.weights![0][0]).toBe(0); // clamped, never negative
  });

  it("painting needs fresh weights", () => {
    const s = new Session(unitSquare());
    const p = s.placeProbe([0.5, 0.5])!;
    expect(() => s.paintWeight(p.id, [0.5, 0.5], 0.2, 1)).toThrow(/fresh weights/);
  });
});

describe("undo", () => {
  it("restores the previous document linearly", () => {
    const s = new Session(unitSquare());
    s.checkpoint();
    s.placeProbe([0.2, 0.2]);
    s.checkpoint();
    s.placeProbe([0.8, 0.8]);
    expect(s.probes.length).toBe(2);
    expect(s.undo()).toBe(true);
    expect(s.probes.length).toBe(1);
    expect(s.probes[0].initial.center).toEqual([0.2, 0.2]);
    expect(s.undo()).toBe(true);
    expect(s.probes.length).toBe(0);
    expect(s.undo()).toBe(false); // stack exhausted
  });

  it("one checkpoint covers a whole drag gesture", () => {
    const s = new Session(unitSquare());
    s.placeProbe([0.5, 0.5]);
    s.setWeights(ones(1, 4));
    s.enterDeform();
    const id = s.probes[0].id;
    s.checkpoint();
    for (let i = 0; i < 10; i++) s.dragProbe(id, [0.01, 0]);
    expect(s.probes[0].current.center[0]).toBeCloseTo(0.6, 12);
    s.undo();
    expect(s.probes[0].current.center[0]).toBe(0.5);
    expect(s.mode).toBe("deform");
  });
});

describe("export and import", () => {
  it("round-trips the three CLI-schema files", () => {
    const s = new Session(unitSquare());
    s.placeProbe([0.25, 0.75]);
    s.placeProbe([0.75, 0.25]);
    s.setWeights([
      [1, 0.5, 0.25, 0],
      [0, 0.5, 0.75, 1],
    ]);
    s.enterDeform();
    s.dragProbe(s.probes[0].id, [0.1, -0.05]);
    s.rotateProbe(s.probes[1].id, 1.25);

    const files = s.exportFiles();
    expect(files.probes[0].id).toBe("p1");
    expect(files.probes[0].initial.center).toEqual([0.25, 0.75]);
    expect(files.probes[0].current.center).toEqual([0.35, 0.7]);
    expect(files.weights.length).toBe(2);

    const back = Session.import(files.mesh, files.probes, files.weights);
    expect(back.mode).toBe("deform"); // poses had moved
    expect(back.probes).toEqual(files.probes);
    expect(back.weights).toEqual(files.weights);
    expect(back.framePayload()).toMatchObject({ vertices: files.mesh.vertices });

    // fresh ids continue past the imported ones
    back.enterPlace();
    const extra = back.placeProbe([0.1, 0.1])!;
    expect(extra.id).toBe("p3");
  });

  it("imports untouched poses into place mode", () => {
    const s = new Session(unitSquare());
    s.placeProbe([0.5, 0.5]);
    s.setWeights(ones(1, 4));
    const files = s.exportFiles();
    expect(Session.import(files.mesh, files.probes, files.weights).mode).toBe("place");
  });

  it("rejects malformed files", () => {
    const good = new Session(unitSquare());
    good.placeProbe([0.5, 0.5]);
    good.setWeights(ones(1, 4));
    const files = good.exportFiles();
    expect(() => Session.import({ vertices: "nope" }, files.probes, files.weights)).toThrow(/mesh/);
    expect(() => Session.import(files.mesh, [{ id: "x" }], files.weights)).toThrow(/probes\[0\]/);
    expect(() => Session.import(files.mesh, files.probes, [[1, 2]])).toThrow(/weights/);
  });

  it("export is a deep copy, later edits leave it alone", () => {
    const s = new Session(unitSquare());
    s.placeProbe([0.5, 0.5]);
    s.setWeights(ones(1, 4));
    const files = s.exportFiles();
    s.enterDeform();
    s.dragProbe(s.probes[0].id, [0.2, 0.2]);
    expect(files.probes[0].current.center).toEqual([0.5, 0.5]);
  });
});
