import type { GestureController } from "./gestures.js";
import type { Session } from "./session.js";
import type { Viewport } from "./view.js";
import type { MeshJson, Vec2 } from "./wire.js";
import { BODY_HIT_PX } from "./gestures.js";

/**
 * Canvas 2D mesh renderer. The texture is mapped per triangle with the
 * affine transform that carries the triangle's uv coordinates onto its
 * (possibly deformed) screen positions; vertex motion only, the texture
 * is never resampled.
 */

function drawTexturedTriangle(
  ctx: CanvasRenderingContext2D,
  img: CanvasImageSource & { width: number; height: number },
  sx: [Vec2, Vec2, Vec2], // screen corners
  tx: [Vec2, Vec2, Vec2], // texture corners, pixels
): void {
  const [[x0, y0], [x1, y1], [x2, y2]] = sx;
  const [[u0, v0], [u1, v1], [u2, v2]] = tx;
  const det = (u1 - u0) * (v2 - v0) - (u2 - u0) * (v1 - v0);
  if (Math.abs(det) < 1e-12) return;
  const a = ((x1 - x0) * (v2 - v0) - (x2 - x0) * (v1 - v0)) / det;
  const b = ((x2 - x0) * (u1 - u0) - (x1 - x0) * (u2 - u0)) / det;
  const c = ((y1 - y0) * (v2 - v0) - (y2 - y0) * (v1 - v0)) / det;
  const d = ((y2 - y0) * (u1 - u0) - (y1 - y0) * (u2 - u0)) / det;
  const e = x0 - a * u0 - b * v0;
  const f = y0 - c * u0 - d * v0;

  // inflate the clip a hair around the centroid to hide seams between triangles
  const gx = (x0 + x1 + x2) / 3;
  const gy = (y0 + y1 + y2) / 3;
  const grow = (x: number, y: number): Vec2 => [x + Math.sign(x - gx) * 0.35, y + Math.sign(y - gy) * 0.35];
  const p0 = grow(x0, y0);
  const p1 = grow(x1, y1);
  const p2 = grow(x2, y2);

  ctx.save();
  ctx.beginPath();
  ctx.moveTo(p0[0], p0[1]);
  ctx.lineTo(p1[0], p1[1]);
  ctx.lineTo(p2[0], p2[1]);
  ctx.closePath();
  ctx.clip();
  ctx.transform(a, c, b, d, e, f);
  ctx.drawImage(img, 0, 0);
  ctx.restore();
}

export function drawMesh(
  ctx: CanvasRenderingContext2D,
  img: (CanvasImageSource & { width: number; height: number }) | null,
  mesh: MeshJson,
  positions: Vec2[],
  view: Viewport,
  wireframe: boolean,
): void {
  const screen = positions.map((p) => view.toScreen(p));
  if (img !== null) {
    const w = img.width;
    const h = img.height;
    for (const [i, j, k] of mesh.triangles) {
      // uv has v up; image pixel rows grow downward
      const t = (n: number): Vec2 => [mesh.uv[n][0] * w, (1 - mesh.uv[n][1]) * h];
      drawTexturedTriangle(ctx, img, [screen[i], screen[j], screen[k]], [t(i), t(j), t(k)]);
    }
  }
  if (wireframe || img === null) {
    ctx.save();
    ctx.strokeStyle = img === null ? "#5b7a9f" : "rgba(255,255,255,0.25)";
    ctx.lineWidth = 1;
    ctx.beginPath();
    for (const [i, j, k] of mesh.triangles) {
      ctx.moveTo(screen[i][0], screen[i][1]);
      ctx.lineTo(screen[j][0], screen[j][1]);
      ctx.lineTo(screen[k][0], screen[k][1]);
      ctx.closePath();
    }
    ctx.stroke();
    ctx.restore();
  }
}

export function drawProbes(
  ctx: CanvasRenderingContext2D,
  session: Session,
  gestures: GestureController,
  view: Viewport,
): void {
  ctx.save();
  for (const p of session.probes) {
    const s = view.toScreen(p.current.center);
    const selected = gestures.selected === p.id;

    if (session.mode === "deform") {
      // ghost of the frozen initial pose
      const s0 = view.toScreen(p.initial.center);
      ctx.strokeStyle = "rgba(120,160,220,0.5)";
      ctx.setLineDash([4, 3]);
      ctx.beginPath();
      ctx.arc(s0[0], s0[1], BODY_HIT_PX - 4, 0, 2 * Math.PI);
      ctx.stroke();
      ctx.setLineDash([]);
      ctx.beginPath();
      ctx.moveTo(s0[0], s0[1]);
      ctx.lineTo(s[0], s[1]);
      ctx.strokeStyle = "rgba(120,160,220,0.35)";
      ctx.stroke();
    }

    ctx.fillStyle = selected ? "#ffb347" : "#4f8ef7";
    ctx.strokeStyle = "#10243e";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(s[0], s[1], BODY_HIT_PX - 4, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();

    if (session.mode === "deform") {
      const h = gestures.handleScreen(p);
      ctx.strokeStyle = "rgba(255,255,255,0.6)";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.moveTo(s[0], s[1]);
      ctx.lineTo(h[0], h[1]);
      ctx.stroke();
      ctx.fillStyle = selected ? "#ffd28f" : "#9cc1ff";
      ctx.beginPath();
      ctx.arc(h[0], h[1], 6, 0, 2 * Math.PI);
      ctx.fill();
      ctx.stroke();
    }

    ctx.fillStyle = "#e8f0fb";
    ctx.font = "11px system-ui, sans-serif";
    ctx.fillText(String(p.id), s[0] + BODY_HIT_PX - 2, s[1] - BODY_HIT_PX + 2);
  }
  ctx.restore();
}

/** Procedural checkerboard so the app is usable before any image loads. */
export function makeCheckerTexture(size = 512, cells = 8): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = size;
  canvas.height = size;
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("2d context unavailable");
  const cell = size / cells;
  for (let i = 0; i < cells; i++) {
    for (let j = 0; j < cells; j++) {
      ctx.fillStyle = (i + j) % 2 === 0 ? "#cfd8e3" : "#7e93ad";
      ctx.fillRect(i * cell, j * cell, cell, cell);
    }
  }
  ctx.fillStyle = "#b3443f";
  ctx.beginPath();
  ctx.arc(size * 0.3, size * 0.3, cell * 0.45, 0, 2 * Math.PI);
  ctx.fill();
  ctx.fillStyle = "#2f6b44";
  ctx.fillRect(size * 0.62, size * 0.58, cell * 1.2, cell * 1.2);
  return canvas;
}
