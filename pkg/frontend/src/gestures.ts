import type { Session } from "./session.js";
import type { Viewport } from "./view.js";
import type { ProbeJson, Vec2 } from "./wire.js";

/** Normalize an angle difference into [-pi, pi). */
export function wrapToPi(a: number): number {
  let r = (a + Math.PI) % (2 * Math.PI);
  if (r < 0) r += 2 * Math.PI;
  return r - Math.PI;
}

export interface PointerInput {
  id: number;
  x: number; // canvas pixels
  y: number;
  button?: number;
  altKey?: boolean;
}

export const BODY_HIT_PX = 14;
export const HANDLE_DIST_PX = 36;
export const HANDLE_HIT_PX = 12;
const CLICK_SLOP_PX = 4;

type Gesture =
  | { kind: "maybe-place"; downX: number; downY: number; pointer: number }
  | { kind: "reposition"; id: string | number; pointer: number }
  | { kind: "drag"; id: string | number; pointer: number; prev: Vec2 }
  | { kind: "rotate"; id: string | number; pointer: number; prevAngle: number }
  | {
      kind: "twist";
      id: string | number;
      pointers: [number, number];
      prevAngle: number;
      prevMid: Vec2;
    };

/**
 * Turns raw pointer events into session operations.
 *
 * Place mode: click adds a probe, dragging a probe body moves its
 * placement, alt-click or a secondary button removes it. Deform mode:
 * dragging a body translates the current pose, dragging the rotation
 * handle or twisting with a second pointer rotates it. Rotation is fed
 * to the session as small per-move deltas, so the accumulated angle
 * never wraps.
 *
 * All math here is screen-to-mesh mapping and atan2 bookkeeping; the
 * session and the service own everything algebraic.
 */
export class GestureController {
  selected: string | number | null = null;
  private gesture: Gesture | null = null;
  private points = new Map<number, Vec2>();

  constructor(
    private readonly session: Session,
    private readonly view: Viewport,
  ) {}

  /** Screen position of a probe's rotation handle (deform mode only). */
  handleScreen(p: ProbeJson): Vec2 {
    const r = this.view.lengthToMesh(HANDLE_DIST_PX);
    const a = p.current.angle;
    const tip: Vec2 = [p.current.center[0] + r * Math.cos(a), p.current.center[1] + r * Math.sin(a)];
    return this.view.toScreen(tip);
  }

  private probeAtScreen(x: number, y: number): ProbeJson | null {
    // topmost first, so the most recently placed probe wins overlaps
    for (let i = this.session.probes.length - 1; i >= 0; i--) {
      const p = this.session.probes[i];
      const s = this.view.toScreen(p.current.center);
      if (Math.hypot(s[0] - x, s[1] - y) <= BODY_HIT_PX) return p;
    }
    return null;
  }

  private handleAtScreen(x: number, y: number): ProbeJson | null {
    for (let i = this.session.probes.length - 1; i >= 0; i--) {
      const p = this.session.probes[i];
      const h = this.handleScreen(p);
      if (Math.hypot(h[0] - x, h[1] - y) <= HANDLE_HIT_PX) return p;
    }
    return null;
  }

  private angleAbout(center: Vec2, screen: Vec2): number {
    const m = this.view.toMesh(screen);
    return Math.atan2(m[1] - center[1], m[0] - center[0]);
  }

  pointerDown(ev: PointerInput): void {
    this.points.set(ev.id, [ev.x, ev.y]);

    if (this.session.mode === "deform") {
      // a second finger on a dragged probe upgrades the drag to a twist
      if (this.gesture !== null && this.gesture.kind === "drag" && this.points.size === 2) {
        const other = this.points.get(this.gesture.pointer);
        if (other !== undefined) {
          const a = this.view.toMesh(other);
          const b = this.view.toMesh([ev.x, ev.y]);
          this.gesture = {
            kind: "twist",
            id: this.gesture.id,
            pointers: [this.gesture.pointer, ev.id],
            prevAngle: Math.atan2(b[1] - a[1], b[0] - a[0]),
            prevMid: [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2],
          };
          return;
        }
      }
      if (this.gesture !== null) return;

      const handled = this.handleAtScreen(ev.x, ev.y);
      if (handled !== null) {
        this.selected = handled.id;
        this.session.checkpoint();
        this.gesture = {
          kind: "rotate",
          id: handled.id,
          pointer: ev.id,
          prevAngle: this.angleAbout(handled.current.center, [ev.x, ev.y]),
        };
        return;
      }
      const hit = this.probeAtScreen(ev.x, ev.y);
      if (hit !== null) {
        this.selected = hit.id;
        this.session.checkpoint();
        this.gesture = { kind: "drag", id: hit.id, pointer: ev.id, prev: this.view.toMesh([ev.x, ev.y]) };
      }
      return;
    }

    // place mode
    if (this.gesture !== null) return;
    const hit = this.probeAtScreen(ev.x, ev.y);
    if (hit !== null) {
      this.selected = hit.id;
      if (ev.button === 2 || ev.altKey === true) {
        this.session.checkpoint();
        this.session.removeProbe(hit.id);
        this.selected = null;
        return;
      }
      this.session.checkpoint();
      this.gesture = { kind: "reposition", id: hit.id, pointer: ev.id };
      return;
    }
    this.selected = null;
    this.gesture = { kind: "maybe-place", downX: ev.x, downY: ev.y, pointer: ev.id };
  }

  pointerMove(ev: PointerInput): void {
    const prevPoint = this.points.get(ev.id);
    if (prevPoint === undefined) return;
    this.points.set(ev.id, [ev.x, ev.y]);
    const g = this.gesture;
    if (g === null) return;

    switch (g.kind) {
      case "maybe-place":
        // a real drag on empty space is not a click; drop the pending place
        if (g.pointer === ev.id && Math.hypot(ev.x - g.downX, ev.y - g.downY) > CLICK_SLOP_PX) {
          this.gesture = null;
        }
        return;
      case "reposition":
        if (g.pointer === ev.id) this.session.repositionProbe(g.id, this.view.toMesh([ev.x, ev.y]));
        return;
      case "drag": {
        if (g.pointer !== ev.id) return;
        const m = this.view.toMesh([ev.x, ev.y]);
        this.session.dragProbe(g.id, [m[0] - g.prev[0], m[1] - g.prev[1]]);
        g.prev = m;
        return;
      }
      case "rotate": {
        if (g.pointer !== ev.id) return;
        const probe = this.session.probes.find((p) => p.id === g.id);
        if (probe === undefined) return;
        const angle = this.angleAbout(probe.current.center, [ev.x, ev.y]);
        this.session.rotateProbe(g.id, wrapToPi(angle - g.prevAngle));
        g.prevAngle = angle;
        return;
      }
      case "twist": {
        if (!g.pointers.includes(ev.id)) return;
        const s0 = this.points.get(g.pointers[0]);
        const s1 = this.points.get(g.pointers[1]);
        if (s0 === undefined || s1 === undefined) return;
        const a = this.view.toMesh(s0);
        const b = this.view.toMesh(s1);
        const angle = Math.atan2(b[1] - a[1], b[0] - a[0]);
        const mid: Vec2 = [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
        this.session.rotateProbe(g.id, wrapToPi(angle - g.prevAngle));
        this.session.dragProbe(g.id, [mid[0] - g.prevMid[0], mid[1] - g.prevMid[1]]);
        g.prevAngle = angle;
        g.prevMid = mid;
        return;
      }
    }
  }

  pointerUp(ev: PointerInput): void {
    this.points.delete(ev.id);
    const g = this.gesture;
    if (g === null) return;

    if (g.kind === "maybe-place" && g.pointer === ev.id) {
      this.gesture = null;
      this.session.checkpoint();
      const placed = this.session.placeProbe(this.view.toMesh([ev.x, ev.y]));
      if (placed === null) this.session.undo(); // outside the mesh: drop the checkpoint too
      else this.selected = placed.id;
      return;
    }
    if (g.kind === "twist" && g.pointers.includes(ev.id)) {
      // one finger left: fall back to a plain drag with the survivor
      const survivor = g.pointers[0] === ev.id ? g.pointers[1] : g.pointers[0];
      const s = this.points.get(survivor);
      this.gesture = s === undefined ? null : { kind: "drag", id: g.id, pointer: survivor, prev: this.view.toMesh(s) };
      return;
    }
    if ("pointer" in g && g.pointer === ev.id) this.gesture = null;
  }

  cancel(): void {
    this.gesture = null;
    this.points.clear();
  }

  get active(): boolean {
    return this.gesture !== null;
  }
}
