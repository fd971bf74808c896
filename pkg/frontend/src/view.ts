import type { Vec2 } from "./wire.js";

/**
 * Uniform-scale mapping between mesh coordinates (y up) and canvas pixels
 * (y down). Pure arithmetic; no knowledge of probes or deformation.
 */
export class Viewport {
  scale = 1;
  private originX = 0; // screen x of mesh minX
  private originY = 0; // screen y of mesh maxY (top edge)
  private meshMin: Vec2 = [0, 0];
  private meshMax: Vec2 = [1, 1];

  constructor(
    public width: number,
    public height: number,
  ) {}

  /** Fit a mesh bounding box into the canvas, centered, with a pixel margin. */
  fit(min: Vec2, max: Vec2, margin = 24): void {
    const w = Math.max(max[0] - min[0], 1e-12);
    const h = Math.max(max[1] - min[1], 1e-12);
    this.scale = Math.min((this.width - 2 * margin) / w, (this.height - 2 * margin) / h);
    this.originX = (this.width - this.scale * w) / 2;
    this.originY = (this.height - this.scale * h) / 2;
    this.meshMin = [min[0], min[1]];
    this.meshMax = [max[0], max[1]];
  }

  toScreen(p: Vec2): Vec2 {
    return [
      this.originX + this.scale * (p[0] - this.meshMin[0]),
      this.originY + this.scale * (this.meshMax[1] - p[1]),
    ];
  }

  toMesh(s: Vec2): Vec2 {
    return [
      this.meshMin[0] + (s[0] - this.originX) / this.scale,
      this.meshMax[1] - (s[1] - this.originY) / this.scale,
    ];
  }

  /** Screen-pixel length converted to mesh units. */
  lengthToMesh(px: number): number {
    return px / this.scale;
  }
}
