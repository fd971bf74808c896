"""Probe-based image deformation.

Probes are user handles with an initial pose and a current pose; the rigid
motion between the two poses, expressed as a unit dual complex number, is
blended per mesh vertex with distance weights and applied to the vertex's
rest position:

    v_j  ->  act(dlb(p_1..p_n; w_1j..w_nj), v_j)

Rest positions are never mutated; every call deforms from the rest state.
The heavy path is vectorized over vertices with numpy and is checked in
the tests against the per-vertex scalar blend.

File schemas (all JSON, shared with the CLI and the UI):

* mesh:    {"vertices": [[x, y], ...], "triangles": [[a, b, c], ...],
            "uv": [[u, v], ...]}
* probes:  [{"id": ..., "initial": {"center": [x, y], "angle": r},
             "current": {"center": [x, y], "angle": r}}, ...]
* weights: dense row-major matrix, probes x vertices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import config
from .algebra import UnitDcn, from_rotation, from_translation
from .errors import DegenerateBlend

__all__ = [
    "Pose",
    "Probe",
    "Mesh",
    "WeightField",
    "probe_dcn",
    "auto_weights",
    "deform",
    "deform_with_fallback",
    "grid_mesh",
]

DEFAULT_ALPHA = 2.0
DEFAULT_EPS = 1e-6


@dataclass(frozen=True)
class Pose:
    """A probe pose: position plus an unwrapped (cumulative) angle."""

    center: complex
    angle: float

    def __post_init__(self):
        c = complex(self.center)
        a = float(self.angle)
        if not (math.isfinite(c.real) and math.isfinite(c.imag) and math.isfinite(a)):
            raise ValueError(f"non-finite pose ({c!r}, {a!r})")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "angle", a)

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "angle": self.angle}

    @classmethod
    def from_json(cls, d: dict) -> "Pose":
        cx, cy = d["center"]
        return cls(complex(cx, cy), d["angle"])


@dataclass(frozen=True)
class Probe:
    id: str | int
    initial: Pose
    current: Pose

    def to_json(self) -> dict:
        return {"id": self.id, "initial": self.initial.to_json(), "current": self.current.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "Probe":
        return cls(d["id"], Pose.from_json(d["initial"]), Pose.from_json(d["current"]))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Mesh:
    """A textured triangle mesh.  Arrays are read-only snapshots."""

    vertices: np.ndarray  # (n, 2) float64 rest positions
    triangles: np.ndarray  # (m, 3) int vertex indices
    uv: np.ndarray  # (n, 2) float64 texture coordinates

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        t = np.asarray(self.triangles, dtype=int).reshape(-1, 3)
        uv = np.asarray(self.uv, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError(f"vertices must be (n, 2), got {v.shape}")
        if uv.shape != v.shape:
            raise ValueError(f"uv shape {uv.shape} != vertices shape {v.shape}")
        if not np.all(np.isfinite(v)) or not np.all(np.isfinite(uv)):
            raise ValueError("non-finite mesh data")
        if t.size and (t.min() < 0 or t.max() >= len(v)):
            raise ValueError(f"triangle index out of range 0..{len(v) - 1}")
        object.__setattr__(self, "vertices", _frozen(v))
        object.__setattr__(self, "triangles", _frozen(t))
        object.__setattr__(self, "uv", _frozen(uv))

    def __len__(self) -> int:
        return len(self.vertices)

    def vertices_complex(self) -> np.ndarray:
        return self.vertices[:, 0] + 1j * self.vertices[:, 1]

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices.tolist(),
            "triangles": self.triangles.tolist(),
            "uv": self.uv.tolist(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Mesh":
        return cls(d["vertices"], d["triangles"], d["uv"])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def load(cls, path: str | Path) -> "Mesh":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class WeightField:
    """Dense nonnegative blend weights, one row per probe, one column per vertex.

    Every vertex needs at least one positive weight; rows need not be
    normalized (the blend is invariant under positive per-vertex scaling).
    """

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 2:
            raise ValueError(f"weights must be 2-D (probes x vertices), got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("non-finite weights")
        if np.any(w < 0):
            raise ValueError("negative weights")
        col = w.sum(axis=0)
        if np.any(col <= 0):
            j = int(np.argmin(col))
            raise ValueError(f"vertex {j} has no positive weight")
        object.__setattr__(self, "w", _frozen(w))

    @property
    def n_probes(self) -> int:
        return self.w.shape[0]

    @property
    def n_vertices(self) -> int:
        return self.w.shape[1]

    def normalized(self) -> np.ndarray:
        """Per-vertex partition of unity (cosmetic; the blend does not care)."""
        return self.w / self.w.sum(axis=0, keepdims=True)

    def to_json(self) -> list:
        return self.w.tolist()

    @classmethod
    def from_json(cls, rows: list) -> "WeightField":
        return cls(np.asarray(rows, dtype=float))


def probe_dcn(probe: Probe) -> UnitDcn:
    """Unit element mapping the probe's initial pose onto its current one.

    Rotates by the angle delta about the initial center, then translates
    the initial center onto the current one.  Unwrapped angles keep this
    continuous across multi-turn gestures; the sign is fixed to the
    hemisphere of +1.
    """
    d = probe.current.center - probe.initial.center
    r = from_rotation(probe.current.angle - probe.initial.angle, probe.initial.center)
    p = from_translation(d) * r
    if p.p0.real < 0.0 or (p.p0.real == 0.0 and p.p0.imag < 0.0):
        p = -p
    return p


def auto_weights(
    mesh: Mesh,
    probes: Sequence[Probe],
    alpha: float = DEFAULT_ALPHA,
    eps: float = DEFAULT_EPS,
) -> WeightField:
    """Inverse-distance (Shepard) weights against probe initial centers.

    ``w_ij = d_ij^-alpha / sum_k d_kj^-alpha`` with distances clamped below
    at ``eps``.  A vertex sitting within ``eps`` of a probe snaps entirely
    to the nearest such probe.  Columns sum to 1.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if len(probes) == 0:
        raise ValueError("need at least one probe")
    centers = np.array(
        [[p.initial.center.real, p.initial.center.imag] for p in probes]
    )  # (np, 2)
    diff = centers[:, None, :] - mesh.vertices[None, :, :]  # (np, nv, 2)
    dist = np.hypot(diff[..., 0], diff[..., 1])  # (np, nv)

    w = np.maximum(dist, eps) ** (-alpha)
    w /= w.sum(axis=0, keepdims=True)

    touching = dist <= eps  # (np, nv)
    snap = touching.any(axis=0)
    if snap.any():
        masked = np.where(touching, dist, np.inf)
        nearest = np.argmin(masked[:, snap], axis=0)
        w[:, snap] = 0.0
        w[nearest, np.flatnonzero(snap)] = 1.0
    return WeightField(w)


def _blend_field(probes: Sequence[Probe], weights: WeightField):
    """Per-vertex blended unit elements as two complex vectors (q0, q1)."""
    ps = [probe_dcn(p) for p in probes]
    p0 = np.array([p.p0 for p in ps])
    p1 = np.array([p.p1 for p in ps])
    # Hemisphere alignment against the first probe, folded into the signs;
    # the blended sums get the same treatment, matching the scalar blend.
    ref = p0[0].conjugate()
    sign = np.where((p0 * ref).real < 0.0, -1.0, 1.0)
    s0 = (sign * p0) @ weights.w
    s1 = (sign * p1) @ weights.w
    out_sign = np.where((s0 * ref).real < 0.0, -1.0, 1.0)
    s0 = out_sign * s0
    s1 = out_sign * s1
    n = np.abs(s0)
    bad = n <= config.TOL.singular
    ok = ~bad
    q0 = np.empty_like(s0)
    q1 = np.empty_like(s1)
    q0[ok] = s0[ok] / n[ok]
    q1[ok] = s1[ok] / n[ok]
    q0[bad] = 1.0
    q1[bad] = 0.0
    return q0, q1, np.flatnonzero(bad)


def _check_dims(probes: Sequence[Probe], weights: WeightField, mesh: Mesh) -> None:
    if weights.n_probes != len(probes):
        raise ValueError(f"{weights.n_probes} weight rows for {len(probes)} probes")
    if weights.n_vertices != len(mesh):
        raise ValueError(f"{weights.n_vertices} weight columns for {len(mesh)} vertices")


def deform(mesh: Mesh, probes: Sequence[Probe], weights: WeightField) -> np.ndarray:
    """Deformed vertex positions, shape (n, 2).

    Raises :class:`DegenerateBlend` (with the first offending vertex index
    attached) when some vertex's weighted sum degenerates; batch callers
    are expected to fail hard.
    """
    _check_dims(probes, weights, mesh)
    q0, q1, bad = _blend_field(probes, weights)
    if bad.size:
        raise DegenerateBlend(
            f"degenerate blend at vertex {int(bad[0])} "
            f"({bad.size} of {len(mesh)} vertices affected)",
            vertex=int(bad[0]),
        )
    v = mesh.vertices_complex()
    out = q0 * q0 * v + 2.0 * q0 * q1
    return np.column_stack([out.real, out.imag])


def deform_with_fallback(
    mesh: Mesh,
    probes: Sequence[Probe],
    weights: WeightField,
    previous: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Interactive variant: degenerate vertices keep their previous position.

    Returns ``(positions, degenerate_indices)``; ``previous`` defaults to
    the rest positions.
    """
    _check_dims(probes, weights, mesh)
    q0, q1, bad = _blend_field(probes, weights)
    v = mesh.vertices_complex()
    out = q0 * q0 * v + 2.0 * q0 * q1
    positions = np.column_stack([out.real, out.imag])
    if bad.size:
        prev = mesh.vertices if previous is None else np.asarray(previous, dtype=float)
        positions[bad] = prev[bad]
    return positions, bad


def grid_mesh(
    rows: int,
    cols: int,
    rect: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0),
) -> Mesh:
    """Regular rows x cols vertex grid over a rectangle, two triangles per cell.

    ``rect`` is (x0, y0, x1, y1); uv spans the unit square in the same
    orientation, so the texture maps onto the rectangle untouched.
    """
    if rows < 2 or cols < 2:
        raise ValueError("need at least a 2x2 grid")
    x0, y0, x1, y1 = rect
    xs = np.linspace(x0, x1, cols)
    ys = np.linspace(y0, y1, rows)
    gx, gy = np.meshgrid(xs, ys)  # row-major: vertex index = r * cols + c
    vertices = np.column_stack([gx.ravel(), gy.ravel()])
    us = np.linspace(0.0, 1.0, cols)
    vs = np.linspace(0.0, 1.0, rows)
    gu, gv = np.meshgrid(us, vs)
    uv = np.column_stack([gu.ravel(), gv.ravel()])

    tris = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            a = r * cols + c
            b = a + 1
            d = a + cols
            e = d + 1
            tris.append((a, b, e))
            tris.append((a, e, d))
    return Mesh(vertices, np.array(tris, dtype=int), uv)


def probes_to_json(probes: Sequence[Probe]) -> list:
    return [p.to_json() for p in probes]


def probes_from_json(data: list) -> list[Probe]:
    return [Probe.from_json(d) for d in data]
