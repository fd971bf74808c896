"""Conversions to and from three equivalent representations of a 2D rigid motion.

These serve as cross-check oracles for the dual-complex algebra:

* :class:`Se2Mat`: the 3x3 homogeneous matrix (rotation block + translation),
* :class:`DualQuat`: dual quaternions, where the dual-complex ring embeds as
  ``p0 + p1*j*eps``,
* :class:`CMat2`: upper-triangular 2x2 complex matrices
  ``[[p0, p1], [0, conj(p0)]]``.

Also here: the tangent-space map :func:`dphi` onto (omega, ux, uy) and a
closed-form matrix exponential :func:`se2_exp`, so the exp/log square
(tangent -> matrix vs. tangent -> unit element -> matrix) can be checked
both ways round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .algebra import Dcn, DcnTangent, UnitDcn
from .errors import NotRigid

__all__ = [
    "Se2Mat",
    "Se2Tangent",
    "DualQuat",
    "CMat2",
    "to_se2",
    "from_se2",
    "dphi",
    "se2_exp",
    "to_dualquat",
    "from_dualquat",
    "dualquat_mul",
    "dualquat_act",
    "dualquat_involution",
    "dualquat_norm",
    "to_cmat2",
    "from_cmat2",
]


@dataclass(frozen=True)
class Se2Mat:
    """Homogeneous 3x3 rigid matrix; the bottom row (0, 0, 1) is implicit.

    Construction checks the rotation block (orthonormal columns, det +1)
    within ``config.TOL.rigid`` and raises :class:`NotRigid` beyond that.
    """

    r00: float
    r01: float
    r10: float
    r11: float
    tx: float
    ty: float

    def __post_init__(self):
        vals = (self.r00, self.r01, self.r10, self.r11, self.tx, self.ty)
        if not all(math.isfinite(v) for v in vals):
            raise NotRigid(f"non-finite entries in {vals!r}")
        tol = config.TOL.rigid
        c0 = self.r00 * self.r00 + self.r10 * self.r10 - 1.0
        c1 = self.r01 * self.r01 + self.r11 * self.r11 - 1.0
        dot = self.r00 * self.r01 + self.r10 * self.r11
        det = self.r00 * self.r11 - self.r01 * self.r10 - 1.0
        worst = max(abs(c0), abs(c1), abs(dot), abs(det))
        if worst > tol:
            raise NotRigid(f"rotation block off by {worst:.3e} (> {tol})")

    @classmethod
    def identity(cls) -> "Se2Mat":
        return cls(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, a) -> "Se2Mat":
        """Accepts a 3x3 array or a row-major flat 9-vector."""
        a = np.asarray(a, dtype=float)
        if a.shape == (9,):
            a = a.reshape(3, 3)
        if a.shape != (3, 3):
            raise ValueError(f"expected 3x3 or flat 9, got shape {a.shape}")
        if np.max(np.abs(a[2] - (0.0, 0.0, 1.0))) > config.TOL.rigid:
            raise NotRigid(f"bottom row {a[2].tolist()} is not (0, 0, 1)")
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1], a[0, 2], a[1, 2])

    def to_array(self) -> np.ndarray:
        return np.array(
            [
                [self.r00, self.r01, self.tx],
                [self.r10, self.r11, self.ty],
                [0.0, 0.0, 1.0],
            ]
        )

    def to_flat9(self) -> list[float]:
        """Row-major 9 floats, bottom row included (the wire format)."""
        return [self.r00, self.r01, self.tx, self.r10, self.r11, self.ty, 0.0, 0.0, 1.0]

    def __matmul__(self, other: "Se2Mat") -> "Se2Mat":
        if not isinstance(other, Se2Mat):
            return NotImplemented
        return Se2Mat(
            self.r00 * other.r00 + self.r01 * other.r10,
            self.r00 * other.r01 + self.r01 * other.r11,
            self.r10 * other.r00 + self.r11 * other.r10,
            self.r10 * other.r01 + self.r11 * other.r11,
            self.r00 * other.tx + self.r01 * other.ty + self.tx,
            self.r10 * other.tx + self.r11 * other.ty + self.ty,
        )

    def apply(self, v: complex) -> complex:
        """Matrix action on a point given as a complex number."""
        v = complex(v)
        return complex(
            self.r00 * v.real + self.r01 * v.imag + self.tx,
            self.r10 * v.real + self.r11 * v.imag + self.ty,
        )


@dataclass(frozen=True)
class Se2Tangent:
    """Matrix-side tangent vector: angular velocity and translational part."""

    omega: float
    ux: float
    uy: float

    def __add__(self, other: "Se2Tangent") -> "Se2Tangent":
        if not isinstance(other, Se2Tangent):
            return NotImplemented
        return Se2Tangent(self.omega + other.omega, self.ux + other.ux, self.uy + other.uy)

    def __mul__(self, s: float) -> "Se2Tangent":
        if not isinstance(s, (int, float)):
            return NotImplemented
        return Se2Tangent(s * self.omega, s * self.ux, s * self.uy)

    __rmul__ = __mul__


def to_se2(p: UnitDcn) -> Se2Mat:
    """Rotation block from ``p0^2``, translation from ``2 p0 p1``.

    A surjective two-to-one group homomorphism: ``p`` and ``-p`` map to the
    same matrix.
    """
    s = p.p0 * p.p0
    d = 2.0 * p.p0 * p.p1
    return Se2Mat(s.real, -s.imag, s.imag, s.real, d.real, d.imag)


def from_se2(m) -> UnitDcn:
    """The preimage of ``m`` with ``Re(p0) > 0`` (ties: ``Im(p0) >= 0``).

    Accepts an :class:`Se2Mat` or anything :meth:`Se2Mat.from_array` takes;
    raises :class:`NotRigid` for matrices that fail the rigidity check.
    """
    if not isinstance(m, Se2Mat):
        m = Se2Mat.from_array(m)
    theta = math.atan2(m.r10, m.r00)
    h = 0.5 * theta
    p0 = complex(math.cos(h), math.sin(h))
    if p0.real < 0.0 or (p0.real == 0.0 and p0.imag < 0.0):
        p0 = -p0
    p1 = p0.conjugate() * complex(m.tx, m.ty) * 0.5
    return UnitDcn(p0, p1)


def dphi(x: DcnTangent) -> Se2Tangent:
    """Tangent-space isomorphism: ``theta*i + t*eps -> (2 theta, 2 Re t, 2 Im t)``."""
    return Se2Tangent(2.0 * x.theta, 2.0 * x.t.real, 2.0 * x.t.imag)


def se2_exp(v: Se2Tangent) -> Se2Mat:
    """Closed-form matrix exponential: rotation by omega, translation V(omega) u."""
    w = v.omega
    c = math.cos(w)
    s = math.sin(w)
    if abs(w) < config.TOL.taylor:
        w2 = w * w
        a = 1.0 - w2 / 6.0 + w2 * w2 / 120.0
        b = w * 0.5 - w * w2 / 24.0
    else:
        a = s / w
        b = (1.0 - c) / w
    return Se2Mat(c, -s, s, c, a * v.ux - b * v.uy, b * v.ux + a * v.uy)


# ---------------------------------------------------------------------------
# Dual quaternions.  Quaternions are (w, x, y, z) tuples everywhere.

Quat = tuple[float, float, float, float]


def _qmul(a: Quat, b: Quat) -> Quat:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def _qconj(a: Quat) -> Quat:
    return (a[0], -a[1], -a[2], -a[3])


def _qadd(a: Quat, b: Quat) -> Quat:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


@dataclass(frozen=True)
class DualQuat:
    """A dual quaternion ``q0 + q1*eps`` with commuting eps (eps^2 = 0)."""

    q0: Quat
    q1: Quat

    def __post_init__(self):
        for name in ("q0", "q1"):
            q = tuple(float(c) for c in getattr(self, name))
            if len(q) != 4 or not all(math.isfinite(c) for c in q):
                raise ValueError(f"{name} must be 4 finite scalars, got {q!r}")
            object.__setattr__(self, name, q)

    @classmethod
    def identity(cls) -> "DualQuat":
        return cls((1.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0))


def dualquat_mul(a: DualQuat, b: DualQuat) -> DualQuat:
    """Dual-number product over the quaternions: eps commutes and squares to 0."""
    return DualQuat(_qmul(a.q0, b.q0), _qadd(_qmul(a.q1, b.q0), _qmul(a.q0, b.q1)))


def dualquat_involution(a: DualQuat) -> DualQuat:
    """``conj(q0) - conj(q1) eps``, the involution used in the sandwich action."""
    cq1 = _qconj(a.q1)
    return DualQuat(_qconj(a.q0), (-cq1[0], -cq1[1], -cq1[2], -cq1[3]))


def dualquat_norm(a: DualQuat) -> float:
    return math.sqrt(sum(c * c for c in a.q0))


def dualquat_act(p: DualQuat, v: tuple[float, float, float]) -> tuple[float, float, float]:
    """Sandwich a point: embed ``v`` as ``1 + (x i + y j + z k) eps``,
    conjugate by a unit ``p``, read the vector back out."""
    q = DualQuat((1.0, 0.0, 0.0, 0.0), (0.0, float(v[0]), float(v[1]), float(v[2])))
    r = dualquat_mul(dualquat_mul(p, q), dualquat_involution(p))
    return (r.q1[1], r.q1[2], r.q1[3])


def to_dualquat(p: Dcn) -> DualQuat:
    """Ring embedding ``p0 + p1 eps -> p0 + p1 j eps``.

    The complex plane sits inside the quaternions as the span of (1, i), so
    ``p1 = x + y i`` lands on ``x j + y k``; a point ``(x, y)`` accordingly
    embeds as the dual part ``(0, x, y)`` in (i, j, k) components.
    """
    return DualQuat(
        (p.p0.real, p.p0.imag, 0.0, 0.0),
        (0.0, 0.0, p.p1.real, p.p1.imag),
    )


def from_dualquat(q: DualQuat, tol: float = 1e-9) -> Dcn:
    """Inverse of :func:`to_dualquat`; rejects values off the embedded subring."""
    off = max(abs(q.q0[2]), abs(q.q0[3]), abs(q.q1[0]), abs(q.q1[1]))
    if off > tol:
        raise ValueError(f"dual quaternion is {off:.3e} away from the embedded subring")
    return Dcn(complex(q.q0[0], q.q0[1]), complex(q.q1[2], q.q1[3]))


# ---------------------------------------------------------------------------
# 2x2 complex matrices.


@dataclass(frozen=True)
class CMat2:
    """A 2x2 complex matrix; images of the embedding are upper triangular."""

    m00: complex
    m01: complex
    m10: complex
    m11: complex

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def __matmul__(self, other: "CMat2") -> "CMat2":
        if not isinstance(other, CMat2):
            return NotImplemented
        return CMat2(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def det(self) -> complex:
        return self.m00 * self.m11 - self.m01 * self.m10

    def to_array(self) -> np.ndarray:
        return np.array([[self.m00, self.m01], [self.m10, self.m11]])


def to_cmat2(p: Dcn) -> CMat2:
    """Ring embedding ``p -> [[p0, p1], [0, conj(p0)]]``."""
    return CMat2(p.p0, p.p1, 0j, p.p0.conjugate())


def from_cmat2(m: CMat2, tol: float = 1e-9) -> Dcn:
    """Inverse of :func:`to_cmat2`; rejects matrices off the embedded subring."""
    off = max(abs(m.m10), abs(m.m11 - m.m00.conjugate()))
    if off > tol:
        raise ValueError(f"matrix is {off:.3e} away from the embedded subring")
    return Dcn(m.m00, m.m01)
