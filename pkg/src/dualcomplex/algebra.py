"""Anti-commutative dual complex numbers: 2D rigid motions in four scalars.

A value ``p = p0 + p1*eps`` is a pair of complex numbers multiplying by

    (p0 + p1 eps)(q0 + q1 eps) = p0 q0 + (p1 conj(q0) + p0 q1) eps

with componentwise addition and norm ``|p| = |p0|`` (the eps part never
contributes).  The unit elements (``|p0| = 1``) form a group that double
covers the orientation-preserving rigid motions of the plane: ``p`` and
``-p`` both send the point ``v`` (a plain Python complex number) to

    p0^2 v + 2 p0 p1 .

``p0 = e^{i theta/2}`` carries half the rotation angle, exactly like a
quaternion carries half the 3D rotation angle, which is what makes the
weighted blend :func:`dlb` and the geodesic :func:`slerp` free of the
collapse artifacts of averaging matrices.

Points are complex numbers (``x + 1j*y``) throughout this module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from . import config
from .errors import DegenerateBlend, LogSingular, SingularDcn

__all__ = [
    "Dcn",
    "UnitDcn",
    "DcnTangent",
    "IDENTITY",
    "act",
    "from_translation",
    "from_rotation",
    "dlb",
    "exp",
    "log",
    "slerp",
]


def _as_finite_complex(value, what: str) -> complex:
    z = complex(value)
    if not cmath.isfinite(z):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True, slots=True)
class Dcn:
    """A dual complex number ``p0 + p1*eps``.  Immutable."""

    p0: complex
    p1: complex

    def __post_init__(self):
        object.__setattr__(self, "p0", _as_finite_complex(self.p0, "p0"))
        object.__setattr__(self, "p1", _as_finite_complex(self.p1, "p1"))

    def __add__(self, other: "Dcn") -> "Dcn":
        if not isinstance(other, Dcn):
            return NotImplemented
        return Dcn(self.p0 + other.p0, self.p1 + other.p1)

    def __sub__(self, other: "Dcn") -> "Dcn":
        if not isinstance(other, Dcn):
            return NotImplemented
        return Dcn(self.p0 - other.p0, self.p1 - other.p1)

    def __mul__(self, other: "Dcn") -> "Dcn":
        """The anti-commutative product; eps picks up a conjugation:
        ``eps * z = conj(z) * eps``."""
        if not isinstance(other, Dcn):
            return NotImplemented
        p0 = self.p0 * other.p0
        p1 = self.p1 * other.p0.conjugate() + self.p0 * other.p1
        if isinstance(self, UnitDcn) and isinstance(other, UnitDcn):
            return UnitDcn._wrap(p0, p1)
        return Dcn(p0, p1)

    def __neg__(self) -> "Dcn":
        return type(self)._wrap(-self.p0, -self.p1)

    def conj_tilde(self) -> "Dcn":
        """The involution: conjugate the primal slot, keep the eps slot."""
        return type(self)._wrap(self.p0.conjugate(), self.p1)

    def norm(self) -> float:
        """``|p0|``; multiplicative over the product."""
        return abs(self.p0)

    def inverse(self) -> "Dcn":
        """Two-sided inverse ``(1/p0, -p1/|p0|^2)``.

        Raises :class:`SingularDcn` when ``|p0|`` is at or below the
        singular tolerance.
        """
        n2 = self.p0.real * self.p0.real + self.p0.imag * self.p0.imag
        if math.sqrt(n2) <= config.TOL.singular:
            raise SingularDcn(f"cannot invert {self!r}: |p0| <= {config.TOL.singular}")
        return Dcn(self.p0.conjugate() / n2, -self.p1 / n2)

    def normalize(self) -> "UnitDcn":
        """Scale both slots by ``1/|p0|``; the represented motion is unchanged."""
        n = abs(self.p0)
        if n <= config.TOL.singular:
            raise SingularDcn(f"cannot normalize {self!r}: |p0| <= {config.TOL.singular}")
        return UnitDcn._wrap(self.p0 / n, self.p1 / n)

    @classmethod
    def _wrap(cls, p0: complex, p1: complex):
        # Internal fast path: trusts the caller, skips validation.
        obj = object.__new__(cls)
        object.__setattr__(obj, "p0", p0)
        object.__setattr__(obj, "p1", p1)
        return obj

    def components(self) -> tuple[float, float, float, float]:
        """Canonical flat order ``[p0.re, p0.im, p1.re, p1.im]``."""
        return (self.p0.real, self.p0.imag, self.p1.real, self.p1.imag)

    @classmethod
    def from_components(cls, c: Sequence[float]) -> "Dcn":
        if len(c) != 4:
            raise ValueError(f"expected 4 components, got {len(c)}")
        return cls(complex(c[0], c[1]), complex(c[2], c[3]))


@dataclass(frozen=True, slots=True)
class UnitDcn(Dcn):
    """A unit (``|p0| = 1``) dual complex number: one rigid motion, up to sign.

    The constructor renormalizes inputs whose norm is within
    ``config.TOL.unit_accept`` of 1 and rejects anything farther out, so a
    constructed value is unit to float rounding.  Operations between units
    stay units without per-operation renormalization; long composition
    chains can call :meth:`normalize` to shed accumulated drift.
    """

    def __post_init__(self):
        # slots=True regenerates the class, so zero-arg super() is unusable here.
        Dcn.__post_init__(self)
        n = abs(self.p0)
        if abs(n - 1.0) > config.TOL.unit_accept:
            raise ValueError(f"|p0| = {n} is not within {config.TOL.unit_accept} of 1")
        if n != 1.0:
            object.__setattr__(self, "p0", self.p0 / n)
            object.__setattr__(self, "p1", self.p1 / n)

    def inverse(self) -> "UnitDcn":
        """Unit case is closed form: ``(conj(p0), -p1)``."""
        return UnitDcn._wrap(self.p0.conjugate(), -self.p1)

    def __pow__(self, t: float) -> "UnitDcn":
        """``exp(t * log(self))``; requires a principal log."""
        return exp(t * log(self))

    def angle(self) -> float:
        """Rotation angle of the represented motion, in (-2*pi, 2*pi]."""
        return 2.0 * cmath.phase(self.p0)


IDENTITY = UnitDcn(1.0, 0.0)


@dataclass(frozen=True, slots=True)
class DcnTangent:
    """A tangent element ``theta*i + t*eps``: input of exp, output of log.

    ``theta`` is half the rotation angle of ``exp`` of this element.
    """

    theta: float
    t: complex

    def __post_init__(self):
        th = float(self.theta)
        if not math.isfinite(th):
            raise ValueError(f"theta must be finite, got {th!r}")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "t", _as_finite_complex(self.t, "t"))

    def __add__(self, other: "DcnTangent") -> "DcnTangent":
        if not isinstance(other, DcnTangent):
            return NotImplemented
        return DcnTangent(self.theta + other.theta, self.t + other.t)

    def __mul__(self, s: float) -> "DcnTangent":
        if not isinstance(s, (int, float)):
            return NotImplemented
        return DcnTangent(s * self.theta, s * self.t)

    __rmul__ = __mul__

    def __neg__(self) -> "DcnTangent":
        return DcnTangent(-self.theta, -self.t)


def act(p: UnitDcn, v: complex) -> complex:
    """Apply the rigid motion of unit ``p`` to the point ``v``.

    This is conjugation ``p (1 + v eps) conj_tilde(p)`` collapsed to its
    closed form ``p0^2 v + 2 p0 p1``; ``p`` and ``-p`` act identically.
    """
    return p.p0 * p.p0 * v + 2.0 * p.p0 * p.p1


def from_translation(d: complex) -> UnitDcn:
    """The unit element translating by ``d``: ``(1, d/2)``."""
    return UnitDcn(1.0, complex(d) * 0.5)


def from_rotation(theta: float, center: complex = 0j) -> UnitDcn:
    """Rotation by ``theta`` radians about ``center``.

    ``(e^{i theta/2}, (e^{-i theta/2} - e^{i theta/2}) * center / 2)``:
    the composition translate(center) * rotate(theta) * translate(-center)
    written out.  Principal branch: the primal part carries theta/2.
    """
    h = 0.5 * float(theta)
    p0 = complex(math.cos(h), math.sin(h))
    p1 = (p0.conjugate() - p0) * complex(center) * 0.5
    return UnitDcn._wrap(p0, p1)


def _aligned_weight(p: UnitDcn, ref: complex, w: float) -> float:
    # Flipping p to -p is the same as negating its weight.
    if (p.p0 * ref).real < 0.0:
        return -w
    return w


def dlb(ps: Sequence[UnitDcn], ws: Sequence[float]) -> UnitDcn:
    """Blend unit elements by normalizing their weighted sum.

    Before summing, each input is flipped to the hemisphere of the first
    one (sign flips change nothing about the represented motions but keep
    the sum away from needless cancellation); the result is flipped there
    too, so blending copies of ``p`` returns ``+p`` even when the weights
    sum negative.  Raises :class:`DegenerateBlend` when the weighted sum
    still has norm at or below the singular tolerance.
    """
    if len(ps) == 0:
        raise ValueError("dlb of an empty list")
    if len(ps) != len(ws):
        raise ValueError(f"{len(ps)} elements but {len(ws)} weights")
    ref = ps[0].p0.conjugate()
    s0 = 0j
    s1 = 0j
    for p, w in zip(ps, ws):
        w = _aligned_weight(p, ref, w)
        s0 += w * p.p0
        s1 += w * p.p1
    n = abs(s0)
    if n <= config.TOL.singular:
        raise DegenerateBlend(f"blend denominator {n} <= {config.TOL.singular}")
    if (s0 * ref).real < 0.0:
        s0 = -s0
        s1 = -s1
    return UnitDcn._wrap(s0 / n, s1 / n)


def _sinc(theta: float) -> float:
    # sin(theta)/theta with the removable singularity expanded.
    if abs(theta) < config.TOL.taylor:
        t2 = theta * theta
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0
    return math.sin(theta) / theta


def exp(x: DcnTangent) -> UnitDcn:
    """``(e^{i theta}, sinc(theta) * t)``, the exponential onto the unit group."""
    p0 = complex(math.cos(x.theta), math.sin(x.theta))
    return UnitDcn._wrap(p0, _sinc(x.theta) * x.t)


def log(q: UnitDcn) -> DcnTangent:
    """Principal logarithm ``(theta, theta/sin(theta) * p1)``.

    ``theta`` is taken in [-pi, pi).  At theta = +-pi the eps factor blows
    up: a pure half-turn (``|p1|`` at the singular tolerance or below)
    still maps to ``(theta, 0)``, anything else raises
    :class:`LogSingular` because no principal value exists.
    """
    theta = cmath.phase(q.p0)
    if theta == math.pi:
        theta = -math.pi
    if abs(theta) < config.TOL.taylor:
        t2 = theta * theta
        factor = 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    else:
        s = math.sin(theta)
        if abs(s) <= config.TOL.log_sin:
            if abs(q.p1) <= config.TOL.singular:
                return DcnTangent(theta, 0j)
            raise LogSingular(
                f"no principal log at theta = {theta}: half-turn with |p1| = {abs(q.p1)}"
            )
        factor = theta / s
    return DcnTangent(theta, factor * q.p1)


def slerp(p: UnitDcn, q: UnitDcn, t: float) -> UnitDcn:
    """Geodesic interpolation ``exp(t log(q p^-1)) p`` at parameter ``t``.

    ``q`` is first flipped to the hemisphere of ``p`` so the path is the
    short one; ``t`` outside [0, 1] extrapolates.  The rotation angle is
    affine in ``t`` (uniform angular velocity).
    """
    if (q.p0 * p.p0.conjugate()).real < 0.0:
        q = -q
    return exp(t * log(q * p.inverse())) * p
