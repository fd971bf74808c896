"""Four-way cost comparison of 2D rigid-motion representations.

Representations: dual complex numbers (4 scalars), dual quaternions (8),
generic 2x2 complex matrices (8), and generic 3x3 homogeneous real
matrices (9).  Each backend is a set of straight-line scalar kernels over
flat tuples; the same kernels are

* audited for operation counts by running them on a counting number type,
* timed for transform/compose throughput on identical seeded workloads,
* cross-checked to transform the same points to within 1e-6.

Published reference counts are displayed next to the audited ones.  The
published table never states its counting convention, so disagreements
are listed, not reconciled; ours is 1 FLOP per scalar mul/add/sub/neg/div
(sqrt counted under "other").

Conversion costs are *to* the 3x3 matrix, except for the 3x3 backend
itself, whose conversion target is the dual complex form.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import UnitDcn, from_rotation, from_translation
from .interop import to_dualquat, to_se2

__all__ = ["CostRow", "Backend", "BACKENDS", "static_counts", "run_throughput",
           "format_table", "report_json", "discrepancies"]


# --- counting number type ---------------------------------------------------

class _Tally:
    __slots__ = ("mul", "add", "div", "other")

    def __init__(self):
        self.mul = self.add = self.div = self.other = 0

    def total(self) -> int:
        return self.mul + self.add + self.div + self.other


_TALLY = _Tally()


class F:
    """A float that counts every arithmetic operation applied to it."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = float(v)

    def __mul__(self, o):
        _TALLY.mul += 1
        return F(self.v * (o.v if isinstance(o, F) else o))

    __rmul__ = __mul__

    def __add__(self, o):
        _TALLY.add += 1
        return F(self.v + (o.v if isinstance(o, F) else o))

    __radd__ = __add__

    def __sub__(self, o):
        _TALLY.add += 1
        return F(self.v - (o.v if isinstance(o, F) else o))

    def __rsub__(self, o):
        _TALLY.add += 1
        return F((o.v if isinstance(o, F) else o) - self.v)

    def __neg__(self):
        _TALLY.add += 1
        return F(-self.v)

    def __truediv__(self, o):
        _TALLY.div += 1
        return F(self.v / (o.v if isinstance(o, F) else o))

    def __rtruediv__(self, o):
        _TALLY.div += 1
        return F((o.v if isinstance(o, F) else o) / self.v)


def _sqrt(x):
    if isinstance(x, F):
        _TALLY.other += 1
        return F(math.sqrt(x.v))
    return math.sqrt(x)


def _audit(kernel: Callable, *args) -> dict:
    """Run ``kernel`` on F-wrapped copies of ``args`` and return op counts."""
    global _TALLY
    _TALLY = _Tally()
    wrapped = tuple(tuple(F(c) for c in a) for a in args)
    kernel(*wrapped)
    return {
        "mul": _TALLY.mul,
        "add": _TALLY.add,
        "div": _TALLY.div,
        "other": _TALLY.other,
        "total": _TALLY.total(),
    }


# --- scalar kernels ---------------------------------------------------------
# Complex helpers on scalar pairs; conjugation is folded into the formulas
# (sign placement), so it costs nothing, matching common practice.

def _cmul(ar, ai, br, bi):
    return ar * br - ai * bi, ar * bi + ai * br


def _cmul_conj2(ar, ai, br, bi):
    # (ar + ai i) * conj(br + bi i)
    return ar * br + ai * bi, ai * br - ar * bi


# dual complex: (p0.re, p0.im, p1.re, p1.im)

def dcn_transform(p, v):
    a, b, c, d = p
    x, y = v
    rr, ri = _cmul(a, b, a, b)
    tr, ti = _cmul(a, b, c, d)
    wr, wi = _cmul(rr, ri, x, y)
    return wr + 2.0 * tr, wi + 2.0 * ti


def dcn_compose(p, q):
    pa, pb, pc, pd = p
    qa, qb, qc, qd = q
    r0r, r0i = _cmul(pa, pb, qa, qb)
    e1r, e1i = _cmul_conj2(pc, pd, qa, qb)
    e2r, e2i = _cmul(pa, pb, qc, qd)
    return r0r, r0i, e1r + e2r, e1i + e2i


def dcn_to_mat3(p):
    a, b, c, d = p
    rr, ri = _cmul(a, b, a, b)
    tr, ti = _cmul(a, b, c, d)
    return (rr, -ri, 2.0 * tr, ri, rr, 2.0 * ti, 0.0, 0.0, 1.0)


# dual quaternion: (q0w, q0x, q0y, q0z, q1w, q1x, q1y, q1z)

def _qmul(aw, ax, ay, az, bw, bx, by, bz):
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def _qmul_conj2(aw, ax, ay, az, bw, bx, by, bz):
    # a * conj(b)
    return (
        aw * bw + ax * bx + ay * by + az * bz,
        ax * bw - aw * bx - ay * bz + az * by,
        ay * bw - aw * by + ax * bz - az * bx,
        az * bw - aw * bz - ax * by + ay * bx,
    )


def dqn_transform(p, v):
    # Unit p: sandwich p (1 + (0, x, y) eps) ~p, reading the point off the
    # (j, k) components; the primal part is known to be 1 and is skipped.
    q0w, q0x, q0y, q0z, q1w, q1x, q1y, q1z = p
    x, y = v
    aw, ax, ay, az = _qmul(q0w, q0x, q0y, q0z, 0.0, 0.0, x, y)
    aw, ax, ay, az = aw + q1w, ax + q1x, ay + q1y, az + q1z
    bw, bx, by, bz = _qmul_conj2(aw, ax, ay, az, q0w, q0x, q0y, q0z)
    cw, cx, cy, cz = _qmul_conj2(q0w, q0x, q0y, q0z, q1w, q1x, q1y, q1z)
    rw, rx, ry, rz = bw - cw, bx - cx, by - cy, bz - cz
    return ry, rz


def dqn_compose(p, q):
    p0 = p[:4]
    p1 = p[4:]
    q0 = q[:4]
    q1 = q[4:]
    r0 = _qmul(*p0, *q0)
    s = _qmul(*p1, *q0)
    t = _qmul(*p0, *q1)
    return r0 + (s[0] + t[0], s[1] + t[1], s[2] + t[2], s[3] + t[3])


def dqn_to_mat3(p):
    # The embedded primal carries (Re p0, Im p0), the dual (Re p1, Im p1).
    return dcn_to_mat3((p[0], p[1], p[6], p[7]))


# 2x2 complex matrix, generic: (m00r, m00i, m01r, m01i, m10r, m10i, m11r, m11i)

def _cm_mul(a, b):
    a00r, a00i, a01r, a01i, a10r, a10i, a11r, a11i = a
    b00r, b00i, b01r, b01i, b10r, b10i, b11r, b11i = b
    p1r, p1i = _cmul(a00r, a00i, b00r, b00i)
    p2r, p2i = _cmul(a01r, a01i, b10r, b10i)
    p3r, p3i = _cmul(a00r, a00i, b01r, b01i)
    p4r, p4i = _cmul(a01r, a01i, b11r, b11i)
    p5r, p5i = _cmul(a10r, a10i, b00r, b00i)
    p6r, p6i = _cmul(a11r, a11i, b10r, b10i)
    p7r, p7i = _cmul(a10r, a10i, b01r, b01i)
    p8r, p8i = _cmul(a11r, a11i, b11r, b11i)
    return (
        p1r + p2r, p1i + p2i, p3r + p4r, p3i + p4i,
        p5r + p6r, p5i + p6i, p7r + p8r, p7i + p8i,
    )


def _cm_mul_tilde2(a, b):
    # a * tilde(b), where tilde conjugates b's diagonal; on embedded values
    # tilde is the dual-number involution.  Conjugation is sign-folded.
    a00r, a00i, a01r, a01i, a10r, a10i, a11r, a11i = a
    b00r, b00i, b01r, b01i, b10r, b10i, b11r, b11i = b
    p1r, p1i = _cmul_conj2(a00r, a00i, b00r, b00i)
    p2r, p2i = _cmul(a01r, a01i, b10r, b10i)
    p3r, p3i = _cmul(a00r, a00i, b01r, b01i)
    p4r, p4i = _cmul_conj2(a01r, a01i, b11r, b11i)
    p5r, p5i = _cmul_conj2(a10r, a10i, b00r, b00i)
    p6r, p6i = _cmul(a11r, a11i, b10r, b10i)
    p7r, p7i = _cmul(a10r, a10i, b01r, b01i)
    p8r, p8i = _cmul_conj2(a11r, a11i, b11r, b11i)
    return (
        p1r + p2r, p1i + p2i, p3r + p4r, p3i + p4i,
        p5r + p6r, p5i + p6i, p7r + p8r, p7i + p8i,
    )


def cmat2_transform(p, v):
    x, y = v
    vmat = (1.0, 0.0, x, y, 0.0, 0.0, 1.0, 0.0)
    r = _cm_mul_tilde2(_cm_mul(p, vmat), p)
    return r[2], r[3]


def cmat2_compose(p, q):
    return _cm_mul(p, q)


def cmat2_to_mat3(p):
    return dcn_to_mat3((p[0], p[1], p[2], p[3]))


# 3x3 real matrix, generic row-major 9-tuple.

def mat3_transform(m, v):
    x, y = v
    xo = m[0] * x + m[1] * y + m[2] * 1.0
    yo = m[3] * x + m[4] * y + m[5] * 1.0
    _ = m[6] * x + m[7] * y + m[8] * 1.0
    return xo, yo


def mat3_compose(a, b):
    out = []
    for r in range(3):
        for c in range(3):
            out.append(
                a[3 * r] * b[c] + a[3 * r + 1] * b[3 + c] + a[3 * r + 2] * b[6 + c]
            )
    return tuple(out)


def mat3_to_dcn(m):
    # Half-angle without trig; valid away from half-turns (r00 > -1).
    ch = _sqrt((1.0 + m[0]) * 0.5)
    sh = m[3] / (2.0 * ch)
    p1r, p1i = _cmul_conj2(m[2], m[5], ch, sh)  # (tx + i ty) * conj(p0)
    return ch, sh, 0.5 * p1r, 0.5 * p1i


# --- backends ---------------------------------------------------------------

def _make_unit(theta: float, tx: float, ty: float) -> UnitDcn:
    return from_translation(complex(tx, ty)) * from_rotation(theta)


def _pack_dcn(theta, tx, ty):
    return _make_unit(theta, tx, ty).components()


def _pack_dqn(theta, tx, ty):
    q = to_dualquat(_make_unit(theta, tx, ty))
    return q.q0 + q.q1


def _pack_cmat2(theta, tx, ty):
    p = _make_unit(theta, tx, ty)
    m01 = p.p1
    return (p.p0.real, p.p0.imag, m01.real, m01.imag,
            0.0, 0.0, p.p0.real, -p.p0.imag)


def _pack_mat3(theta, tx, ty):
    return tuple(to_se2(_make_unit(theta, tx, ty)).to_flat9())


# Published reference costs (transform, compose, convert, memory); None = NA.
_PAPER = {
    "dcn": (22, 20, 15, 4),
    "dqn": (92, 88, None, 8),
    "cmat2": (112, 56, 15, 8),
    "mat3": (15, 45, 18, 9),
}


@dataclass(frozen=True)
class Backend:
    name: str
    label: str
    memory_scalars: int
    make: Callable
    transform: Callable
    compose: Callable
    convert: Callable
    convert_target: str


BACKENDS: tuple[Backend, ...] = (
    Backend("dcn", "dual complex", 4, _pack_dcn, dcn_transform, dcn_compose,
            dcn_to_mat3, "mat3"),
    Backend("dqn", "dual quaternion", 8, _pack_dqn, dqn_transform, dqn_compose,
            dqn_to_mat3, "mat3"),
    Backend("cmat2", "2x2 complex matrix", 8, _pack_cmat2, cmat2_transform,
            cmat2_compose, cmat2_to_mat3, "mat3"),
    Backend("mat3", "3x3 real matrix", 9, _pack_mat3, mat3_transform,
            mat3_compose, mat3_to_dcn, "dcn"),
)


@dataclass
class CostRow:
    representation: str
    transform_flops: int
    compose_flops: int
    convert_flops: int
    memory_scalars: int
    paper_transform: int | None
    paper_compose: int | None
    paper_convert: int | None
    paper_memory: int
    transform_breakdown: dict = field(default_factory=dict)
    compose_breakdown: dict = field(default_factory=dict)
    transform_rate: float | None = None
    compose_rate: float | None = None

    def to_json(self) -> dict:
        return {
            "representation": self.representation,
            "counts": {
                "transform": self.transform_flops,
                "compose": self.compose_flops,
                "convert": self.convert_flops,
                "memory_scalars": self.memory_scalars,
                "transform_breakdown": self.transform_breakdown,
                "compose_breakdown": self.compose_breakdown,
            },
            "paper_counts": {
                "transform": self.paper_transform,
                "compose": self.paper_compose,
                "convert": self.paper_convert,
                "memory_scalars": self.paper_memory,
            },
            "rates": {
                "transform_per_s": self.transform_rate,
                "compose_per_s": self.compose_rate,
            },
        }


_SAMPLE = (0.7, 0.3, -0.8)  # theta, tx, ty; away from half-turns


def static_counts() -> list[CostRow]:
    """Audited operation counts per backend, paper numbers alongside."""
    rows = []
    for be in BACKENDS:
        p = be.make(*_SAMPLE)
        q = be.make(-0.4, 1.1, 0.2)
        t = _audit(be.transform, p, (0.25, -0.5))
        c = _audit(be.compose, p, q)
        k = _audit(be.convert, p)
        pt, pc, pk, pm = _PAPER[be.name]
        rows.append(
            CostRow(
                representation=be.name,
                transform_flops=t["total"],
                compose_flops=c["total"],
                convert_flops=k["total"],
                memory_scalars=be.memory_scalars,
                paper_transform=pt,
                paper_compose=pc,
                paper_convert=pk,
                paper_memory=pm,
                transform_breakdown=t,
                compose_breakdown=c,
            )
        )
    return rows


def _workload(seed: int, k: int = 64):
    import random

    rng = random.Random(seed)
    return [
        (rng.uniform(-2.8, 2.8), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        for _ in range(k)
    ]


def check_agreement(seed: int = 0, cases: int = 200, tol: float = 1e-6) -> float:
    """All backends must transform the same points identically; returns the
    worst pairwise deviation seen."""
    import random

    rng = random.Random(seed)
    worst = 0.0
    for _ in range(cases):
        theta = rng.uniform(-2.8, 2.8)
        tx, ty = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
        v = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        outs = [be.transform(be.make(theta, tx, ty), v) for be in BACKENDS]
        for ox, oy in outs[1:]:
            worst = max(worst, abs(ox - outs[0][0]), abs(oy - outs[0][1]))
    if worst > tol:
        raise AssertionError(f"backends disagree by {worst:.3e} (> {tol})")
    return worst


def _time_loop(fn, p, x0, n: int) -> float:
    x = x0
    t0 = time.perf_counter()
    for _ in range(n):
        x = fn(p, x)
    elapsed = time.perf_counter() - t0
    if not math.isfinite(x[0]):
        raise RuntimeError("timed loop diverged")
    return n / elapsed


def run_throughput(n: int = 100_000, seed: int = 0, runs: int = 5) -> list[CostRow]:
    """Measure transform/compose rates on identical seeded inputs.

    Single-threaded; each loop feeds its result into the next iteration so
    nothing can be hoisted out.  The reported rate is the median of
    ``runs`` timed passes after one warmup pass.  Input generation happens
    before the clock starts.
    """
    if n < 100_000:
        raise ValueError(f"n must be at least 100000 for stable medians, got {n}")
    check_agreement(seed)
    rows = static_counts()
    params = _workload(seed, 1)[0]
    for be, row in zip(BACKENDS, rows):
        p = be.make(*params)
        ident = be.make(0.0, 0.0, 0.0)
        _time_loop(be.transform, p, (0.123, 0.456), max(1000, n // 100))  # warmup
        _time_loop(be.compose, p, ident, max(1000, n // 100))
        t_rates = [_time_loop(be.transform, p, (0.123, 0.456), n) for _ in range(runs)]
        c_rates = [_time_loop(be.compose, p, ident, n) for _ in range(runs)]
        row.transform_rate = statistics.median(t_rates)
        row.compose_rate = statistics.median(c_rates)
    return rows


def discrepancies(rows: Sequence[CostRow]) -> list[str]:
    """Audited-vs-published count mismatches, one line each."""
    out = []
    for r in rows:
        for op, ours, theirs in (
            ("transform", r.transform_flops, r.paper_transform),
            ("compose", r.compose_flops, r.paper_compose),
            ("convert", r.convert_flops, r.paper_convert),
            ("memory", r.memory_scalars, r.paper_memory),
        ):
            if theirs is None:
                out.append(f"{r.representation} {op}: audited {ours}, published NA")
            elif ours != theirs:
                out.append(f"{r.representation} {op}: audited {ours}, published {theirs}")
    return out


def _fmt_rate(rate: float | None) -> str:
    if rate is None:
        return "-"
    return f"{rate / 1e6:8.3f}M"


def format_table(rows: Sequence[CostRow]) -> str:
    header = (
        f"{'representation':<18} {'transform':>16} {'compose':>16} "
        f"{'convert':>16} {'memory':>13} {'xform/s':>9} {'compose/s':>9}"
    )
    lines = [header, "-" * len(header)]
    for r in rows:
        def cell(ours, theirs):
            t = "NA" if theirs is None else str(theirs)
            return f"{ours} (pub {t})"

        lines.append(
            f"{r.representation:<18}"
            f" {cell(r.transform_flops, r.paper_transform):>16}"
            f" {cell(r.compose_flops, r.paper_compose):>16}"
            f" {cell(r.convert_flops, r.paper_convert):>16}"
            f" {cell(r.memory_scalars, r.paper_memory):>13}"
            f" {_fmt_rate(r.transform_rate):>9}"
            f" {_fmt_rate(r.compose_rate):>9}"
        )
    diffs = discrepancies(rows)
    if diffs:
        lines.append("")
        lines.append("audited counts differing from the published table:")
        lines.extend("  " + d for d in diffs)
    return "\n".join(lines)


def report_json(rows: Sequence[CostRow]) -> str:
    return json.dumps(
        {"rows": [r.to_json() for r in rows], "discrepancies": discrepancies(rows)},
        indent=2,
    )
