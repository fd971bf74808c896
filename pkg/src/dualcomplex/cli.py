"""Command-line front door for the dual-complex toolkit.

    dcn2d transform --dcn 1 0 0.5 0 --points pts.json
    dcn2d compose --dcn 0.7071067811865476 0.7071067811865476 0 0 --dcn 1 0 0.5 0
    dcn2d blend --input blend.json
    dcn2d slerp --p 1 0 0 0 --q 0 1 0 0 --t 0.5
    dcn2d convert --value '[1, 0, 0.5, 0]' --from dcn --to se2
    dcn2d grid --rows 10 --cols 10 --out mesh.json
    dcn2d deform --mesh mesh.json --probes probes.json --out deformed.json
    dcn2d bench --format json --seed 0

Wire formats, shared with the JSON file schemas:

* DCN: flat ``[p0.re, p0.im, p1.re, p1.im]``
* rigid 3x3 matrix ("se2"): row-major 9 floats, bottom row included
* dual quaternion: ``[q0.w, q0.x, q0.y, q0.z, q1.w, q1.x, q1.y, q1.z]``
* 2x2 complex matrix: row-major, each entry as re, im (8 floats)
* points file: JSON list of ``[x, y]`` pairs

Exit codes: 0 success, 1 usage error (bad flags, unreadable paths),
2 domain error (singular, degenerate, malformed data); domain failures
print the error class name on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import deform as deform_mod
from .algebra import Dcn, UnitDcn, act, dlb, slerp
from .bench import format_table, report_json, run_throughput, static_counts
from .errors import DcnError
from .interop import (
    CMat2,
    DualQuat,
    Se2Mat,
    from_cmat2,
    from_dualquat,
    from_se2,
    to_cmat2,
    to_dualquat,
    to_se2,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the documented usage code is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload)
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _dcn_from_flat(flat) -> Dcn:
    vals = [float(v) for v in flat]
    if len(vals) != 4:
        raise ValueError(f"a DCN is 4 floats, got {len(vals)}")
    return Dcn(complex(vals[0], vals[1]), complex(vals[2], vals[3]))


def _unit_from_flat(flat) -> UnitDcn:
    p = _dcn_from_flat(flat)
    return UnitDcn(p.p0, p.p1)


def _flat(p: Dcn) -> list[float]:
    return [p.p0.real, p.p0.imag, p.p1.real, p.p1.imag]


def _cmd_transform(args) -> int:
    p = _unit_from_flat(args.dcn)
    data = _read_json(args.points)
    if not isinstance(data, list):
        raise ValueError("points file must be a JSON list of [x, y] pairs")
    out = []
    for i, rec in enumerate(data):
        if not (isinstance(rec, list) and len(rec) == 2):
            raise ValueError(f"points[{i}] is not an [x, y] pair: {rec!r}")
        w = act(p, complex(float(rec[0]), float(rec[1])))
        out.append([w.real, w.imag])
    _emit(out, args.out)
    return 0


def _cmd_compose(args) -> int:
    if not args.dcn:
        raise ValueError("compose needs at least one --dcn")
    acc = _unit_from_flat(args.dcn[0])
    # left-to-right on the command line = apply first listed first
    for flat in args.dcn[1:]:
        acc = _unit_from_flat(flat) * acc
    _emit(_flat(acc), args.out)
    return 0


def _cmd_blend(args) -> int:
    data = _read_json(args.input)
    try:
        dcns = [_unit_from_flat(d) for d in data["dcns"]]
        weights = [float(w) for w in data["weights"]]
    except (KeyError, TypeError) as e:
        raise ValueError(f"blend file needs 'dcns' and 'weights' lists: {e}")
    _emit(_flat(dlb(dcns, weights)), args.out)
    return 0


def _cmd_slerp(args) -> int:
    p = _unit_from_flat(args.p)
    q = _unit_from_flat(args.q)
    _emit(_flat(slerp(p, q, args.t)), args.out)
    return 0


def _parse_rep(kind: str, vals) -> Dcn:
    vals = [float(v) for v in vals]
    if kind == "dcn":
        return _dcn_from_flat(vals)
    if kind == "se2":
        return from_se2(Se2Mat.from_array(vals))
    if kind == "dualquat":
        if len(vals) != 8:
            raise ValueError(f"a dual quaternion is 8 floats, got {len(vals)}")
        return from_dualquat(DualQuat(tuple(vals[:4]), tuple(vals[4:])))
    if kind == "cmat2":
        if len(vals) != 8:
            raise ValueError(f"a 2x2 complex matrix is 8 floats, got {len(vals)}")
        return from_cmat2(
            CMat2(
                complex(vals[0], vals[1]),
                complex(vals[2], vals[3]),
                complex(vals[4], vals[5]),
                complex(vals[6], vals[7]),
            )
        )
    raise ValueError(f"unknown representation {kind!r}")


def _emit_rep(kind: str, p: Dcn):
    if kind == "dcn":
        return _flat(p)
    if kind == "se2":
        return list(to_se2(UnitDcn(p.p0, p.p1)).to_flat9())
    if kind == "dualquat":
        q = to_dualquat(p)
        return list(q.q0) + list(q.q1)
    if kind == "cmat2":
        m = to_cmat2(p)
        return [
            m.m00.real, m.m00.imag, m.m01.real, m.m01.imag,
            m.m10.real, m.m10.imag, m.m11.real, m.m11.imag,
        ]
    raise ValueError(f"unknown representation {kind!r}")


def _cmd_convert(args) -> int:
    # --value takes inline JSON or a path to a file holding it
    raw = args.value
    if Path(raw).is_file():
        raw = Path(raw).read_text()
    vals = json.loads(raw)
    if not isinstance(vals, list):
        raise ValueError("--value must be a JSON array of floats")
    p = _parse_rep(args.from_rep, vals)
    _emit(_emit_rep(args.to_rep, p), args.out)
    return 0


def _cmd_grid(args) -> int:
    rect = tuple(args.rect)
    mesh = deform_mod.grid_mesh(args.rows, args.cols, rect)
    if args.out is None:
        print(json.dumps(mesh.to_json()))
    else:
        mesh.save(args.out)
    return 0


def _cmd_deform(args) -> int:
    mesh = deform_mod.Mesh.load(args.mesh)
    probes = deform_mod.probes_from_json(_read_json(args.probes))
    if args.weights is not None:
        weights = deform_mod.WeightField(_read_json(args.weights))
    else:
        weights = deform_mod.auto_weights(mesh, probes, alpha=args.alpha, eps=args.eps)
    positions = deform_mod.deform(mesh, probes, weights)
    out = deform_mod.Mesh(positions, mesh.triangles, mesh.uv)
    if args.out is None:
        print(json.dumps(out.to_json()))
    else:
        out.save(args.out)
    return 0


def _cmd_bench(args) -> int:
    if args.counts_only:
        rows = static_counts()
    else:
        rows = run_throughput(n=args.iterations, seed=args.seed, runs=args.runs)
    print(report_json(rows) if args.format == "json" else format_table(rows))
    return 0


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="dcn2d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("transform", help="apply a DCN to a points file")
    p.add_argument("--dcn", nargs=4, type=float, required=True,
                   metavar=("P0RE", "P0IM", "P1RE", "P1IM"))
    p.add_argument("--points", required=True, help="JSON list of [x, y]")
    _add_out(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("compose", help="compose DCNs (earlier flags apply first)")
    p.add_argument("--dcn", nargs=4, type=float, action="append", required=True,
                   metavar=("P0RE", "P0IM", "P1RE", "P1IM"))
    _add_out(p)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("blend", help="dual-number linear blending from a file")
    p.add_argument("--input", required=True,
                   help='JSON {"dcns": [[4 floats]...], "weights": [...]}')
    _add_out(p)
    p.set_defaults(func=_cmd_blend)

    p = sub.add_parser("slerp", help="geodesic interpolation between two DCNs")
    p.add_argument("--p", nargs=4, type=float, required=True)
    p.add_argument("--q", nargs=4, type=float, required=True)
    p.add_argument("--t", type=float, required=True,
                   help="parameter; values outside [0, 1] extrapolate")
    _add_out(p)
    p.set_defaults(func=_cmd_slerp)

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("--value", required=True,
                   help="JSON array of floats, inline or a file path")
    p.add_argument("--from", dest="from_rep", required=True,
                   choices=["dcn", "se2", "dualquat", "cmat2"])
    p.add_argument("--to", dest="to_rep", required=True,
                   choices=["dcn", "se2", "dualquat", "cmat2"])
    _add_out(p)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("grid", help="emit a rectangular grid mesh")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--rect", nargs=4, type=float, default=[0.0, 0.0, 1.0, 1.0],
                   metavar=("X0", "Y0", "X1", "Y1"))
    _add_out(p)
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("deform", help="deform a mesh by blended probe motions")
    p.add_argument("--mesh", required=True)
    p.add_argument("--probes", required=True)
    p.add_argument("--weights", default=None,
                   help="dense probes x vertices matrix; default: distance weights")
    p.add_argument("--alpha", type=float, default=deform_mod.DEFAULT_ALPHA)
    p.add_argument("--eps", type=float, default=deform_mod.DEFAULT_EPS)
    _add_out(p)
    p.set_defaults(func=_cmd_deform)

    p = sub.add_parser("bench", help="representation cost table")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=100_000)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--counts-only", action="store_true",
                   help="skip timing; audit operation counts only")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        print(f"dcn2d: {e}", file=sys.stderr)
        return 1
    except DcnError as e:
        print(f"dcn2d: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, ValueError, KeyError) as e:
        print(f"dcn2d: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
