#!/usr/bin/env python3
"""End-to-end deformer demo: build a grid, twist two probes, write the files.

    python3 scripts/deform_demo.py --rows 30 --cols 30 --out-dir demo/

Writes mesh.json, probes.json, weights.json and deformed.json in the CLI
schemas, so the result replays with:

    dcn2d deform --mesh demo/mesh.json --probes demo/probes.json \
        --weights demo/weights.json --out demo/replay.json
"""

import argparse
import json
import math
import pathlib

import numpy as np

from dualcomplex.deform import (
    Mesh,
    Pose,
    Probe,
    auto_weights,
    deform,
    grid_mesh,
    probes_to_json,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=30)
    ap.add_argument("--cols", type=int, default=30)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--out-dir", type=pathlib.Path, default=None)
    args = ap.parse_args()

    mesh = grid_mesh(args.rows, args.cols)
    probes = [
        Probe("left", Pose(0.25 + 0.5j, 0.0), Pose(0.2 + 0.35j, -math.pi / 3)),
        Probe("right", Pose(0.75 + 0.5j, 0.0), Pose(0.85 + 0.6j, math.pi / 4)),
    ]
    weights = auto_weights(mesh, probes, alpha=args.alpha)
    out = deform(mesh, probes, weights)

    disp = np.linalg.norm(out - mesh.vertices, axis=1)
    print(f"{len(mesh)} vertices, {len(probes)} probes")
    print(f"displacement: mean {disp.mean():.4f}, max {disp.max():.4f}")

    if args.out_dir is not None:
        d = args.out_dir
        d.mkdir(parents=True, exist_ok=True)
        mesh.save(d / "mesh.json")
        (d / "probes.json").write_text(json.dumps(probes_to_json(probes), indent=2))
        (d / "weights.json").write_text(json.dumps(weights.to_json()))
        Mesh(out, mesh.triangles, mesh.uv).save(d / "deformed.json")
        print(f"wrote mesh/probes/weights/deformed under {d}/")


if __name__ == "__main__":
    main()
