"""Local HTTP boundary for the browser frontend.

Speaks the same JSON schemas as the command line (mesh / probes / weights
files; DCNs as flat ``[p0.re, p0.im, p1.re, p1.im]``), so a session saved
by a client replays headlessly through ``dcn2d deform``.  All algebra runs
here; clients only draw.

    python3 -m dualcomplex.service --port 8787

Endpoints: GET /health; POST /grid, /probe-dcns, /weights, /blend,
/deform (fail-hard, command-line semantics) and /frame (interactive
semantics: degenerate vertices hold their previous position and are
reported, never fatal).  Domain failures are HTTP 422 with the error
class name in the detail string.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from . import deform as deform_mod
from .algebra import UnitDcn, dlb
from .errors import DcnError

__all__ = ["app", "create_app"]


class GridRequest(BaseModel):
    rows: int
    cols: int
    rect: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0)


class ProbesRequest(BaseModel):
    probes: list[dict]


class WeightsRequest(BaseModel):
    mesh: dict
    probes: list[dict]
    alpha: float = deform_mod.DEFAULT_ALPHA
    eps: float = deform_mod.DEFAULT_EPS


class BlendRequest(BaseModel):
    dcns: list[tuple[float, float, float, float]]
    weights: list[float]


class DeformRequest(BaseModel):
    mesh: dict
    probes: list[dict]
    weights: list[list[float]] | None = None
    alpha: float = deform_mod.DEFAULT_ALPHA
    eps: float = deform_mod.DEFAULT_EPS


class FrameRequest(BaseModel):
    # flat per-frame payload: rest vertices, probe poses, weight matrix
    vertices: list[tuple[float, float]]
    probes: list[dict]
    weights: list[list[float]]
    previous: list[tuple[float, float]] | None = Field(
        default=None, description="fallback positions for degenerate vertices"
    )


def _domain(e: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


def _probes(blobs: list[dict]) -> list[deform_mod.Probe]:
    try:
        return deform_mod.probes_from_json(blobs)
    except (KeyError, TypeError, ValueError) as e:
        raise _domain(e)


def _flat(p: UnitDcn) -> list[float]:
    return [p.p0.real, p.p0.imag, p.p1.real, p.p1.imag]


def create_app() -> FastAPI:
    app = FastAPI(title="dualcomplex service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/health")
    def health() -> dict:
        return {"ok": True, "version": __version__}

    @app.post("/grid")
    def grid(req: GridRequest) -> dict:
        try:
            return deform_mod.grid_mesh(req.rows, req.cols, req.rect).to_json()
        except ValueError as e:
            raise _domain(e)

    @app.post("/probe-dcns")
    def probe_dcns(req: ProbesRequest) -> dict:
        ps = _probes(req.probes)
        return {"dcns": [_flat(deform_mod.probe_dcn(p)) for p in ps]}

    @app.post("/weights")
    def weights(req: WeightsRequest) -> dict:
        try:
            mesh = deform_mod.Mesh.from_json(req.mesh)
            w = deform_mod.auto_weights(mesh, _probes(req.probes), req.alpha, req.eps)
        except (ValueError, DcnError) as e:
            raise _domain(e)
        return {"weights": w.to_json()}

    @app.post("/blend")
    def blend(req: BlendRequest) -> dict:
        try:
            ps = [UnitDcn(complex(a, b), complex(c, d)) for a, b, c, d in req.dcns]
            out = dlb(ps, list(req.weights))
        except (ValueError, DcnError) as e:
            raise _domain(e)
        return {"dcn": _flat(out)}

    @app.post("/deform")
    def deform(req: DeformRequest) -> dict:
        try:
            mesh = deform_mod.Mesh.from_json(req.mesh)
            probes = _probes(req.probes)
            if req.weights is not None:
                w = deform_mod.WeightField(np.asarray(req.weights, dtype=float))
            else:
                w = deform_mod.auto_weights(mesh, probes, req.alpha, req.eps)
            out = deform_mod.deform(mesh, probes, w)
        except (ValueError, DcnError) as e:
            raise _domain(e)
        return {"vertices": out.tolist()}

    @app.post("/frame")
    def frame(req: FrameRequest) -> dict:
        try:
            verts = np.asarray(req.vertices, dtype=float)
            n = len(verts)
            mesh = deform_mod.Mesh(
                verts, np.zeros((0, 3), dtype=int), np.zeros((n, 2))
            )
            probes = _probes(req.probes)
            w = deform_mod.WeightField(np.asarray(req.weights, dtype=float))
            prev = None
            if req.previous is not None:
                prev = np.asarray(req.previous, dtype=float)
            out, bad = deform_mod.deform_with_fallback(mesh, probes, w, previous=prev)
        except (ValueError, DcnError) as e:
            raise _domain(e)
        return {
            "vertices": out.tolist(),
            "degenerate": bad.tolist(),
            "probe_dcns": [_flat(deform_mod.probe_dcn(p)) for p in probes],
        }

    return app


app = create_app()


def main() -> None:
    import argparse

    import uvicorn

    ap = argparse.ArgumentParser(description="serve the deformation boundary")
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=8787)
    ap.add_argument("--log-level", default="warning")
    args = ap.parse_args()
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)


if __name__ == "__main__":
    main()
