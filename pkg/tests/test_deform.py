"""Probe-driven mesh deformation: weights, blending, rigidity, schemas."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dualcomplex import DegenerateBlend, act, dlb, from_rotation, from_translation
from dualcomplex.deform import (
    Mesh,
    Pose,
    Probe,
    WeightField,
    auto_weights,
    deform,
    deform_with_fallback,
    grid_mesh,
    probe_dcn,
    probes_from_json,
    probes_to_json,
)

angles = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
coords = st.floats(-4.0, 4.0, allow_nan=False, allow_infinity=False)


def _probe(cx0, cy0, a0, cx1, cy1, a1, pid="p"):
    return Probe(pid, Pose(complex(cx0, cy0), a0), Pose(complex(cx1, cy1), a1))


# --- probe motions ---------------------------------------------------------------

def test_probe_dcn_identity():
    p = _probe(0.3, -0.2, 0.4, 0.3, -0.2, 0.4)
    assert probe_dcn(p).components() == (1.0, 0.0, 0.0, 0.0)


def test_probe_dcn_pure_drag_is_translation():
    p = _probe(0.5, 0.5, 0.0, 1.5, 2.5, 0.0)
    assert probe_dcn(p) == from_translation(complex(1.0, 2.0))


def test_probe_dcn_half_turn_about_one():
    p = _probe(1.0, 0.0, 0.0, 1.0, 0.0, math.pi)
    q = probe_dcn(p)
    assert abs(q.p0 - 1j) < 1e-15 and abs(q.p1 + 1j) < 1e-15


@given(coords, coords, angles, coords, coords, angles)
def test_probe_dcn_maps_initial_center_to_current(x0, y0, a0, x1, y1, a1):
    p = _probe(x0, y0, a0, x1, y1, a1)
    q = probe_dcn(p)
    assert abs(act(q, complex(x0, y0)) - complex(x1, y1)) <= 1e-9
    # and rotates the local frame by the angle delta
    assert math.isclose(
        math.remainder(q.angle() - (a1 - a0), 2.0 * math.pi), 0.0, abs_tol=1e-9
    )


def test_probe_dcn_hemisphere_convention():
    # angle deltas near a full turn land on the -1 primal sheet; the
    # convention keeps Re(p0) >= 0 so freshly built probes blend together
    p = _probe(0.0, 0.0, 0.0, 0.0, 0.0, 1.9 * math.pi)
    assert probe_dcn(p).p0.real >= 0.0


# --- weights ----------------------------------------------------------------------

def test_auto_weights_single_probe_is_all_ones():
    mesh = grid_mesh(4, 5)
    w = auto_weights(mesh, [_probe(0.5, 0.5, 0, 0.5, 0.5, 0)])
    assert np.array_equal(w.w, np.ones((1, 20)))


def test_auto_weights_equidistant_pair_splits_evenly():
    mesh = Mesh(np.array([[0.0, 0.0]]), np.zeros((0, 3), dtype=int), np.array([[0.0, 0.0]]))
    probes = [_probe(-1, 0, 0, -1, 0, 0, "a"), _probe(1, 0, 0, 1, 0, 0, "b")]
    w = auto_weights(mesh, probes, alpha=2.0)
    assert np.allclose(w.w[:, 0], [0.5, 0.5])


def test_auto_weights_inverse_square_example():
    mesh = Mesh(np.array([[0.0, 0.0]]), np.zeros((0, 3), dtype=int), np.array([[0.0, 0.0]]))
    probes = [_probe(1, 0, 0, 1, 0, 0, "a"), _probe(2, 0, 0, 2, 0, 0, "b")]
    w = auto_weights(mesh, probes, alpha=2.0)
    assert np.allclose(w.w[:, 0], [0.8, 0.2], atol=1e-12)


def test_auto_weights_snaps_to_coincident_probe():
    mesh = Mesh(np.array([[1.0, 0.0]]), np.zeros((0, 3), dtype=int), np.array([[0.0, 0.0]]))
    probes = [_probe(1, 0, 0, 1, 0, 0, "on"), _probe(5, 5, 0, 5, 5, 0, "far")]
    w = auto_weights(mesh, probes, eps=1e-6)
    assert np.array_equal(w.w[:, 0], [1.0, 0.0])


def test_auto_weights_rows_sum_to_one_per_vertex():
    mesh = grid_mesh(6, 6, (0.0, 0.0, 2.0, 3.0))
    probes = [_probe(0.1, 0.2, 0, 1, 1, 0.5, "a"), _probe(1.9, 2.8, 0, 1, 2, -0.5, "b")]
    w = auto_weights(mesh, probes, alpha=1.5)
    assert np.allclose(w.w.sum(axis=0), 1.0, atol=1e-12)


def test_weight_field_validation():
    with pytest.raises(ValueError):
        WeightField(np.array([[0.5, -0.1]]))  # negative
    with pytest.raises(ValueError):
        WeightField(np.array([[1.0, 0.0], [1.0, 0.0]]))  # dead vertex column
    with pytest.raises(ValueError):
        WeightField(np.array([[float("nan"), 1.0]]))
    w = WeightField(np.array([[2.0, 1.0], [2.0, 3.0]]))
    assert np.allclose(w.normalized().sum(axis=0), 1.0)
    assert (w.n_probes, w.n_vertices) == (2, 2)


def test_auto_weights_requires_probes_and_positive_alpha():
    mesh = grid_mesh(2, 2)
    with pytest.raises(ValueError):
        auto_weights(mesh, [])
    with pytest.raises(ValueError):
        auto_weights(mesh, [_probe(0, 0, 0, 0, 0, 0)], alpha=0.0)


# --- deformation -------------------------------------------------------------------

def test_deform_at_rest_is_identity():
    mesh = grid_mesh(8, 8)
    probes = [_probe(0.2, 0.2, 0, 0.2, 0.2, 0, "a"), _probe(0.8, 0.7, 0, 0.8, 0.7, 0, "b")]
    out = deform(mesh, probes, auto_weights(mesh, probes))
    assert np.max(np.abs(out - mesh.vertices)) <= 1e-12


def test_single_probe_moves_mesh_rigidly():
    mesh = grid_mesh(9, 9, (0.0, 0.0, 2.0, 2.0))
    probes = [_probe(1.0, 1.0, 0.0, 1.4, 0.2, 1.1)]
    out = deform(mesh, probes, auto_weights(mesh, probes))
    q = probe_dcn(probes[0])
    for j, v in enumerate(mesh.vertices_complex()):
        w = act(q, v)
        assert abs(complex(out[j, 0], out[j, 1]) - w) <= 1e-12
    d0 = np.linalg.norm(mesh.vertices[None, :, :] - mesh.vertices[:, None, :], axis=2)
    d1 = np.linalg.norm(out[None, :, :] - out[:, None, :], axis=2)
    assert np.max(np.abs(d1 - d0)) <= 1e-9 * max(1.0, float(np.max(d0)))


def test_two_translating_probes_average():
    mesh = grid_mesh(3, 3)
    probes = [
        _probe(0.0, 0.0, 0, 1.0, 0.0, 0, "a"),  # translate +x by 1
        _probe(1.0, 1.0, 0, 1.0, 2.0, 0, "b"),  # translate +y by 1
    ]
    w = WeightField(np.full((2, 9), 0.5))
    out = deform(mesh, probes, w)
    assert np.allclose(out, mesh.vertices + [0.5, 0.5], atol=1e-12)


def test_one_hot_weights_follow_that_probe_exactly():
    mesh = grid_mesh(4, 4)
    probes = [_probe(0, 0, 0, 2, 1, 0.7, "a"), _probe(1, 1, 0, -1, 0, -0.3, "b")]
    w = np.zeros((2, 16))
    w[0, :8] = 1.0
    w[1, 8:] = 1.0
    out = deform(mesh, probes, WeightField(w))
    qa, qb = probe_dcn(probes[0]), probe_dcn(probes[1])
    vs = mesh.vertices_complex()
    for j in range(16):
        q = qa if j < 8 else qb
        assert abs(complex(out[j, 0], out[j, 1]) - act(q, vs[j])) <= 1e-12


def test_deform_matches_scalar_blend_oracle():
    mesh = grid_mesh(5, 7, (0.0, 0.0, 2.0, 1.0))
    probes = [
        _probe(0.2, 0.3, 0.0, 0.5, 0.1, 0.7, "a"),
        _probe(1.8, 0.8, 0.0, 1.2, 0.9, -2.9, "b"),
        _probe(1.0, 0.5, 0.0, 1.0, 0.5, 0.4, "c"),
    ]
    wf = auto_weights(mesh, probes)
    out = deform(mesh, probes, wf)
    ps = [probe_dcn(p) for p in probes]
    for j, v in enumerate(mesh.vertices_complex()):
        want = act(dlb(ps, list(wf.w[:, j])), v)
        assert abs(complex(out[j, 0], out[j, 1]) - want) <= 1e-12


def test_deform_is_left_equivariant():
    mesh = grid_mesh(6, 6)
    probes = [_probe(0.2, 0.2, 0, 0.6, 0.4, 0.9, "a"), _probe(0.9, 0.8, 0, 0.3, 0.2, -0.6, "b")]
    wf = auto_weights(mesh, probes)
    g = from_rotation(1.3, 0.4 + 0.2j) * from_translation(2 - 1j)

    def moved(p: Probe) -> Probe:
        c = act(g, p.current.center)
        return Probe(p.id, p.initial, Pose(c, p.current.angle + g.angle()))

    base = deform(mesh, probes, wf)
    shifted = deform(mesh, [moved(p) for p in probes], wf)
    want = np.array([[w.real, w.imag] for w in (act(g, complex(x, y)) for x, y in base)])
    assert np.max(np.abs(shifted - want)) <= 1e-9


def test_deform_weight_scaling_is_cosmetic():
    mesh = grid_mesh(4, 4)
    probes = [_probe(0, 0, 0, 1, 0, 0.5, "a"), _probe(1, 1, 0, 1, 2, -0.5, "b")]
    wf = auto_weights(mesh, probes)
    out1 = deform(mesh, probes, wf)
    out2 = deform(mesh, probes, WeightField(wf.w * 7.5))
    assert np.max(np.abs(out1 - out2)) <= 1e-12


def test_deform_is_deterministic():
    mesh = grid_mesh(5, 5)
    probes = [_probe(0.1, 0.1, 0, 0.7, 0.3, 1.2, "a"), _probe(0.9, 0.9, 0, 0.2, 0.8, -0.4, "b")]
    wf = auto_weights(mesh, probes)
    a = deform(mesh, probes, wf)
    b = deform(mesh, probes, wf)
    assert np.array_equal(a, b)


def _degenerate_setup():
    # the first probe anchors the alignment hemisphere at +1 but gets zero
    # weight; the half-turns by +-pi have primal parts +-i, both at right
    # angles to the anchor (so never flipped), and cancel exactly
    anchor = Probe("anchor", Pose(0j, 0.0), Pose(0j, 0.0))
    a = Probe("a", Pose(0j, 0.0), Pose(0j, math.pi))
    b = Probe("b", Pose(0j, 0.0), Pose(0j, -math.pi))
    probes = [anchor, a, b]
    weights = WeightField(np.array([[0.0], [0.5], [0.5]]).repeat(4, axis=1))
    return probes, weights


def test_deform_degenerate_raises_with_vertex_index():
    mesh = grid_mesh(2, 2)
    probes, wf = _degenerate_setup()
    with pytest.raises(DegenerateBlend) as exc:
        deform(mesh, probes, wf)
    assert exc.value.vertex == 0
    assert "vertex 0" in str(exc.value)


def test_deform_with_fallback_keeps_previous_positions():
    mesh = grid_mesh(2, 2)
    probes, wf = _degenerate_setup()
    prev = mesh.vertices + 10.0
    out, bad = deform_with_fallback(mesh, probes, wf, previous=prev)
    assert bad.tolist() == [0, 1, 2, 3]
    assert np.array_equal(out, prev)
    out2, bad2 = deform_with_fallback(mesh, probes, wf)
    assert np.array_equal(out2, mesh.vertices)  # rest positions by default
    assert bad2.tolist() == [0, 1, 2, 3]


# --- mesh and files -----------------------------------------------------------------

def test_grid_mesh_layout():
    mesh = grid_mesh(3, 4, (0.0, 0.0, 3.0, 2.0))
    assert mesh.vertices.shape == (12, 2)
    assert mesh.triangles.shape == (12, 3)  # 2 per cell, 2x3 cells
    assert mesh.uv.shape == (12, 2)
    assert mesh.vertices[0].tolist() == [0.0, 0.0]
    assert mesh.vertices[-1].tolist() == [3.0, 2.0]
    assert mesh.uv.min() == 0.0 and mesh.uv.max() == 1.0
    assert mesh.triangles.min() == 0 and mesh.triangles.max() == 11


def test_grid_mesh_validates_shape():
    with pytest.raises(ValueError):
        grid_mesh(1, 5)
    with pytest.raises(ValueError):
        grid_mesh(5, 1)


def test_mesh_validation():
    verts = np.zeros((3, 2))
    uv = np.zeros((3, 2))
    with pytest.raises(ValueError):
        Mesh(verts, np.array([[0, 1, 3]]), uv)  # index out of range
    with pytest.raises(ValueError):
        Mesh(verts, np.array([[0, 1, 2]]), np.zeros((2, 2)))  # uv mismatch
    with pytest.raises(ValueError):
        Mesh(np.array([[0.0, float("nan")]]), np.zeros((0, 3), dtype=int), np.zeros((1, 2)))


def test_mesh_is_immutable():
    mesh = grid_mesh(2, 2)
    with pytest.raises(ValueError):
        mesh.vertices[0, 0] = 5.0


def test_mesh_json_round_trip(tmp_path):
    mesh = grid_mesh(3, 3, (0.5, -0.25, 1.75, 2.0))
    path = tmp_path / "mesh.json"
    mesh.save(path)
    again = Mesh.load(path)
    assert np.array_equal(mesh.vertices, again.vertices)
    assert np.array_equal(mesh.triangles, again.triangles)
    assert np.array_equal(mesh.uv, again.uv)
    blob = json.loads(path.read_text())
    assert set(blob) == {"vertices", "triangles", "uv"}


def test_probe_json_round_trip():
    probes = [
        _probe(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, "left"),
        _probe(-1, 2, -3, 4, -5, 6, "right"),
    ]
    blob = probes_to_json(probes)
    assert blob[0]["initial"] == {"center": [0.1, 0.2], "angle": 0.3}
    again = probes_from_json(blob)
    assert again == probes
