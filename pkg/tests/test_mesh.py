import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_systole, cycle_bounds, small_corpus
from syscat_lab.errors import (
    CoverTooLarge,
    Disconnected,
    NoNontrivialClass,
    NotClosedSurface,
    ParseError,
    TriangleInequalityViolated,
)
from syscat_lab.mesh import (
    ChordComplex,
    area,
    dump_mesh,
    load_mesh,
    make_mesh,
    optimize_ratio,
    perturbed,
    rp2_6,
    subdivide,
    systole_h1z2,
    systolic_ratio,
    torus7,
    z2_homology_basis,
)
from syscat_lab.mesh.library import grid_surface, icosahedron, octahedron, rp2_geodesic, tetrahedron
from syscat_lab.mesh.trimesh import face_edges

CORPUS = small_corpus()


def test_corpus_covers_four_surfaces():
    names = {m.surface_name for _, m in CORPUS}
    assert {"sphere", "orientable genus 1", "projective plane", "Klein bottle"} <= names
    assert len(CORPUS) >= 20
    assert all(m.n_vertices <= 12 for _, m in CORPUS)


@pytest.mark.parametrize("name,mesh", CORPUS, ids=[n for n, _ in CORPUS])
def test_cover_systole_matches_brute_force(name, mesh):
    expected = brute_force_systole(mesh)
    if expected is None:
        assert mesh.z2_betti1 == 0
        with pytest.raises(NoNontrivialClass):
            systole_h1z2(mesh)
        return
    got = systole_h1z2(mesh)
    assert math.isclose(got.length, expected, rel_tol=1e-12)


@pytest.mark.parametrize("name,mesh", [c for c in CORPUS if c[1].z2_betti1], ids=lambda x: x if isinstance(x, str) else "")
def test_witness_is_a_nonbounding_closed_path(name, mesh):
    loop = systole_h1z2(mesh)
    assert loop.cycle[0] == loop.cycle[-1]
    total = sum(mesh.length(u, v) for u, v in zip(loop.cycle, loop.cycle[1:]))
    assert math.isclose(total, loop.length, rel_tol=1e-12)
    assert not cycle_bounds(mesh, loop.cycle)
    assert z2_homology_basis(mesh).class_of(loop.cycle) != 0


@pytest.mark.parametrize("name,mesh", CORPUS[:12], ids=[n for n, _ in CORPUS[:12]])
def test_face_boundaries_are_null(name, mesh):
    basis = z2_homology_basis(mesh)
    assert basis.rank == mesh.z2_betti1 == 2 - mesh.euler_characteristic
    for a, b, c in mesh.faces:
        assert basis.class_of((a, b, c, a)) == 0


def test_euler_characteristics():
    assert tetrahedron().euler_characteristic == 2
    assert torus7().euler_characteristic == 0
    assert rp2_6().euler_characteristic == 1
    assert not rp2_6().orientable
    assert grid_surface(3, 3, twist=True).surface_name == "Klein bottle"


def test_sphere_has_no_systole():
    with pytest.raises(NoNontrivialClass):
        systolic_ratio(icosahedron())


def test_cover_cap():
    with pytest.raises(CoverTooLarge):
        systole_h1z2(torus7(), b1_cap=1)


def test_torus7_unit_systole():
    # seven-vertex torus with unit edges: shortest nontrivial loop uses 3 edges
    assert systole_h1z2(torus7()).length == pytest.approx(3.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 10.0), st.integers(0, 2**31))
def test_ratio_is_scale_invariant(lam, seed):
    mesh = perturbed(torus7(), 0.8, 1.2, np.random.default_rng(seed))
    r1 = systolic_ratio(mesh, 1)
    r2 = systolic_ratio(mesh.scaled(lam), 1)
    assert r2.sysh1_z2 == pytest.approx(lam * r1.sysh1_z2, rel=1e-12)
    assert r2.area == pytest.approx(lam**2 * r1.area, rel=1e-12)
    assert r2.ratio == pytest.approx(r1.ratio, rel=1e-12)


@pytest.mark.parametrize("mesh", [torus7(), rp2_6(round_metric=True), grid_surface(3, 3, twist=True)])
def test_chord_systole_is_monotone_in_levels(mesh):
    values = [ChordComplex(mesh, k).systole() for k in range(4)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(values, values[1:]))
    assert values[0] == pytest.approx(systole_h1z2(mesh).length, rel=1e-12)


def test_edge_metric_upper_bounds_chord_metric():
    mesh = torus7()
    for k in range(3):
        edge = systolic_ratio(mesh, k, chords=False).sysh1_z2
        chord = systolic_ratio(mesh, k).sysh1_z2
        assert chord <= edge * (1 + 1e-12)


def test_subdivision_keeps_area_and_topology():
    mesh = rp2_6(round_metric=True)
    fine = subdivide(mesh, 2)
    assert fine.euler_characteristic == mesh.euler_characteristic
    assert area(fine) == pytest.approx(area(mesh), rel=1e-12)


def test_chord_loop_points_close_up():
    cc = ChordComplex(torus7(), 2)
    points, length = cc.shortest_loop()
    assert points[0] == points[-1]
    assert length == pytest.approx(cc.systole())


def test_rp2_geodesic_is_projective_plane():
    mesh = rp2_geodesic(2)
    assert mesh.surface_name == "projective plane"
    assert mesh.n_vertices == 21
    assert area(mesh) == pytest.approx(2 * math.pi, rel=0.05)


def test_optimizer_is_deterministic_and_monotone():
    start = perturbed(torus7(), 0.8, 1.2, np.random.default_rng(3))
    h1, h2 = [], []
    m1, r1 = optimize_ratio(start, 5, 0.05, 11, levels=1, history=h1)
    m2, r2 = optimize_ratio(start, 5, 0.05, 11, levels=1, history=h2)
    assert h1 == h2
    assert dict(m1.edge_lengths) == dict(m2.edge_lengths)
    ratios = [row[1] for row in h1]
    assert ratios == sorted(ratios)
    assert r1.ratio == pytest.approx(ratios[-1])
    assert area(m1) == pytest.approx(1.0)


def test_optimizer_rejects_bad_arguments():
    with pytest.raises(ValueError):
        optimize_ratio(torus7(), 0, 0.01, 1)
    with pytest.raises(ValueError):
        optimize_ratio(torus7(), 1, 0.0, 1)


# ---- construction errors and file format ------------------------------------------------


def _unit(faces):
    return {e: 1.0 for f in faces for e in face_edges(f)}


def test_open_surface_rejected():
    faces = [(0, 1, 2), (0, 2, 3)]
    with pytest.raises(NotClosedSurface):
        make_mesh(faces, _unit(faces))


def test_disconnected_rejected():
    t = tetrahedron()
    faces = list(t.faces) + [tuple(v + 4 for v in f) for f in t.faces]
    with pytest.raises(Disconnected):
        make_mesh(faces, _unit(faces))


def test_triangle_inequality_rejected():
    t = tetrahedron()
    lengths = dict(t.edge_lengths)
    lengths[t.edges[0]] = 2.0
    with pytest.raises(TriangleInequalityViolated):
        t.with_lengths(lengths)


def test_round_trip():
    mesh = perturbed(octahedron(), 0.9, 1.1, np.random.default_rng(0))
    again = load_mesh(dump_mesh(mesh))
    assert again.faces == mesh.faces
    assert dict(again.edge_lengths) == pytest.approx(dict(mesh.edge_lengths))


@pytest.mark.parametrize(
    "text",
    [
        "",
        "mesh v2\nvertices 4\n",
        "systole-mesh v1\nvertices 4\nfaces 1\n0 1\n",
        "systole-mesh v1\nvertices 4\nfaces 1\n0 1 2\nlengths\n0 1 x\n",
        "systole-mesh v1\nvertices three\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises((ParseError, NotClosedSurface)):
        load_mesh(text)


def test_missing_length_line():
    text = dump_mesh(tetrahedron())
    lines = [l for l in text.splitlines() if l.strip()]
    with pytest.raises((ParseError, NotClosedSurface)):
        load_mesh("\n".join(lines[:-1]) + "\n")
