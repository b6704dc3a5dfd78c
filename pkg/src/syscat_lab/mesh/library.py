"""Small named triangulations used by the tests, demos and experiments."""
from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import TriangleInequalityViolated
from .trimesh import Edge, Face, TriMesh, edge_key, make_mesh

GOLDEN = (1 + math.sqrt(5)) / 2


def tetrahedron(length: float = 1.0) -> TriMesh:
    return make_mesh([(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)], length)


def _hull_faces(points: np.ndarray, edge_len: float) -> list[Face]:
    n = len(points)
    adj = {
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if abs(np.linalg.norm(points[i] - points[j]) - edge_len) < 1e-9
    }
    faces = []
    for i, j, k in itertools.combinations(range(n), 3):
        if (i, j) in adj and (j, k) in adj and (i, k) in adj:
            p, q, r = points[i], points[j], points[k]
            if np.dot(np.cross(q - p, r - p), p + q + r) < 0:
                j, k = k, j
            faces.append((i, j, k))
    return faces


def _icosahedron_points() -> np.ndarray:
    pts = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            pts += [(0, s1, s2 * GOLDEN), (s1, s2 * GOLDEN, 0), (s2 * GOLDEN, 0, s1)]
    return np.array(pts, dtype=float)


def octahedron(length: float = 1.0) -> TriMesh:
    pts = np.vstack([np.eye(3), -np.eye(3)])
    return make_mesh(_hull_faces(pts, math.sqrt(2)), length)


def icosahedron(length: float = 1.0) -> TriMesh:
    return make_mesh(_hull_faces(_icosahedron_points(), 2.0), length)


def icosahedron_faces() -> list[Face]:
    return _hull_faces(_icosahedron_points(), 2.0)


def bipyramid(k: int, length: float = 1.0) -> TriMesh:
    """Suspension of a k-gon: vertices 0..k-1 on the equator, poles k and k+1."""
    faces = []
    for i in range(k):
        j = (i + 1) % k
        faces += [(i, j, k), (j, i, k + 1)]
    return make_mesh(faces, length)


def torus7(length: float = 1.0) -> TriMesh:
    """Minimal 7-vertex torus; with unit lengths it is a flat hexagonal torus."""
    faces = []
    for i in range(7):
        faces += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 3) % 7, (i + 2) % 7)]
    return make_mesh(faces, length)


def rp2_6(round_metric: bool = False, length: float = 1.0) -> TriMesh:
    """Six-vertex projective plane: the icosahedron modulo the antipodal map.

    With ``round_metric`` every edge gets its great-circle arc length on
    the unit sphere, arctan(2).
    """
    pts = _icosahedron_points()
    n = len(pts)
    antipode = [int(np.argmin(np.linalg.norm(pts + pts[i], axis=1))) for i in range(n)]
    cls: dict[int, int] = {}
    for i in range(n):
        if i not in cls:
            cls[i] = cls[antipode[i]] = len(cls) // 2
    faces = sorted({tuple(sorted(cls[v] for v in f)) for f in _hull_faces(pts, 2.0)})
    if round_metric:
        length = math.atan(2.0)
    return make_mesh(faces, length)


def rp2_geodesic(frequency: int = 2) -> TriMesh:
    """Antipodal quotient of the frequency-``f`` geodesic icosphere, round edge lengths.

    Each icosahedron face is cut into ``f**2`` triangles, vertices are
    pushed to the unit sphere and every edge gets its great-circle arc
    length.  The icosphere is centrally symmetric, so the quotient is a
    triangulated projective plane; ``frequency=1`` gives the six-vertex mesh.
    """
    if frequency < 1:
        raise ValueError("frequency must be >= 1")
    f = frequency
    corners = _icosahedron_points()
    corners /= np.linalg.norm(corners, axis=1)[:, None]
    pts: list[np.ndarray] = []
    index: dict[tuple, int] = {}

    def vid(x: np.ndarray) -> int:
        x = x / np.linalg.norm(x)
        key = tuple(np.round(x, 9))
        if key not in index:
            index[key] = len(pts)
            pts.append(x)
        return index[key]

    fine: list[Face] = []
    for a, b, c in icosahedron_faces():
        A, B, C = corners[a], corners[b], corners[c]
        grid = {(i, j): vid((i * A + j * B + (f - i - j) * C) / f) for i in range(f + 1) for j in range(f + 1 - i)}
        for i in range(f):
            for j in range(f - i):
                fine.append((grid[i, j], grid[i + 1, j], grid[i, j + 1]))
                if i + j < f - 1:
                    fine.append((grid[i + 1, j], grid[i + 1, j + 1], grid[i, j + 1]))
    P = np.array(pts)
    antipode = [int(np.argmin(np.linalg.norm(P + p, axis=1))) for p in P]
    cls: dict[int, int] = {}
    for i in range(len(P)):
        if i not in cls:
            cls[i] = cls[antipode[i]] = len(cls) // 2
    faces: list[Face] = []
    seen: set[frozenset] = set()
    lengths: dict[Edge, float] = {}
    for face in fine:
        key = frozenset(cls[v] for v in face)
        if key in seen:
            continue
        seen.add(key)
        faces.append(tuple(cls[v] for v in face))  # type: ignore[arg-type]
        for u, v in itertools.combinations(face, 2):
            lengths[edge_key(cls[u], cls[v])] = math.acos(float(np.clip(P[u] @ P[v], -1.0, 1.0)))
    return make_mesh(faces, lengths, n_vertices=len(P) // 2)


def grid_surface(m: int, n: int, twist: bool = False) -> TriMesh:
    """Flat m-by-n square grid, each square cut along a diagonal.

    Opposite sides are glued straight (torus) or, with ``twist``, the
    second gluing reverses direction (Klein bottle).  Sides 1, diagonals
    sqrt(2).
    """

    def vid(i: int, j: int) -> int:
        if i == m:
            i, j = 0, ((-j) % n if twist else j)
        return i * n + (j % n)

    faces = []
    lengths: dict[Edge, float] = {}
    for i in range(m):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            faces += [(a, b, d), (a, d, c)]
            lengths[edge_key(a, b)] = 1.0
            lengths[edge_key(a, c)] = 1.0
            lengths[edge_key(a, d)] = math.sqrt(2.0)
    return make_mesh(faces, lengths, n_vertices=m * n)


def stellar(mesh: TriMesh, face_index: int) -> TriMesh:
    """Cone a face from its centroid; the flat metric is unchanged."""
    a, b, c = mesh.faces[face_index]
    lab, lbc, lca = mesh.length(a, b), mesh.length(b, c), mesh.length(c, a)
    # place a, b, c in the plane and measure centroid distances
    pa = np.array([0.0, 0.0])
    pb = np.array([lab, 0.0])
    x = (lab**2 + lca**2 - lbc**2) / (2 * lab)
    pc = np.array([x, math.sqrt(max(lca**2 - x**2, 0.0))])
    cen = (pa + pb + pc) / 3
    z = mesh.n_vertices
    lengths = dict(mesh.edge_lengths)
    lengths[edge_key(a, z)] = float(np.linalg.norm(pa - cen))
    lengths[edge_key(b, z)] = float(np.linalg.norm(pb - cen))
    lengths[edge_key(c, z)] = float(np.linalg.norm(pc - cen))
    faces = list(mesh.faces)
    faces[face_index:face_index + 1] = [(a, b, z), (b, c, z), (c, a, z)]
    return make_mesh(faces, lengths, n_vertices=z + 1)


def perturbed(mesh: TriMesh, low: float, high: float, rng: np.random.Generator, tries: int = 1000) -> TriMesh:
    """Multiply every edge length by an independent uniform factor in [low, high]."""
    for _ in range(tries):
        factors = rng.uniform(low, high, size=mesh.n_edges)
        lengths = {e: mesh.edge_lengths[e] * f for e, f in zip(mesh.edges, factors)}
        try:
            return mesh.with_lengths(lengths)
        except TriangleInequalityViolated:
            continue
    raise RuntimeError("could not draw a perturbation satisfying the triangle inequalities")


def named_surface(name: str) -> TriMesh:
    """Look up a built-in mesh by name (as accepted on the command line)."""
    table = {
        "tetrahedron": tetrahedron,
        "octahedron": octahedron,
        "icosahedron": icosahedron,
        "torus7": torus7,
        "rp2": rp2_6,
        "rp2-round": lambda: rp2_6(round_metric=True),
        "rp2-geodesic": lambda: rp2_geodesic(2),
        "torus3x3": lambda: grid_surface(3, 3),
        "klein3x4": lambda: grid_surface(3, 4, twist=True),
    }
    if name not in table:
        raise KeyError(f"unknown built-in surface {name!r}; choose from {sorted(table)}")
    return table[name]()
