"""Closed triangulated surfaces carrying a piecewise-flat metric.

A mesh is a pure simplicial 2-complex in which every edge has an
assigned positive length.  Each face is then an honest flat Euclidean
triangle, and the surface is the union of those triangles glued
isometrically along their edges.
"""
from __future__ import annotations

import math
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from ..errors import (
    Disconnected,
    MeshError,
    NotClosedSurface,
    ParseError,
    TriangleInequalityViolated,
)

Edge = tuple[int, int]
Face = tuple[int, int, int]

MESH_HEADER = "systole-mesh v1"


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def face_edges(face: Face) -> tuple[Edge, Edge, Edge]:
    a, b, c = face
    return edge_key(a, b), edge_key(b, c), edge_key(a, c)


@dataclass(frozen=True)
class TriMesh:
    """Validated closed connected surface with per-edge lengths.

    Build instances with :func:`make_mesh` or :func:`load_mesh`; both
    check the closed-surface, connectivity and triangle-inequality
    conditions and fill in the derived fields.
    """

    n_vertices: int
    faces: tuple[Face, ...]
    edge_lengths: Mapping[Edge, float]
    orientable: bool
    euler_characteristic: int
    z2_betti1: int
    edges: tuple[Edge, ...] = field(repr=False)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def length(self, u: int, v: int) -> float:
        return self.edge_lengths[edge_key(u, v)]

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def edge_faces(self) -> dict[Edge, list[int]]:
        out: dict[Edge, list[int]] = defaultdict(list)
        for i, f in enumerate(self.faces):
            for e in face_edges(f):
                out[e].append(i)
        return dict(out)

    def scaled(self, factor: float) -> "TriMesh":
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return self.with_lengths({e: factor * l for e, l in self.edge_lengths.items()})

    def with_lengths(self, lengths: Mapping[Edge, float]) -> "TriMesh":
        return make_mesh(self.faces, lengths, n_vertices=self.n_vertices)

    @property
    def surface_name(self) -> str:
        chi = self.euler_characteristic
        if self.orientable:
            return "sphere" if chi == 2 else f"orientable genus {(2 - chi) // 2}"
        if chi == 1:
            return "projective plane"
        if chi == 0:
            return "Klein bottle"
        return f"non-orientable genus {2 - chi}"


def make_mesh(
    faces: Iterable[Iterable[int]],
    lengths: Mapping[Edge, float] | float,
    n_vertices: int | None = None,
) -> TriMesh:
    """Validate combinatorics and metric, returning a :class:`TriMesh`.

    ``lengths`` is either a map keyed by vertex pairs (any order) or a single
    number assigned to every edge.
    """
    faces_t: list[Face] = []
    for f in faces:
        f = tuple(int(x) for x in f)
        if len(f) != 3 or len(set(f)) != 3:
            raise NotClosedSurface(f"face {f} is not a triangle on three distinct vertices")
        faces_t.append(f)  # type: ignore[arg-type]
    if not faces_t:
        raise NotClosedSurface("mesh has no faces")
    used = {v for f in faces_t for v in f}
    if n_vertices is None:
        n_vertices = max(used) + 1
    if min(used) < 0 or max(used) >= n_vertices:
        raise NotClosedSurface("face refers to a vertex id outside 0..N-1")
    missing = set(range(n_vertices)) - used
    if missing:
        raise NotClosedSurface(f"vertices {sorted(missing)} belong to no face")
    if len({frozenset(f) for f in faces_t}) != len(faces_t):
        raise NotClosedSurface("repeated face")

    incidence: dict[Edge, list[int]] = defaultdict(list)
    for i, f in enumerate(faces_t):
        for e in face_edges(f):
            incidence[e].append(i)
    for e, fs in incidence.items():
        if len(fs) != 2:
            raise NotClosedSurface(f"edge {e} belongs to {len(fs)} face(s), expected 2")
    _check_links(faces_t, n_vertices)

    # connectivity through shared edges
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for e in face_edges(faces_t[i]):
            for j in incidence[e]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    if len(seen) != len(faces_t):
        raise Disconnected(f"mesh has {len(faces_t) - len(seen)} face(s) unreachable from face 0")

    edges = tuple(sorted(incidence))
    if isinstance(lengths, (int, float)):
        lmap = {e: float(lengths) for e in edges}
    else:
        lmap = {}
        for (u, v), l in lengths.items():
            lmap[edge_key(int(u), int(v))] = float(l)
        extra = set(lmap) - set(edges)
        if extra:
            raise MeshError(f"lengths given for non-edges {sorted(extra)}")
        absent = [e for e in edges if e not in lmap]
        if absent:
            raise MeshError(f"no length given for edges {absent}")
        lmap = {e: lmap[e] for e in edges}
    for e, l in lmap.items():
        if not (l > 0 and math.isfinite(l)):
            raise MeshError(f"edge {e} has non-positive length {l}")
    for f in faces_t:
        a, b, c = (lmap[e] for e in face_edges(f))
        if not (a < b + c and b < a + c and c < a + b):
            raise TriangleInequalityViolated(f, (a, b, c))

    chi = n_vertices - len(edges) + len(faces_t)
    return TriMesh(
        n_vertices=n_vertices,
        faces=tuple(faces_t),
        edge_lengths=MappingProxyType(lmap),
        orientable=_orientable(faces_t, incidence),
        euler_characteristic=chi,
        z2_betti1=2 - chi,
        edges=edges,
    )


def _check_links(faces: list[Face], n_vertices: int) -> None:
    link: dict[int, dict[int, list[int]]] = {v: defaultdict(list) for v in range(n_vertices)}
    for a, b, c in faces:
        for v, x, y in ((a, b, c), (b, c, a), (c, a, b)):
            link[v][x].append(y)
            link[v][y].append(x)
    for v, adj in link.items():
        if any(len(nb) != 2 for nb in adj.values()):
            raise NotClosedSurface(f"link of vertex {v} is not a cycle")
        start = next(iter(adj))
        prev, cur, steps = None, start, 0
        while True:
            a, b = adj[cur]
            nxt = a if a != prev else b
            prev, cur = cur, nxt
            steps += 1
            if cur == start:
                break
        if steps != len(adj):
            raise NotClosedSurface(f"link of vertex {v} is not a single cycle")


def _orientable(faces: list[Face], incidence: Mapping[Edge, list[int]]) -> bool:
    # orientation[i] = +1 keeps the stored vertex order, -1 reverses it
    orientation = {0: 1}
    queue = deque([0])

    def directed(i: int, sign: int) -> set[tuple[int, int]]:
        a, b, c = faces[i]
        cyc = [(a, b), (b, c), (c, a)]
        return set(cyc) if sign > 0 else {(y, x) for x, y in cyc}

    while queue:
        i = queue.popleft()
        di = directed(i, orientation[i])
        for e in face_edges(faces[i]):
            for j in incidence[e]:
                if j == i:
                    continue
                u, v = e
                # compatible orientations traverse the shared edge oppositely
                fwd = (u, v) in di
                want = 1 if ((u, v) in directed(j, 1)) != fwd else -1
                if j not in orientation:
                    orientation[j] = want
                    queue.append(j)
                elif orientation[j] != want:
                    return False
    return True


def area(mesh: TriMesh) -> float:
    """Total area: sum of Heron areas of the flat faces."""
    return math.fsum(face_area(*(mesh.edge_lengths[e] for e in face_edges(f))) for f in mesh.faces)


def face_area(a: float, b: float, c: float) -> float:
    # Kahan's cancellation-safe Heron formula
    a, b, c = sorted((a, b, c), reverse=True)
    prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    return 0.25 * math.sqrt(max(prod, 0.0))


def subdivide(mesh: TriMesh, levels: int = 1) -> TriMesh:
    """Midpoint (1-to-4) subdivision, repeated ``levels`` times.

    Midpoint segments get half the length of the parallel side, so the
    piecewise-flat metric is unchanged.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    for _ in range(levels):
        mesh = _subdivide_once(mesh)
    return mesh


def _subdivide_once(mesh: TriMesh) -> TriMesh:
    mid = {e: mesh.n_vertices + i for i, e in enumerate(mesh.edges)}
    lengths: dict[Edge, float] = {}
    for (u, v), l in mesh.edge_lengths.items():
        m = mid[(u, v)]
        lengths[edge_key(u, m)] = l / 2
        lengths[edge_key(v, m)] = l / 2
    faces: list[Face] = []
    for a, b, c in mesh.faces:
        mab, mbc, mca = mid[edge_key(a, b)], mid[edge_key(b, c)], mid[edge_key(c, a)]
        faces += [(a, mab, mca), (mab, b, mbc), (mca, mbc, c), (mab, mbc, mca)]
        lengths[edge_key(mab, mbc)] = mesh.length(a, c) / 2
        lengths[edge_key(mbc, mca)] = mesh.length(a, b) / 2
        lengths[edge_key(mca, mab)] = mesh.length(b, c) / 2
    return make_mesh(faces, lengths, n_vertices=mesh.n_vertices + len(mesh.edges))


_INT = re.compile(r"^-?\d+$")


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def load_mesh(text: str) -> TriMesh:
    """Parse the ``systole-mesh v1`` text format and validate the result."""
    lines = _content_lines(text)
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of input, expected {what}")
        item = lines[pos]
        pos += 1
        return item

    no, line = take("header")
    if line != MESH_HEADER:
        raise ParseError(f"line {no}: expected '{MESH_HEADER}', got {line!r}")
    n_vertices = _keyword_int(take("'vertices N'"), "vertices")
    n_faces = _keyword_int(take("'faces M'"), "faces")
    faces = []
    for _ in range(n_faces):
        no, line = take("face line")
        parts = line.split()
        if len(parts) != 3 or not all(_INT.match(p) for p in parts):
            raise ParseError(f"line {no}: face line must be three integer ids, got {line!r}")
        faces.append(tuple(int(p) for p in parts))
    no, line = take("'lengths'")
    if line != "lengths":
        raise ParseError(f"line {no}: expected 'lengths', got {line!r}")
    lengths: dict[Edge, float] = {}
    while pos < len(lines):
        no, line = take("length line")
        parts = line.split()
        if len(parts) != 3 or not (_INT.match(parts[0]) and _INT.match(parts[1])):
            raise ParseError(f"line {no}: length line must be 'i j L', got {line!r}")
        try:
            value = float(parts[2])
        except ValueError:
            raise ParseError(f"line {no}: bad length {parts[2]!r}") from None
        if not value > 0:
            raise ParseError(f"line {no}: length must be positive")
        key = edge_key(int(parts[0]), int(parts[1]))
        if key in lengths:
            raise ParseError(f"line {no}: duplicate length for edge {key}")
        lengths[key] = value
    for f in faces:
        if any(not 0 <= v < n_vertices for v in f):
            raise ParseError(f"face {f} refers to a vertex outside 0..{n_vertices - 1}")
    edges = {e for f in faces for e in face_edges(f)}  # type: ignore[arg-type]
    if set(lengths) - edges:
        raise ParseError(f"lengths given for non-edges {sorted(set(lengths) - edges)}")
    try:
        return make_mesh(faces, lengths, n_vertices=n_vertices)
    except MeshError as exc:
        if isinstance(exc, (NotClosedSurface, Disconnected, TriangleInequalityViolated)):
            raise
        raise ParseError(str(exc)) from None


def _keyword_int(item: tuple[int, str], keyword: str) -> int:
    no, line = item
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not _INT.match(parts[1]) or int(parts[1]) < 0:
        raise ParseError(f"line {no}: expected '{keyword} <count>', got {line!r}")
    return int(parts[1])


def dump_mesh(mesh: TriMesh) -> str:
    out = [MESH_HEADER, f"vertices {mesh.n_vertices}", f"faces {len(mesh.faces)}"]
    out += [f"{a} {b} {c}" for a, b, c in mesh.faces]
    out.append("lengths")
    out += [f"{u} {v} {mesh.edge_lengths[(u, v)]!r}" for u, v in mesh.edges]
    return "\n".join(out) + "\n"
