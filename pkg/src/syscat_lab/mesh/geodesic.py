"""Straight-chord approximation of piecewise-flat geodesic loops.

Each mesh edge carries ``2**levels - 1`` equally spaced interior points
(exactly the edge vertices of the ``levels``-fold midpoint subdivision).
Two points on the boundary of a common face are joined by the straight
segment through that flat face; consecutive points along an edge are
joined along the edge.  Every path in this graph is an actual curve on
the surface, so its shortest nontrivial loop bounds the true Z/2 homology
systole from above, and the bound can only improve as ``levels`` grows.
Interior face points are never needed: a path entering and leaving a face
is shortcut by the chord between its entry and exit points.

Shortest-path searches start only from points on the cut graph (spanning
tree plus homology generator edges).  Its complement is an open disk, so
every loop with nonzero class passes through one of those points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from ..errors import CoverTooLarge, NoNontrivialClass
from .homology import DEFAULT_B1_CAP, z2_homology_basis
from .trimesh import TriMesh, edge_key, face_edges


@dataclass(frozen=True)
class EdgePoint:
    """Point at fraction ``t`` along the edge ``u -> v`` (``t == 0`` is ``u``)."""

    u: int
    v: int
    t: float


class ChordComplex:
    """Compiled chord graph in the (Z/2)^b1 cover for one mesh combinatorics.

    The combinatorial structure is built once; :meth:`ratio` takes a
    vector of edge lengths (in ``mesh.edges`` order) so the optimizer can
    re-measure perturbed metrics cheaply.
    """

    def __init__(self, mesh: TriMesh, levels: int = 0, b1_cap: int = DEFAULT_B1_CAP):
        if levels < 0:
            raise ValueError("levels must be >= 0")
        b1 = mesh.z2_betti1
        if b1 == 0:
            raise NoNontrivialClass("surface has trivial Z/2 first homology")
        if b1 > b1_cap:
            raise CoverTooLarge(f"z2_betti1 = {b1} exceeds the cover cap {b1_cap}")
        self.mesh = mesh
        self.levels = levels
        self.rank = b1
        self.sheets = 1 << b1
        basis = z2_homology_basis(mesh)
        edge_index = {e: i for i, e in enumerate(mesh.edges)}
        N = 1 << levels
        V = mesh.n_vertices

        # point ids: vertices first, then the N-1 interior points of each edge
        def point(e: tuple[int, int], k: int) -> int:
            a, b = e
            if k == 0:
                return a
            if k == N:
                return b
            return V + edge_index[e] * (N - 1) + (k - 1)

        self.n_points = V + len(mesh.edges) * (N - 1)
        self.points: list[EdgePoint] = [EdgePoint(v, v, 0.0) for v in range(V)]
        for a, b in mesh.edges:
            self.points += [EdgePoint(a, b, k / N) for k in range(1, N)]

        pairs, sigs = [], []
        # segments along each edge; the cocycle jump sits on the last piece
        seg_edge = []
        for e in mesh.edges:
            s = basis.signatures[e]
            for k in range(N):
                pairs.append((point(e, k), point(e, k + 1)))
                sigs.append(s if k == N - 1 else 0)
                seg_edge.append(edge_index[e])
        self._seg_edge = np.array(seg_edge, dtype=np.int64)
        self._n_seg = len(pairs)

        # chords across faces between points on two different sides
        chord_face, chord_dbary = [], []
        self._face_edge_idx = np.array(
            [[edge_index[edge_key(f[0], f[1])], edge_index[edge_key(f[0], f[2])], edge_index[edge_key(f[1], f[2])]]
             for f in mesh.faces],
            dtype=np.int64,
        )
        for fi, f in enumerate(mesh.faces):
            v0, v1, v2 = f
            pot = {v0: 0, v1: basis.signature(v0, v1), v2: basis.signature(v0, v2)}
            corner = {v0: 0, v1: 1, v2: 2}
            bpts = []  # (point id, barycentric, potential, side set)
            for e in face_edges(f):
                a, b = e
                for k in range(N + 1):
                    bary = np.zeros(3)
                    bary[corner[a]] += 1 - k / N
                    bary[corner[b]] += k / N
                    sides = {e}
                    if k == 0 or k == N:
                        v = a if k == 0 else b
                        sides = {s for s in face_edges(f) if v in s}
                    # interior points of edge (a, b) inherit the potential of a
                    bpts.append((point(e, k), bary, pot[b] if k == N else pot[a], frozenset(sides)))
            seen = set()
            for i in range(len(bpts)):
                for j in range(i + 1, len(bpts)):
                    p, bp, hp, sp = bpts[i]
                    q, bq, hq, sq = bpts[j]
                    if sp & sq or (p, q) in seen or (q, p) in seen:
                        continue
                    seen.add((p, q))
                    pairs.append((p, q))
                    sigs.append(hp ^ hq)
                    chord_face.append(fi)
                    chord_dbary.append(bp - bq)
        self._chord_face = np.array(chord_face, dtype=np.int64)
        self._chord_dbary = np.array(chord_dbary).reshape(-1, 3)
        self._pairs = np.array(pairs, dtype=np.int64)
        self._sigs = np.array(sigs, dtype=np.int64)

        S = self.sheets
        g = np.arange(S)
        rows = (self._pairs[:, 0, None] * S + g[None, :]).ravel()
        cols = (self._pairs[:, 1, None] * S + (g[None, :] ^ self._sigs[:, None])).ravel()
        size = self.n_points * S
        ids = np.arange(1, len(rows) + 1, dtype=float)
        graph = csr_matrix((ids, (rows, cols)), shape=(size, size))
        if graph.nnz != len(rows):
            raise AssertionError("duplicate cover edges")
        self._perm = graph.data.astype(np.int64) - 1
        self._graph = graph
        cut = basis.tree_edges | set(basis.generator_edges)
        src = list(range(V))
        for e in mesh.edges:
            if e in cut:
                src += [point(e, k) for k in range(1, N)]
        self._source_points = np.array(src, dtype=np.int64)
        self._sources = self._source_points * S
        self.base_lengths = np.array([mesh.edge_lengths[e] for e in mesh.edges])

    @property
    def n_chords(self) -> int:
        return len(self._pairs)

    def segment_lengths(self, lengths: np.ndarray) -> np.ndarray:
        N = 1 << self.levels
        along = lengths[self._seg_edge] / N
        if len(self._chord_face) == 0:
            return along
        fe = lengths[self._face_edge_idx]  # columns: l01, l02, l12
        l01, l02, l12 = fe[:, 0], fe[:, 1], fe[:, 2]
        x = (l01**2 + l02**2 - l12**2) / (2 * l01)
        y = np.sqrt(np.maximum(l02**2 - x**2, 0.0))
        P = np.zeros((len(fe), 3, 2))
        P[:, 1, 0] = l01
        P[:, 2, 0] = x
        P[:, 2, 1] = y
        diff = np.einsum("ck,ckd->cd", self._chord_dbary, P[self._chord_face])
        return np.concatenate([along, np.hypot(diff[:, 0], diff[:, 1])])

    def _solve(self, lengths: np.ndarray, predecessors: bool = False):
        w = np.repeat(self.segment_lengths(lengths), self.sheets)
        graph = self._graph.copy()
        graph.data = w[self._perm]
        return dijkstra(graph, directed=False, indices=self._sources, return_predecessors=predecessors)

    def systole(self, lengths: np.ndarray | None = None) -> float:
        lengths = self.base_lengths if lengths is None else np.asarray(lengths, dtype=float)
        loops = self._loops(self._solve(lengths))
        best = float(loops.min())
        if not math.isfinite(best):
            raise NoNontrivialClass("no closed path with nonzero class found")
        return best

    def area(self, lengths: np.ndarray | None = None) -> float:
        lengths = self.base_lengths if lengths is None else np.asarray(lengths, dtype=float)
        return float(np.sum(face_areas(lengths[self._face_edge_idx])))

    def ratio(self, lengths: np.ndarray | None = None) -> float:
        return self.systole(lengths) ** 2 / self.area(lengths)

    def shortest_loop(self, lengths: np.ndarray | None = None) -> tuple[list[EdgePoint], float]:
        """Points visited by one shortest nontrivial loop, closed (first == last)."""
        lengths = self.base_lengths if lengths is None else np.asarray(lengths, dtype=float)
        dist, pred = self._solve(lengths, predecessors=True)
        loops = self._loops(dist)
        i, g = np.unravel_index(int(np.argmin(loops)), loops.shape)
        S = self.sheets
        node = int(self._source_points[i]) * S + int(g) + 1
        path = [node]
        while node != self._sources[i]:
            node = int(pred[i, node])
            path.append(node)
        return [self.points[n // S] for n in reversed(path)], float(loops[i, g])

    def _loops(self, dist: np.ndarray) -> np.ndarray:
        # rows: sources; columns: nonzero deck elements g of (p, 0) -> (p, g)
        n, S = len(self._source_points), self.sheets
        return dist.reshape(n, self.n_points, S)[np.arange(n), self._source_points, 1:]


def face_areas(sides: np.ndarray) -> np.ndarray:
    """Vectorized Kahan-Heron areas for an (n, 3) array of side lengths."""
    s = -np.sort(-sides, axis=1)
    a, b, c = s[:, 0], s[:, 1], s[:, 2]
    prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    return 0.25 * np.sqrt(np.maximum(prod, 0.0))
