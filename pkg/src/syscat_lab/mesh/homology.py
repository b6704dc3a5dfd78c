"""Z/2 first homology of a triangulated surface and exact edge-metric systoles.

Classes are tracked with a tree-cotree decomposition: every edge gets a
bitmask signature, a closed edge path's Z/2 class is the XOR of the
signatures of its edges, and face boundaries XOR to zero.  The shortest
loop with nonzero class is then a shortest path between two lifts of the
same vertex in the (Z/2)^b1 homology cover.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from ..errors import CoverTooLarge, NoNontrivialClass
from .trimesh import Edge, TriMesh, edge_key, face_edges

DEFAULT_B1_CAP = 6
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class HomologyBasis:
    rank: int
    tree_edges: frozenset
    cotree_edges: frozenset
    generator_edges: tuple[Edge, ...]
    signatures: Mapping[Edge, int]

    def signature(self, u: int, v: int) -> int:
        return self.signatures[edge_key(u, v)]

    def vector(self, bits: int) -> tuple[int, ...]:
        return tuple((bits >> i) & 1 for i in range(self.rank))

    def class_of(self, cycle: Sequence[int]) -> int:
        """XOR of edge signatures along a closed vertex sequence (first == last)."""
        bits = 0
        for u, v in zip(cycle[:-1], cycle[1:]):
            bits ^= self.signature(u, v)
        return bits


@dataclass(frozen=True)
class LoopResult:
    """A closed edge path; ``cycle[0] == cycle[-1]``."""

    cycle: tuple[int, ...]
    length: float
    witness: tuple[int, ...]

    @property
    def n_edges(self) -> int:
        return len(self.cycle) - 1


def z2_homology_basis(mesh: TriMesh) -> HomologyBasis:
    """Tree-cotree decomposition with per-edge (Z/2)^b1 signatures."""
    adj = mesh.neighbors()
    tree: set[Edge] = set()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                tree.add(edge_key(u, v))
                queue.append(v)

    edge_faces = mesh.edge_faces()
    parent_edge: dict[int, Edge | None] = {0: None}
    order = [0]
    queue = deque([0])
    cotree: set[Edge] = set()
    while queue:
        f = queue.popleft()
        for e in face_edges(mesh.faces[f]):
            if e in tree:
                continue
            for g in edge_faces[e]:
                if g not in parent_edge:
                    parent_edge[g] = e
                    cotree.add(e)
                    order.append(g)
                    queue.append(g)

    leftover = tuple(e for e in mesh.edges if e not in tree and e not in cotree)
    assert len(leftover) == mesh.z2_betti1, "tree-cotree count disagrees with Euler characteristic"
    sig: dict[Edge, int] = {e: 0 for e in tree}
    for i, e in enumerate(leftover):
        sig[e] = 1 << i
    # peel the dual tree from the leaves: each face boundary must XOR to zero
    for f in reversed(order[1:]):
        pe = parent_edge[f]
        acc = 0
        for e in face_edges(mesh.faces[f]):
            if e != pe:
                acc ^= sig[e]
        sig[pe] = acc  # type: ignore[index]
    root = 0
    for e in face_edges(mesh.faces[0]):
        root ^= sig[e]
    assert root == 0
    return HomologyBasis(
        rank=len(leftover),
        tree_edges=frozenset(tree),
        cotree_edges=frozenset(cotree),
        generator_edges=leftover,
        signatures=MappingProxyType(sig),
    )


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Smallest rotation/reflection of a closed vertex sequence, returned closed."""
    ring = list(cycle[:-1])
    n = len(ring)
    best = None
    for seq in (ring, ring[::-1]):
        for k in range(n):
            cand = tuple(seq[k:] + seq[:k])
            if best is None or cand < best:
                best = cand
    return best + (best[0],)  # type: ignore[operator]


def _cover_graph(n_points: int, rank: int, pairs: np.ndarray, sigs: np.ndarray, weights: np.ndarray):
    sheets = 1 << rank
    g = np.arange(sheets)
    rows = (pairs[:, 0, None] * sheets + g[None, :]).ravel()
    cols = (pairs[:, 1, None] * sheets + (g[None, :] ^ sigs[:, None])).ravel()
    data = np.repeat(weights, sheets)
    size = n_points * sheets
    return csr_matrix((data, (rows, cols)), shape=(size, size))


def systole_h1z2(mesh: TriMesh, b1_cap: int = DEFAULT_B1_CAP) -> LoopResult:
    """Exact shortest closed edge path with nonzero Z/2 homology class.

    Ties within a relative 1e-12 are broken by the lexicographically
    smallest canonical vertex sequence.
    """
    b1 = mesh.z2_betti1
    if b1 == 0:
        raise NoNontrivialClass("surface has trivial Z/2 first homology")
    if b1 > b1_cap:
        raise CoverTooLarge(f"z2_betti1 = {b1} exceeds the cover cap {b1_cap}")
    basis = z2_homology_basis(mesh)
    sheets = 1 << b1
    pairs = np.array(mesh.edges, dtype=np.int64)
    sigs = np.array([basis.signatures[e] for e in mesh.edges], dtype=np.int64)
    weights = np.array([mesh.edge_lengths[e] for e in mesh.edges])
    graph = _cover_graph(mesh.n_vertices, b1, pairs, sigs, weights)
    sources = np.arange(mesh.n_vertices) * sheets
    dist, pred = dijkstra(graph, directed=False, indices=sources, return_predecessors=True)
    V = mesh.n_vertices
    loops = dist.reshape(V, V, sheets)[np.arange(V), np.arange(V), 1:]
    best = float(loops.min())
    if not np.isfinite(best):
        raise NoNontrivialClass("no closed path with nonzero class found")

    candidates = []
    for v, g in zip(*np.nonzero(loops <= best * (1 + TIE_RTOL))):
        node = int(v) * sheets + int(g) + 1
        path = [node]
        while node != sources[v]:
            node = int(pred[v, node])
            path.append(node)
        verts = [p // sheets for p in reversed(path)]
        candidates.append(canonical_cycle(verts))
    cycle = min(candidates)
    length = sum(mesh.length(u, w) for u, w in zip(cycle[:-1], cycle[1:]))
    return LoopResult(cycle=cycle, length=length, witness=basis.vector(basis.class_of(cycle)))
