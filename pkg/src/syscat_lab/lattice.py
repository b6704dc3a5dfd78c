"""Flat tori as lattices: shortest vectors, covolume and the Hermite bound.

A flat torus R^b / L is described by the Gram matrix of a basis of L.  Its
stable 1-systole is the length of a shortest nonzero lattice vector, and
for such a torus the Abel-Jacobi map is the identity, so the Hermite-type
systolic inequality reads ``sys^b <= gamma_b^(b/2) * covol``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite, ParseError, UnsupportedRank

MAX_RANK = 8
TIE_RTOL = 1e-12
BOUND_TOL = 1e-9

HERMITE = {1: 1.0, 2: 2 / math.sqrt(3), 3: 2 ** (1 / 3), 4: math.sqrt(2)}

# Gram matrix of the D4 root lattice (roots of squared length 2)
D4_GRAM = np.array(
    [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    dtype=float,
)
HEXAGONAL_GRAM = np.array([[1.0, 0.5], [0.5, 1.0]])


@dataclass(frozen=True)
class Lattice:
    gram: np.ndarray

    def __post_init__(self):
        g = np.array(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
            raise NotPositiveDefinite(f"gram must be a nonempty square matrix, got shape {g.shape}")
        if g.shape[0] > MAX_RANK:
            raise UnsupportedRank(f"rank {g.shape[0]} exceeds {MAX_RANK}")
        if not np.allclose(g, g.T, rtol=0, atol=1e-12 * max(1.0, float(np.abs(g).max()))):
            raise NotPositiveDefinite("gram is not symmetric")
        g = (g + g.T) / 2
        try:
            np.linalg.cholesky(g)
        except np.linalg.LinAlgError:
            raise NotPositiveDefinite("gram is not positive definite") from None
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    def scaled(self, lam: float) -> "Lattice":
        """Lattice with every vector length multiplied by ``lam``."""
        return Lattice(self.gram * lam**2)

    def transformed(self, U: np.ndarray) -> "Lattice":
        """Same lattice in the basis given by the columns of the integer matrix U."""
        U = np.asarray(U)
        return Lattice(U.T @ self.gram @ U)

    def norm2(self, coeffs) -> float:
        c = np.asarray(coeffs, dtype=float)
        return float(c @ self.gram @ c)


@dataclass(frozen=True)
class ShortestVectorResult:
    coeffs: tuple[int, ...]
    length: float
    n_minimizers: int = 1


@dataclass(frozen=True)
class HermiteReport:
    lhs: float
    rhs: float
    holds: bool
    equality: bool


def covolume(lat: Lattice) -> float:
    return math.sqrt(float(np.linalg.det(lat.gram)))


def hermite_constant(b: int) -> float:
    if b not in HERMITE:
        raise UnsupportedRank(f"Hermite constant stored only for ranks 1..4, got {b}")
    return HERMITE[b]


def lll_reduce(gram: np.ndarray, delta: float = 0.99) -> tuple[np.ndarray, np.ndarray]:
    """LLL on a Gram matrix.  Returns (reduced gram, unimodular U) with reduced = U^T G U."""
    G = np.array(gram, dtype=float)
    b = len(G)
    U = np.eye(b, dtype=np.int64)
    if b == 1:
        return G, U
    k = 1
    L = np.linalg.cholesky(G)
    while k < b:
        for j in range(k - 1, -1, -1):
            q = round(L[k, j] / L[j, j])
            if q:
                U[:, k] -= q * U[:, j]
                G[k, :] -= q * G[j, :]
                G[:, k] -= q * G[:, j]
                L = np.linalg.cholesky(G)
        mu = L[k, k - 1] / L[k - 1, k - 1]
        if L[k, k] ** 2 >= (delta - mu**2) * L[k - 1, k - 1] ** 2:
            k += 1
        else:
            perm = np.arange(b)
            perm[[k - 1, k]] = perm[[k, k - 1]]
            G = G[np.ix_(perm, perm)]
            U = U[:, perm]
            L = np.linalg.cholesky(G)
            k = max(k - 1, 1)
    return G, U


def _normalize_sign(c: np.ndarray) -> tuple[int, ...]:
    nz = np.flatnonzero(c)
    if len(nz) and c[nz[0]] < 0:
        c = -c
    return tuple(int(x) for x in c)


def _box(bounds) -> np.ndarray:
    ranges = [np.arange(-m, m + 1) for m in bounds]
    return np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, len(bounds))


def shortest_vector(lat: Lattice) -> ShortestVectorResult:
    """Global shortest nonzero vector by enumeration in an LLL-reduced basis.

    Every vector of squared length at most ``R**2`` (the shortest reduced
    basis vector) satisfies ``|c_i| <= sqrt(R**2 * (G^-1)_ii)``, so the box
    with those half-widths is exhaustive.  Minimizers within a relative
    1e-12 are sign-normalized (first nonzero coefficient positive) and the
    lexicographically largest coefficient vector is returned; for both the
    square and the hexagonal lattice that is ``(1, 0)``.
    """
    G, U = lll_reduce(lat.gram)
    r2 = float(G.diagonal().min())
    ginv = np.linalg.inv(G)
    bounds = [int(math.floor(math.sqrt(r2 * ginv[i, i]) * (1 + 1e-9) + 1e-9)) for i in range(lat.rank)]
    box = _box(bounds)
    box = box[np.any(box != 0, axis=1)]
    q = np.einsum("ni,ij,nj->n", box, G, box)
    best = q.min()
    ties = box[q <= best * (1 + TIE_RTOL)]
    coeffs = sorted((_normalize_sign(U @ c) for c in ties), reverse=True)
    # each minimizer appears with both signs
    return ShortestVectorResult(coeffs=coeffs[0], length=math.sqrt(best), n_minimizers=len(ties))


def naive_shortest_vector(lat: Lattice, radius: int = 5) -> ShortestVectorResult:
    """Minimum over the full box |c_i| <= radius in the given basis (test oracle)."""
    box = _box([radius] * lat.rank)
    box = box[np.any(box != 0, axis=1)]
    q = np.einsum("ni,ij,nj->n", box, lat.gram, box)
    best = q.min()
    ties = box[q <= best * (1 + TIE_RTOL)]
    coeffs = sorted({_normalize_sign(c) for c in ties}, reverse=True)
    return ShortestVectorResult(coeffs=coeffs[0], length=math.sqrt(best), n_minimizers=len(ties))


def check_hermite_bound(lat: Lattice) -> HermiteReport:
    """Compare ``sys^b`` with ``gamma_b^(b/2) * covol`` for the flat torus of ``lat``."""
    b = lat.rank
    gamma = hermite_constant(b)
    lhs = shortest_vector(lat).length ** b
    rhs = gamma ** (b / 2) * covolume(lat)
    return HermiteReport(
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs + BOUND_TOL,
        equality=abs(lhs - rhs) <= BOUND_TOL * rhs,
    )


def random_lattice(rank: int, rng: np.random.Generator) -> Lattice:
    """Gram matrix of a basis with independent standard normal coordinates."""
    while True:
        B = rng.standard_normal((rank, rank))
        if abs(np.linalg.det(B)) > 1e-6:
            return Lattice(B.T @ B)


def parse_lattice(text: str) -> Lattice:
    """Read the ``lattice v1`` text format: header, ``rank b``, then b Gram rows."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "lattice v1":
        raise ParseError("expected header 'lattice v1'")
    if len(lines) < 2:
        raise ParseError("missing 'rank b' line")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "rank":
        raise ParseError(f"expected 'rank b', got {lines[1]!r}")
    try:
        b = int(head[1])
    except ValueError:
        raise ParseError(f"rank is not an integer: {head[1]!r}") from None
    if b < 1:
        raise ParseError("rank must be positive")
    rows = lines[2:]
    if len(rows) != b:
        raise ParseError(f"expected {b} Gram rows, got {len(rows)}")
    try:
        gram = [[float(x) for x in row.split()] for row in rows]
    except ValueError as exc:
        raise ParseError(f"bad Gram entry: {exc}") from None
    if any(len(r) != b for r in gram):
        raise ParseError(f"each Gram row needs {b} entries")
    return Lattice(np.array(gram))


def dump_lattice(lat: Lattice) -> str:
    rows = [" ".join(repr(float(x)) for x in row) for row in lat.gram]
    return "\n".join(["lattice v1", f"rank {lat.rank}", *rows]) + "\n"
