"""Exact linear algebra over Q (Fraction) or Z/p (ints reduced mod p)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = list


@dataclass(frozen=True)
class Field:
    """``char == 0`` is the rationals, otherwise the prime field Z/char."""

    char: int = 0

    def __post_init__(self):
        if self.char < 0 or (self.char and not _is_prime(self.char)):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.char}")

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else f"Z{self.char}"

    def __call__(self, x):
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        return int(x) % self.char

    def reduce(self, x):
        return x % self.char if self.char else x

    def inv(self, x):
        if self.char == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.char)

    def size(self, x) -> Fraction:
        """Magnitude used in discrepancy reports (symmetric residue mod p)."""
        if self.char == 0:
            return abs(Fraction(x))
        r = int(x) % self.char
        return Fraction(min(r, self.char - r))


QQ = Field(0)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def rref(rows: Sequence[Sequence], F: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [[F.reduce(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.reduce(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [F.reduce(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], F: Field) -> int:
    return len(rref(rows, F)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int, F: Field) -> list[Vector]:
    """Basis of {x : matrix @ x = 0}, one vector per free column (free entry 1)."""
    R, pivots = rref(matrix, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [F(0)] * ncols
        x[fcol] = F(1)
        for row, pc in zip(R, pivots):
            x[pc] = F.reduce(-row[fcol])
        basis.append(x)
    return basis


def solve(matrix: Sequence[Sequence], b: Sequence, ncols: int, F: Field) -> Vector | None:
    """A solution of ``matrix @ x = b`` with every free variable set to 0, or None."""
    aug = [list(row) + [bi] for row, bi in zip(matrix, b)]
    R, pivots = rref(aug, F)
    if ncols in pivots:
        return None
    x = [F(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def span_basis(vectors: Sequence[Vector], F: Field) -> list[Vector]:
    return rref(vectors, F)[0]


def in_span(vectors: Sequence[Vector], v: Vector, F: Field) -> bool:
    if all(F.reduce(x) == 0 for x in v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [v], F) == rank(vectors, F)


def transpose(rows: Sequence[Sequence], nrows_if_empty: int = 0) -> list[list]:
    if not rows:
        return [[] for _ in range(nrows_if_empty)]
    return [list(col) for col in zip(*rows)]
