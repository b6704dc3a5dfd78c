"""Cohomology of free CDGAs by exact linear algebra, with secondary operations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import CapExceeded, DegreeMismatch, NoFundamentalClass, ProductsNotZero
from . import linalg
from .algebra import FreeCDGA, Poly


@dataclass(frozen=True)
class CohClass:
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class MasseyCoset:
    degree: int
    representative: CohClass
    indeterminacy: tuple[CohClass, ...]
    nontrivial: bool
    cocycle: Poly
    primitives: tuple[Poly, Poly]


class CohomologySpace:
    """H^n of a free CDGA with a fixed basis of cocycle representatives.

    The basis is chosen greedily: kernel vectors of d (in the fixed
    monomial order) are kept when independent of the image plus the ones
    already kept.
    """

    def __init__(self, A: FreeCDGA, n: int):
        F = A.field
        self.A = A
        self.degree = n
        self.monomials = A.basis(n)
        dim_n = len(self.monomials)
        kernel = linalg.nullspace(A.d_matrix(n), dim_n, F) if dim_n else []
        if n > 0 and A.basis(n - 1):
            image_cols = linalg.transpose(A.d_matrix(n - 1))
            image = linalg.span_basis(image_cols, F)
        else:
            image = []
        self.image = image
        reps: list[list] = []
        current = list(image)
        r = linalg.rank(current, F) if current else 0
        for z in kernel:
            trial = current + [z]
            r2 = linalg.rank(trial, F)
            if r2 > r:
                reps.append(z)
                current, r = trial, r2
        self.reps = reps
        # columns: representatives, then image basis
        self._system = linalg.transpose(reps + image, dim_n)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def representatives(self) -> list[Poly]:
        return [self.A.from_coords(z, self.degree) for z in self.reps]

    def representative(self, cls: CohClass) -> Poly:
        F = self.A.field
        out = [F(0)] * len(self.monomials)
        for c, z in zip(cls.coords, self.reps):
            if c:
                out = [F.reduce(a + c * b) for a, b in zip(out, z)]
        return self.A.from_coords(out, self.degree)

    def basis_class(self, i: int) -> CohClass:
        F = self.A.field
        return CohClass(self.degree, tuple(F(1) if j == i else F(0) for j in range(self.dim)))

    def classify(self, p: Poly) -> CohClass:
        """Class of a cocycle in the chosen basis."""
        A = self.A
        F = A.field
        if A.d(p):
            raise DegreeMismatch("element is not a cocycle")
        v = A.coords(p, self.degree)
        if not any(v):
            return CohClass(self.degree, tuple(F(0) for _ in range(self.dim)))
        x = linalg.solve(self._system, v, self.dim + len(self.image), F)
        if x is None:
            raise AssertionError("cocycle not in span of representatives and boundaries")
        return CohClass(self.degree, tuple(x[: self.dim]))

    def is_exact(self, p: Poly) -> bool:
        return self.classify(p).is_zero()


def _check_cap(A: FreeCDGA, n: int) -> None:
    if n > A.degree_cap - 1:
        raise CapExceeded(f"degree {n} needs cap >= {n + 1}, model has cap {A.degree_cap}")


def cohomology(A: FreeCDGA, n: int) -> CohomologySpace:
    if n < 0:
        raise ValueError("degree must be non-negative")
    _check_cap(A, n)
    key = ("H", n)
    if key not in A._cache:
        A._cache[key] = CohomologySpace(A, n)
    return A._cache[key]


def betti_numbers(A: FreeCDGA, top: int | None = None) -> list[int]:
    top = A.degree_cap - 1 if top is None else top
    return [cohomology(A, n).dim for n in range(top + 1)]


def class_of(A: FreeCDGA, p: Poly, n: int | None = None) -> CohClass:
    n = A.poly_degree(p) if n is None else n
    if n is None:
        raise ValueError("degree of the zero element must be given")
    return cohomology(A, n).classify(p)


def zero_class(A: FreeCDGA, n: int) -> CohClass:
    return CohClass(n, tuple(A.field(0) for _ in range(cohomology(A, n).dim)))


def _vanishes_above(A: FreeCDGA, n: int) -> bool:
    return A.formal_dim is not None and n > A.formal_dim


def cup_product(A: FreeCDGA, u: CohClass, v: CohClass) -> CohClass:
    n = u.degree + v.degree
    _check_cap(A, n)
    a = cohomology(A, u.degree).representative(u)
    b = cohomology(A, v.degree).representative(v)
    return cohomology(A, n).classify(A.mul(a, b))


def _product_space(A: FreeCDGA, left: dict[int, list[Poly]], right: dict[int, list[Poly]]):
    """Span of all products, per degree, plus whether some product left the cap."""
    F = A.field
    out: dict[int, list[list]] = {}
    skipped = False
    for p, lefts in left.items():
        for q, rights in right.items():
            n = p + q
            if _vanishes_above(A, n):
                continue
            if n > A.degree_cap - 1:
                if lefts and rights:
                    skipped = True
                continue
            H = cohomology(A, n)
            if H.dim == 0:
                continue
            for a in lefts:
                for b in rights:
                    c = H.classify(A.mul(a, b))
                    if not c.is_zero():
                        out.setdefault(n, []).append(list(c.coords))
    spans = {}
    for n, vecs in out.items():
        H = cohomology(A, n)
        basis = linalg.span_basis(vecs, F)
        spans[n] = [H.representative(CohClass(n, tuple(v))) for v in basis]
    return spans, skipped


def cup_length(A: FreeCDGA) -> int:
    """Largest k with a nonzero k-fold product of positive-degree classes.

    Products landing above ``degree_cap - 1`` (and not above a declared
    formal dimension) cannot be decided, so CapExceeded is raised if the
    answer would depend on them.
    """
    top = A.degree_cap - 1
    if A.formal_dim is not None:
        top = min(top, A.formal_dim)
    hplus = {n: cohomology(A, n).representatives() for n in range(1, top + 1)}
    hplus = {n: reps for n, reps in hplus.items() if reps}
    if not hplus:
        return 0
    power = hplus
    k = 1
    while True:
        nxt, skipped = _product_space(A, power, hplus)
        if not nxt:
            if skipped:
                raise CapExceeded(f"products of length {k + 1} leave the degree cap {A.degree_cap}")
            return k
        power = nxt
        k += 1


def _span_classes(A: FreeCDGA, classes: Sequence[CohClass], n: int) -> list[CohClass]:
    vecs = [list(c.coords) for c in classes if not c.is_zero()]
    return [CohClass(n, tuple(v)) for v in linalg.span_basis(vecs, A.field)]


def _primitive(A: FreeCDGA, target: Poly, n: int) -> Poly:
    """Some x of degree n - 1 with dx = target (free variables set to zero)."""
    F = A.field
    if n - 1 < 0 or not A.basis(n - 1):
        if target:
            raise ProductsNotZero("product is not exact")
        return {}
    x = linalg.solve(A.d_matrix(n - 1), A.coords(target, n), len(A.basis(n - 1)), F)
    if x is None:
        raise ProductsNotZero("product is not exact")
    return A.from_coords(x, n - 1)


def massey_triple(
    A: FreeCDGA,
    u: CohClass,
    v: CohClass,
    w: CohClass,
    *,
    representatives: tuple[Poly, Poly, Poly] | None = None,
    primitives: tuple[Poly, Poly] | None = None,
) -> MasseyCoset:
    """The coset <u, v, w> represented by ``x*c - (-1)^|u| * a*y``.

    Here a, b, c represent u, v, w and dx = ab, dy = bc.  Alternative
    cocycle representatives and primitives may be supplied; they are
    checked, and the resulting representative differs from the default one
    by an element of the indeterminacy.
    """
    F = A.field
    du, dv, dw = u.degree, v.degree, w.degree
    n = du + dv + dw - 1
    _check_cap(A, n)
    _check_cap(A, du + dv)
    _check_cap(A, dv + dw)
    if not cup_product(A, u, v).is_zero():
        raise ProductsNotZero("u*v is not zero in cohomology")
    if not cup_product(A, v, w).is_zero():
        raise ProductsNotZero("v*w is not zero in cohomology")
    if representatives is None:
        a = cohomology(A, du).representative(u)
        b = cohomology(A, dv).representative(v)
        c = cohomology(A, dw).representative(w)
    else:
        a, b, c = representatives
        for p, cls in zip((a, b, c), (u, v, w)):
            if class_of(A, p, cls.degree) != cls:
                raise ValueError("supplied representative is not in the given class")
    ab, bc = A.mul(a, b), A.mul(b, c)
    if primitives is None:
        x = _primitive(A, ab, du + dv)
        y = _primitive(A, bc, dv + dw)
    else:
        x, y = primitives
        if A.add(A.d(x), ab, coeffs=[1, -1]) or A.add(A.d(y), bc, coeffs=[1, -1]):
            raise ValueError("supplied primitives do not satisfy dx = ab, dy = bc")
    sign = -1 if du % 2 else 1
    cocycle = A.add(A.mul(x, c), A.mul(a, y), coeffs=[1, -sign])
    H = cohomology(A, n)
    rep = H.classify(cocycle)
    gens: list[CohClass] = []
    if dv + dw - 1 >= 0:
        Hv = cohomology(A, dv + dw - 1)
        gens += [cup_product(A, u, Hv.basis_class(i)) for i in range(Hv.dim)]
    if du + dv - 1 >= 0:
        Hu = cohomology(A, du + dv - 1)
        gens += [cup_product(A, Hu.basis_class(i), w) for i in range(Hu.dim)]
    indet = _span_classes(A, gens, n)
    nontrivial = not linalg.in_span([list(g.coords) for g in indet], list(rep.coords), F)
    return MasseyCoset(
        degree=n,
        representative=rep,
        indeterminacy=tuple(indet),
        nontrivial=nontrivial,
        cocycle=cocycle,
        primitives=(x, y),
    )


def in_coset(A: FreeCDGA, coset: MasseyCoset, cls: CohClass) -> bool:
    """Whether ``cls`` lies in representative + indeterminacy."""
    F = A.field
    diff = [F.reduce(a - b) for a, b in zip(cls.coords, coset.representative.coords)]
    return linalg.in_span([list(g.coords) for g in coset.indeterminacy], diff, F)


def toomer_witness(A: FreeCDGA, top_degree: int) -> tuple[int, Poly]:
    """Toomer invariant e0 with a cocycle of maximal word length representing the top class.

    e0 is the largest p such that the fundamental class has a
    representative in the span of monomials of word length >= p.
    """
    F = A.field
    H = cohomology(A, top_degree)
    if H.dim != 1:
        raise NoFundamentalClass(f"dim H^{top_degree} = {H.dim}, expected 1")
    monos = A.basis(top_degree)
    D = A.d_matrix(top_degree)
    best: tuple[int, Poly] | None = None
    p = 0
    while True:
        cols = [i for i, m in enumerate(monos) if A.word_length(m) >= p]
        if not cols:
            break
        sub = [[row[i] for i in cols] for row in D] if D else []
        kernel = linalg.nullspace(sub, len(cols), F)
        found = None
        for z in kernel:
            full = [F(0)] * len(monos)
            for i, val in zip(cols, z):
                full[i] = val
            poly = A.from_coords(full, top_degree)
            if not H.is_exact(poly):
                found = poly
                break
        if found is None:
            break
        best = (p, found)
        p += 1
    assert best is not None
    return best


def toomer_e0(A: FreeCDGA, top_degree: int) -> int:
    return toomer_witness(A, top_degree)[0]


def word_length_min(A: FreeCDGA, p: Poly) -> int:
    return min(A.word_length(m) for m in p)
