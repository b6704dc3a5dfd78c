"""Algebra maps and ring maps up to higher homotopies.

A family f_1, f_2, ... with f_i : A^{(x)i} -> A' of degree 1 - i and f_1 a
chain map is checked against

    d f_i + (-1)^i f_i d
        = sum_{j=1}^{i-1} (-1)^j ( mu (f_j (x) f_{i-j}) - f_{i-1}(1^{j-1} (x) mu (x) 1^{i-j-1}) )

where d on tensors and the tensor product of maps follow the Koszul sign
rule.  For i = 1 this says f_1 is a chain map; for i = 2 it says f_2 is a
chain homotopy between f_1(ab) and f_1(a) f_1(b).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ..errors import AlgebraError, DegreeMismatch
from .algebra import FreeCDGA, Monomial, Poly

Tensor = dict  # tuple of monomials -> coefficient


@dataclass(frozen=True)
class AlgebraMap:
    """Multiplicative map determined by the images of the generators."""

    source: FreeCDGA
    target: FreeCDGA
    images: tuple[Poly, ...]

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise AlgebraError("source and target must share a field")
        if len(self.images) != self.source.n_gens:
            raise AlgebraError("need one image per source generator")
        for i, img in enumerate(self.images):
            deg = self.target.poly_degree(img)
            if deg is not None and deg != self.source.degrees[i]:
                raise DegreeMismatch(f"image of {self.source.names[i]} has degree {deg}")

    def __call__(self, p: Poly) -> Poly:
        T = self.target
        out: Poly = {}
        for m, c in p.items():
            term: Poly = {T.unit(): T.field(1)}
            for i, e in enumerate(m):
                for _ in range(e):
                    term = T.mul(term, self.images[i])
            out = T.add(out, term, coeffs=[1, c])
        return out

    def is_chain_map(self) -> bool:
        S, T = self.source, self.target
        for i in range(S.n_gens):
            g = {tuple(1 if j == i else 0 for j in range(S.n_gens)): S.field(1)}
            if T.add(T.d(self(g)), self(S.d(g)), coeffs=[1, -1]):
                return False
        return True

    def as_linear(self) -> "MultiMap":
        return MultiMap(1, self.source, self.target, self)


@dataclass(frozen=True)
class MultiMap:
    """Linear map f_i on i-fold tensors of basis monomials.

    ``values`` is either a mapping from i-tuples of source monomials to
    target elements (missing keys are zero) or a callable on one source
    element when ``arity == 1``.
    """

    arity: int
    source: FreeCDGA
    target: FreeCDGA
    values: Mapping[tuple[Monomial, ...], Poly] | Callable[[Poly], Poly]

    @property
    def degree(self) -> int:
        return 1 - self.arity

    def __post_init__(self):
        if self.arity < 1:
            raise AlgebraError("arity must be >= 1")
        if isinstance(self.values, Mapping):
            for key, img in self.values.items():
                if len(key) != self.arity:
                    raise DegreeMismatch(f"key {key} has arity {len(key)}, expected {self.arity}")
                deg = self.target.poly_degree(img)
                want = sum(self.source.degree(m) for m in key) + self.degree
                if deg is not None and deg != want:
                    raise DegreeMismatch(
                        f"f_{self.arity} on {_fmt_key(self.source, key)} has degree {deg}, expected {want}"
                    )

    def on_key(self, key: tuple[Monomial, ...]) -> Poly:
        if isinstance(self.values, Mapping):
            return dict(self.values.get(key, {}))
        return self.values({key[0]: self.source.field(1)})

    def __call__(self, t: Tensor) -> Poly:
        T = self.target
        out: Poly = {}
        for key, c in t.items():
            out = T.add(out, self.on_key(key), coeffs=[1, c])
        return out


def tabulate(fn: Callable[[Poly], Poly], source: FreeCDGA, target: FreeCDGA, top: int | None = None) -> MultiMap:
    """Arity-1 map given by its values on every source monomial up to ``top``."""
    top = source.degree_cap if top is None else top
    values = {}
    for n in range(top + 1):
        for m in source.basis(n):
            img = fn({m: source.field(1)})
            if img:
                values[(m,)] = img
    return MultiMap(1, source, target, values)


@dataclass(frozen=True)
class HomotopyFamily:
    """f_1 (a chain map) and optional higher maps f_2, f_3, ..."""

    source: FreeCDGA
    target: FreeCDGA
    maps: Mapping[int, MultiMap] = field(default_factory=dict)

    def get(self, i: int) -> MultiMap | None:
        return self.maps.get(i)


@dataclass(frozen=True)
class IdentityCheck:
    i: int
    n_checked: int
    max_discrepancy: Fraction
    holds: bool
    worst_input: str | None


def _fmt_key(A: FreeCDGA, key: Sequence[Monomial]) -> str:
    return " (x) ".join(A.format_monomial(m) for m in key)


def _tensor_d(A: FreeCDGA, key: tuple[Monomial, ...]) -> Tensor:
    F = A.field
    out: Tensor = {}
    sign_deg = 0
    for k, m in enumerate(key):
        s = -1 if sign_deg % 2 else 1
        for dm, c in A.d_monomial(m).items():
            nk = key[:k] + (dm,) + key[k + 1:]
            out[nk] = F.reduce(out.get(nk, F(0)) + s * c)
        sign_deg += A.degree(m)
    return {k: v for k, v in out.items() if v != 0}


def _tensor_mu(A: FreeCDGA, key: tuple[Monomial, ...], j: int) -> Tensor:
    """Multiply positions j and j+1 (1-based j)."""
    r = A.mul_monomials(key[j - 1], key[j])
    if r is None:
        return {}
    s, m = r
    return {key[: j - 1] + (m,) + key[j + 1:]: A.field(s)}


def _apply(f: MultiMap | None, t: Tensor) -> Poly:
    return {} if f is None else f(t)


def _rhs(h: HomotopyFamily, i: int, key: tuple[Monomial, ...]) -> Poly:
    S, T = h.source, h.target
    out: Poly = {}
    for j in range(1, i):
        fj, fk = h.get(j), h.get(i - j)
        left = key[:j]
        right = key[j:]
        term: Poly = {}
        if fj is not None and fk is not None:
            koszul = (fk.degree * sum(S.degree(m) for m in left)) % 2
            prod = T.mul(fj.on_key(left), fk.on_key(right))
            term = T.add(term, prod, coeffs=[1, -1 if koszul else 1])
        term = T.add(term, _apply(h.get(i - 1), _tensor_mu(S, key, j)), coeffs=[1, -1])
        out = T.add(out, term, coeffs=[1, -1 if j % 2 else 1])
    return out


def _lhs(h: HomotopyFamily, i: int, key: tuple[Monomial, ...]) -> Poly:
    T = h.target
    f = h.get(i)
    if f is None:
        return {}
    a = T.d(f.on_key(key))
    b = f(_tensor_d(h.source, key))
    return T.add(a, b, coeffs=[1, -1 if i % 2 else 1])


def _inputs(A: FreeCDGA, i: int, top: int):
    monos = [m for n in range(top + 1) for m in A.basis(n)]
    for key in itertools.product(monos, repeat=i):
        if sum(A.degree(m) for m in key) <= top:
            yield key


def verify_higher_homotopies(h: HomotopyFamily, up_to: int) -> list[IdentityCheck]:
    """Evaluate the defining identity for i = 1..up_to on all basis tensors.

    Inputs range over tensors of source monomials of total degree at most
    ``min(source cap - 1, target cap + i - 2)`` so that every term stays
    inside both caps.  Missing maps count as zero.
    """
    S, T = h.source, h.target
    if S.field != T.field:
        raise AlgebraError("source and target must share a field")
    if 1 not in h.maps:
        raise AlgebraError("f_1 is required")
    F = S.field
    report = []
    for i in range(1, up_to + 1):
        top = min(S.degree_cap - 1, T.degree_cap + i - 2)
        worst = Fraction(0)
        worst_key = None
        count = 0
        for key in _inputs(S, i, top):
            count += 1
            diff = T.add(_lhs(h, i, key), _rhs(h, i, key), coeffs=[1, -1])
            size = max((F.size(c) for c in diff.values()), default=Fraction(0))
            if size > worst:
                worst, worst_key = size, key
        report.append(
            IdentityCheck(
                i=i,
                n_checked=count,
                max_discrepancy=worst,
                holds=worst == 0,
                worst_input=None if worst_key is None else _fmt_key(S, worst_key),
            )
        )
    return report


def identity_family(A: FreeCDGA) -> HomotopyFamily:
    """The identity of A as a strict ring map (all higher maps zero)."""
    return HomotopyFamily(A, A, {1: tabulate(lambda p: p, A, A)})
