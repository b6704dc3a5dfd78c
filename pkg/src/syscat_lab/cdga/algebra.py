"""Free graded-commutative differential algebras over Q or Z/p.

Elements are dicts from monomials to nonzero coefficients.  A monomial is
the tuple of generator exponents in generator order; odd generators have
exponent 0 or 1 in every characteristic, so the underlying algebra is
always polynomial on the even generators tensor exterior on the odd ones.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import DegreeMismatch, NotSquareZero, ParseError
from .linalg import Field, QQ

Monomial = tuple[int, ...]
Poly = dict  # Monomial -> field element

DEFAULT_CAP = 20


@dataclass(frozen=True, eq=False)
class FreeCDGA:
    """Free CDGA with generators ``names``/``degrees`` and ``d(gen_i) = diff[i]``.

    ``degree_cap`` bounds every degree in which an operation may build a
    monomial basis.  ``formal_dim``, when set, declares the cohomology to
    vanish above that degree (the dimension of the modelled manifold);
    it is only used to let products past the cap count as zero.
    """

    field: Field
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    diff: tuple[Mapping[Monomial, object], ...]
    degree_cap: int = DEFAULT_CAP
    formal_dim: int | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_gens(self) -> int:
        return len(self.names)

    def odd(self, i: int) -> bool:
        return self.degrees[i] % 2 == 1

    # ---- monomials -------------------------------------------------------
    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def word_length(self, m: Monomial) -> int:
        return sum(m)

    def unit(self) -> Monomial:
        return (0,) * self.n_gens

    def gen(self, name: str) -> Poly:
        i = self.index(name)
        m = [0] * self.n_gens
        m[i] = 1
        return {tuple(m): self.field(1)}

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def basis(self, n: int) -> list[Monomial]:
        """All monomials of degree ``n`` in a fixed order (cached)."""
        key = ("basis", n)
        if key not in self._cache:
            out: list[Monomial] = []
            self._fill(0, n, [], out)
            self._cache[key] = out
        return self._cache[key]

    def _fill(self, i: int, rest: int, acc: list[int], out: list[Monomial]) -> None:
        if i == self.n_gens:
            if rest == 0:
                out.append(tuple(acc))
            return
        d = self.degrees[i]
        top = 1 if self.odd(i) else rest // d
        for e in range(min(top, rest // d), -1, -1):
            self._fill(i + 1, rest - e * d, acc + [e], out)

    def mul_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Sign and normal form of ``a * b``; None when an odd generator repeats."""
        swaps = 0
        odd_in_a_after = 0
        for i in range(self.n_gens - 1, -1, -1):
            if self.odd(i):
                if a[i] and b[i]:
                    return None
                if b[i]:
                    swaps += odd_in_a_after
                if a[i]:
                    odd_in_a_after += 1
        return (-1 if swaps % 2 else 1), tuple(x + y for x, y in zip(a, b))

    # ---- polynomials -----------------------------------------------------
    def add(self, *polys: Poly, coeffs: Sequence | None = None) -> Poly:
        F = self.field
        out: Poly = {}
        for k, p in enumerate(polys):
            c = F(1) if coeffs is None else F(coeffs[k])
            for m, v in p.items():
                out[m] = F.reduce(out.get(m, F(0)) + c * v)
        return {m: v for m, v in out.items() if v != 0}

    def scale(self, c, p: Poly) -> Poly:
        F = self.field
        c = F(c)
        return {m: F.reduce(c * v) for m, v in p.items() if F.reduce(c * v) != 0}

    def mul(self, p: Poly, q: Poly) -> Poly:
        F = self.field
        out: Poly = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                r = self.mul_monomials(m1, m2)
                if r is None:
                    continue
                s, m = r
                out[m] = F.reduce(out.get(m, F(0)) + s * c1 * c2)
        return {m: v for m, v in out.items() if v != 0}

    def d_monomial(self, m: Monomial) -> Poly:
        """Differential of a monomial by the Leibniz rule (cached)."""
        key = ("d", m)
        if key in self._cache:
            return self._cache[key]
        i = next((j for j, e in enumerate(m) if e), None)
        if i is None:
            result: Poly = {}
        else:
            rest = list(m)
            rest[i] -= 1
            rest_t = tuple(rest)
            xi = [0] * self.n_gens
            xi[i] = 1
            xi_t = tuple(xi)
            # m = x_i * rest with sign +1, since x_i is the first factor
            first = self.mul(dict(self.diff[i]), {rest_t: self.field(1)})
            second = self.mul({xi_t: self.field(1)}, self.d_monomial(rest_t))
            sign = -1 if self.odd(i) else 1
            result = self.add(first, second, coeffs=[1, sign])
        self._cache[key] = result
        return result

    def d(self, p: Poly) -> Poly:
        out: Poly = {}
        for m, c in p.items():
            out = self.add(out, self.d_monomial(m), coeffs=[1, c])
        return out

    def poly_degree(self, p: Poly) -> int | None:
        """Common degree of a homogeneous element (None for zero)."""
        degs = {self.degree(m) for m in p}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeMismatch(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def coords(self, p: Poly, n: int) -> list:
        """Coordinates of a degree-``n`` element in ``basis(n)``."""
        F = self.field
        idx = self._basis_index(n)
        v = [F(0)] * len(idx)
        for m, c in p.items():
            if m not in idx:
                raise DegreeMismatch(f"monomial {self.format_monomial(m)} is not in degree {n}")
            v[idx[m]] = c
        return v

    def from_coords(self, v: Sequence, n: int) -> Poly:
        return {m: c for m, c in zip(self.basis(n), v) if self.field.reduce(c) != 0}

    def _basis_index(self, n: int) -> dict[Monomial, int]:
        key = ("index", n)
        if key not in self._cache:
            self._cache[key] = {m: i for i, m in enumerate(self.basis(n))}
        return self._cache[key]

    def d_matrix(self, n: int) -> list[list]:
        """Matrix of d: A^n -> A^(n+1), rows indexed by basis(n+1)."""
        key = ("dmat", n)
        if key not in self._cache:
            cols = [self.coords(self.d_monomial(m), n + 1) for m in self.basis(n)]
            rows = len(self.basis(n + 1))
            self._cache[key] = [[col[r] for col in cols] for r in range(rows)]
        return self._cache[key]

    # ---- text ------------------------------------------------------------
    def format_monomial(self, m: Monomial) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) or "1"

    def format(self, p: Poly) -> str:
        if not p:
            return "0"
        order = sorted(p, key=lambda m: (self.degree(m), tuple(-e for e in m)))
        out = []
        for m in order:
            c = p[m]
            if self.field.char:
                c = int(c)
            neg = c < 0
            mag = -c if neg else c
            body = self.format_monomial(m)
            if body == "1":
                term = str(mag)
            elif mag == 1:
                term = body
            else:
                term = f"{mag}*{body}"
            out.append(("- " if neg else "+ ") + term)
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def parse_poly(self, text: str) -> Poly:
        return _parse_poly(text, self.names, self.field, self)

    def renamed(self, names: Sequence[str]) -> "FreeCDGA":
        return FreeCDGA(self.field, tuple(names), self.degrees, self.diff, self.degree_cap, self.formal_dim)

    def with_field(self, F: Field) -> "FreeCDGA":
        diff = tuple({m: F(c) for m, c in p.items() if F(c) != 0} for p in self.diff)
        return make_cdga(F, self.names, self.degrees, diff, self.degree_cap, self.formal_dim)


def make_cdga(
    F: Field,
    names: Sequence[str],
    degrees: Sequence[int],
    diff: Sequence[Mapping[Monomial, object]],
    cap: int = DEFAULT_CAP,
    formal_dim: int | None = None,
) -> FreeCDGA:
    """Validate and build a free CDGA: degrees, d raising degree by one, d^2 = 0."""
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator names")
    if any(d < 1 for d in degrees):
        raise DegreeMismatch("generator degrees must be >= 1")
    if cap < 1:
        raise ParseError("cap must be positive")
    A = FreeCDGA(F, tuple(names), tuple(degrees), tuple(dict(p) for p in diff), cap, formal_dim)
    for i, p in enumerate(A.diff):
        for m in p:
            if A.degree(m) != degrees[i] + 1:
                raise DegreeMismatch(
                    f"d {names[i]} has a term {A.format_monomial(m)} of degree {A.degree(m)}, expected {degrees[i] + 1}"
                )
    for i, name in enumerate(names):
        if A.d(dict(A.diff[i])):
            raise NotSquareZero(name)
    return A


# ---- parsing -------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


def _parse_poly(text: str, names: Sequence[str], F: Field, A: FreeCDGA) -> Poly:
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    if text[0] not in "+-":
        text = "+" + text
    pos = 0
    terms = []
    pattern = re.compile(r"([+-])([^+-]+)")
    for match in pattern.finditer(text):
        if match.start() != pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        terms.append((match.group(1), match.group(2).strip()))
    if pos != len(text) or not terms:
        raise ParseError(f"cannot parse polynomial {text!r}")
    out: Poly = {}
    odd = [A.odd(i) for i in range(len(names))]
    for sign, body in terms:
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = F(-1 if sign == "-" else 1)
        factors = [f.strip() for f in body.split("*")]
        mono = [0] * len(names)
        order: list[int] = []
        for f in factors:
            if not f:
                raise ParseError(f"empty factor in {body!r}")
            if re.fullmatch(r"\d+", f):
                coeff = F.reduce(coeff * F(int(f)))
                continue
            base, _, exp = f.partition("^")
            base = base.strip()
            if not _NAME.match(base):
                raise ParseError(f"bad factor {f!r}")
            if base not in names:
                raise ParseError(f"unknown generator {base!r}")
            try:
                e = int(exp) if exp else 1
            except ValueError:
                raise ParseError(f"bad exponent in {f!r}") from None
            if e < 0:
                raise ParseError(f"negative exponent in {f!r}")
            i = list(names).index(base)
            mono[i] += e
            order += [i] * e
        # reorder the written factors into generator order, tracking signs
        sgn = 1
        odd_seen = [i for i in order if odd[i]]
        for a in range(len(odd_seen)):
            for b in range(a + 1, len(odd_seen)):
                if odd_seen[a] > odd_seen[b]:
                    sgn = -sgn
                elif odd_seen[a] == odd_seen[b]:
                    sgn = 0
        coeff = F.reduce(coeff * sgn)
        m = tuple(mono)
        out[m] = F.reduce(out.get(m, F(0)) + coeff)
    return {m: c for m, c in out.items() if c != 0}


def parse_cdga(text: str) -> FreeCDGA:
    """Read the algebra text format.

    Statements are separated by newlines or ``;``; ``#`` starts a comment.
    Accepted statements: ``cdga v1`` (optional header), ``field Q`` /
    ``field Z<p>`` / ``field Zp`` / ``field Z_p``, ``cap N``, ``dim N``,
    ``gen NAME : DEG`` (the colon is optional) and ``d NAME = POLY``.
    Generators without a ``d`` line are cocycles.
    """
    stmts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for part in raw.split("#", 1)[0].split(";"):
            part = part.strip()
            if part:
                stmts.append((lineno, part))
    F = QQ
    cap = DEFAULT_CAP
    formal_dim = None
    names: list[str] = []
    degrees: list[int] = []
    dlines: list[tuple[int, str, str]] = []
    for k, (lineno, s) in enumerate(stmts):
        head, _, rest = s.partition(" ")
        rest = rest.strip()
        if s == "cdga v1":
            if k:
                raise ParseError(f"line {lineno}: header must come first")
        elif head == "field":
            m = re.fullmatch(r"Q|Z_?<?(\d+)>?", rest)
            if not m:
                raise ParseError(f"line {lineno}: unknown field {rest!r}")
            try:
                F = Field(int(m.group(1))) if m.group(1) else QQ
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        elif head in ("cap", "dim"):
            try:
                val = int(rest)
            except ValueError:
                raise ParseError(f"line {lineno}: {head} needs an integer") from None
            if head == "cap":
                cap = val
            else:
                formal_dim = val
        elif head == "gen":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*:?\s*(-?\d+)", rest)
            if not m:
                raise ParseError(f"line {lineno}: expected 'gen NAME : DEGREE'")
            if m.group(1) in names:
                raise ParseError(f"line {lineno}: duplicate generator {m.group(1)!r}")
            names.append(m.group(1))
            degrees.append(int(m.group(2)))
        elif head == "d":
            name, eq, poly = rest.partition("=")
            if not eq:
                raise ParseError(f"line {lineno}: expected 'd NAME = POLY'")
            dlines.append((lineno, name.strip(), poly.strip()))
        else:
            raise ParseError(f"line {lineno}: unrecognized statement {s!r}")
    if not names:
        raise ParseError("no generators")
    if any(d < 1 for d in degrees):
        raise DegreeMismatch("generator degrees must be >= 1")
    proto = FreeCDGA(F, tuple(names), tuple(degrees), tuple({} for _ in names), cap, formal_dim)
    diff: list[Poly] = [{} for _ in names]
    seen = set()
    for lineno, name, poly in dlines:
        if name not in names:
            raise ParseError(f"line {lineno}: d of unknown generator {name!r}")
        if name in seen:
            raise ParseError(f"line {lineno}: d {name} given twice")
        seen.add(name)
        try:
            diff[names.index(name)] = _parse_poly(poly, names, F, proto)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return make_cdga(F, names, degrees, diff, cap, formal_dim)


# ---- built-in models -----------------------------------------------------

def su6_model(F: Field = QQ, cap: int = 20) -> FreeCDGA:
    """Sullivan model of SU(6)/(SU(3) x SU(3)): Lambda(x4, x6, y7, y9, y11)."""
    return parse_cdga(
        f"field {F.name}; cap {cap}; dim 19\n"
        "gen x4 : 4; gen x6 : 6; gen y7 : 7; gen y9 : 9; gen y11 : 11\n"
        "d y7 = x4*x4; d y9 = x4*x6; d y11 = x6*x6\n"
    )


def cp_model(n: int, F: Field = QQ, cap: int | None = None) -> FreeCDGA:
    """Lambda(x2, y_{2n+1}) with dy = x^(n+1), a model of complex projective n-space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return parse_cdga(
        f"field {F.name}; cap {4 * n + 1 if cap is None else cap}; dim {2 * n}\n"
        f"gen x : 2; gen y : {2 * n + 1}; d y = x^{n + 1}\n"
    )


def torus_model(n: int, F: Field = QQ, cap: int | None = None) -> FreeCDGA:
    """Exterior algebra on n closed degree-1 generators (the n-torus)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = "; ".join(f"gen x{i} : 1" for i in range(1, n + 1))
    return parse_cdga(f"field {F.name}; cap {2 * n + 1 if cap is None else cap}; dim {n}\n{gens}\n")


BUILTIN_MODELS = ("su6", "cp <n>", "torus <n>")


def builtin_model(spec: str, F: Field = QQ, cap: int | None = None) -> FreeCDGA:
    """Look up ``su6``, ``cp N`` or ``torus N``."""
    parts = spec.replace("-", " ").split()
    try:
        if parts == ["su6"]:
            return su6_model(F, 20 if cap is None else cap)
        if len(parts) == 2 and parts[0] in ("cp", "torus"):
            n = int(parts[1])
            return (cp_model if parts[0] == "cp" else torus_model)(n, F, cap)
    except ValueError as exc:
        raise ParseError(f"bad model {spec!r}: {exc}") from None
    raise ParseError(f"unknown built-in model {spec!r}; choose from {list(BUILTIN_MODELS)}")
