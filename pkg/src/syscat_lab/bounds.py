"""Certified intervals for LS category and systolic category from descriptors.

A rule fires only when its hypotheses are affirmatively known; unknown
fields never trigger anything.  Both intervals are computed together
because the equivalence ``syscat = dim <=> cat = dim`` couples them, and
the coupling is propagated in both directions until nothing changes.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import InconsistentDescriptor, InvalidPartition, ParseError, UnknownName

PI1_KINDS = ("trivial", "free", "other", "unknown")
GROMOV_CN_MAGNITUDE = "C_n is of order n^(2 n^2)"


@dataclass(frozen=True)
class ManifoldDescriptor:
    """What is known about a closed connected manifold; None means unknown.

    ``connectivity_k = k`` says the manifold is (k-1)-connected.
    ``massey_degrees = (p1, p2)`` are the degrees of the classes in a
    nontrivial product <w1, w1, w2>, and ``rational_cat`` is the rational
    LS category (the Toomer invariant e0 for simply connected manifolds).
    """

    dim: int
    orientable: bool | None = None
    pi1: str = "unknown"
    pi1_rank: int | None = None
    essential: bool | None = None
    betti_q: tuple[int, ...] | None = None
    connectivity_k: int | None = None
    cuplength_r: int | None = None
    cuplength_any: int | None = None
    massey_nontrivial: bool | None = None
    massey_degrees: tuple[int, int] | None = None
    jacobi_fiber_nonzero: bool | None = None
    is_homotopy_sphere: bool | None = None
    rational_cat: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise InconsistentDescriptor("dim must be >= 1")
        if self.pi1 not in PI1_KINDS:
            raise InconsistentDescriptor(f"pi1 must be one of {PI1_KINDS}, got {self.pi1!r}")
        if self.pi1_rank is not None and (self.pi1 != "free" or self.pi1_rank < 1):
            raise InconsistentDescriptor("pi1_rank is only meaningful for free pi1 of rank >= 1")
        if self.betti_q is not None:
            b = self.betti_q
            if len(b) != self.dim + 1:
                raise InconsistentDescriptor(f"betti_q needs {self.dim + 1} entries, got {len(b)}")
            if b[0] != 1:
                raise InconsistentDescriptor("b0 must be 1 (connected)")
            if any(x < 0 for x in b):
                raise InconsistentDescriptor("Betti numbers are non-negative")
            if self.orientable is True and (b[-1] != 1 or any(b[k] != b[self.dim - k] for k in range(self.dim + 1))):
                raise InconsistentDescriptor("orientable manifold violates Poincare duality")
            if self.orientable is False and b[-1] != 0:
                raise InconsistentDescriptor("non-orientable manifold has top rational Betti number 0")
            if self.pi1 == "trivial" and self.dim >= 1 and b[1] != 0:
                raise InconsistentDescriptor("simply connected manifold has b1 = 0")
            if self.pi1 == "free" and self.pi1_rank is not None and b[1] != self.pi1_rank:
                raise InconsistentDescriptor("b1 of a free fundamental group is its rank")
            if self.connectivity_k is not None:
                if any(b[j] for j in range(1, min(self.connectivity_k, self.dim + 1))):
                    raise InconsistentDescriptor("connectivity forces vanishing low Betti numbers")
        if self.connectivity_k is not None:
            if self.connectivity_k < 1:
                raise InconsistentDescriptor("connectivity_k must be >= 1")
            if self.connectivity_k >= 2 and self.pi1 not in ("trivial", "unknown"):
                raise InconsistentDescriptor("connectivity_k >= 2 requires trivial pi1")
        for key in ("cuplength_r", "cuplength_any", "rational_cat"):
            v = getattr(self, key)
            if v is not None and not 0 <= v <= self.dim:
                raise InconsistentDescriptor(f"{key} must lie in [0, dim]")
        if self.massey_degrees is not None and (len(self.massey_degrees) != 2 or min(self.massey_degrees) < 1):
            raise InconsistentDescriptor("massey_degrees must be two positive integers")

    @property
    def b1(self) -> int | None:
        if self.betti_q is not None and self.dim >= 1:
            return self.betti_q[1]
        if self.pi1 == "trivial":
            return 0
        if self.pi1 == "free" and self.pi1_rank is not None:
            return self.pi1_rank
        return None


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    citation: str
    side: str  # "lo" or "hi"
    value: int


@dataclass(frozen=True)
class BoundInterval:
    lo: int
    hi: int
    trace: tuple[TraceEntry, ...]
    conjectural_lo: int | None = None
    conjectural_trace: tuple[TraceEntry, ...] = ()

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    @property
    def rule_ids(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(t.rule for t in self.trace))


CITE = {
    "R-cat-1": "normalized LS category of a closed n-manifold lies in [1, n]",
    "R-cat-2": "Berstein: cat M = dim M exactly when M is essential",
    "R-cat-3": "Berstein: an inessential manifold has cat M < dim M",
    "R-cat-4": "Gomez-Larranaga and Gonzalez-Acuna: cat of a 3-manifold is 1, 2 or 3 as pi1 is trivial, free or neither",
    "R-cat-5": "cat X <= dim X / k for a (k-1)-connected CW complex X",
    "R-cat-6": "simply connected closed 4- and 5-manifolds other than homotopy spheres have cat 2",
    "R-cat-7": "cup-length over any coefficients bounds cat from below",
    "R-cat-8": "closed surfaces: cat S^2 = 1 and cat = 2 for every other surface",
    "R-cat-9": "rational LS category (Toomer invariant e0 when simply connected) bounds cat from below",
    "R-cat-sync": "Babenko, Gromov, Berstein: syscat M = dim M if and only if cat M = dim M",
    "R-sys-1": "systolic category of an n-manifold lies in [1, n] by definition",
    "R-sys-2": f"Gromov: essential n-manifolds satisfy pisys1^n <= C_n vol ({GROMOV_CN_MAGNITUDE})",
    "R-sys-3": "Babenko, Gromov, Berstein: syscat M = dim M if and only if cat M = dim M",
    "R-sys-4": "orientable with some b_k >= 1, 0 < k < n: stable k- and (n-k)-systole inequality gives syscat >= 2",
    "R-sys-5": "Gromov: syscat M >= real cup-length",
    "R-sys-6": "nonzero Abel-Jacobi fiber class gives syscat >= b1 + 1 (capped at dim)",
    "R-sys-7": "3-manifolds: syscat is 1, 3 or 2 for trivial, non-free, or free pi1 (orientable); only [1, 2] when non-orientable with free pi1",
    "R-sys-8": "Gromov 4/3 and Pu pi/2 inequalities: syscat = cat for every closed surface",
    "C-cuplength": "conjecture: syscat M >= cup-length over any coefficients",
    "C-smale": "conjectured inequality sys2 * sys3 <= C vol5 with Z_k systoles on Smale's rational homology 5-spheres",
    "C-rp2xsn": "conjectured inequality sys1 * sys1 * sys_n <= C vol on RP^2 x S^n",
}


def _derive(d: ManifoldDescriptor) -> ManifoldDescriptor:
    """Close the descriptor under elementary implications (to a fixed point)."""
    n = d.dim
    while True:
        new = d
        if new.cuplength_r is not None:
            any_ = new.cuplength_any if new.cuplength_any is not None else 0
            if new.cuplength_r > any_:
                new = replace(new, cuplength_any=new.cuplength_r)
        if new.connectivity_k is not None and new.connectivity_k >= 2 and new.pi1 == "unknown":
            new = replace(new, pi1="trivial")
        if new.is_homotopy_sphere is True:
            if n == 1:
                raise InconsistentDescriptor("there is no simply connected closed 1-manifold")
            if new.pi1 == "unknown":
                new = replace(new, pi1="trivial")
            if new.connectivity_k is None or new.connectivity_k < n:
                new = replace(new, connectivity_k=n)
            if new.cuplength_any is not None and new.cuplength_any > 1:
                raise InconsistentDescriptor("a homotopy sphere has cup-length 1")
        if new.cuplength_any is not None and new.cuplength_any >= 2 and new.is_homotopy_sphere is None:
            new = replace(new, is_homotopy_sphere=False)
        if new.pi1 == "trivial":
            if n == 1:
                raise InconsistentDescriptor("the circle is not simply connected")
            if new.orientable is False:
                raise InconsistentDescriptor("simply connected manifolds are orientable")
            if new.orientable is None:
                new = replace(new, orientable=True)
            if new.connectivity_k is None or new.connectivity_k < 2:
                new = replace(new, connectivity_k=2)
            if new.essential is True:
                raise InconsistentDescriptor("a simply connected manifold is inessential")
            new = replace(new, essential=False)
        if n == 1:
            # the circle
            if new.pi1 == "unknown":
                new = replace(new, pi1="free", pi1_rank=1)
            if new.essential is False:
                raise InconsistentDescriptor("the circle is essential")
            new = replace(new, essential=True, orientable=True)
        if n == 2:
            sphere = new.pi1 == "trivial" or new.is_homotopy_sphere is True
            if new.pi1 == "free":
                raise InconsistentDescriptor("no closed surface has free fundamental group")
            nonsphere = (
                new.pi1 == "other"
                or new.orientable is False
                or (new.betti_q is not None and new.betti_q[1] > 0)
                or new.essential is True
                or new.is_homotopy_sphere is False
                or (new.cuplength_any is not None and new.cuplength_any >= 2)
            )
            if sphere and nonsphere:
                raise InconsistentDescriptor("surface data is contradictory")
            if sphere:
                new = replace(new, is_homotopy_sphere=True)
            if nonsphere:
                new = replace(new, pi1="other", essential=True, is_homotopy_sphere=False)
        if n == 3 and new.pi1 != "unknown":
            ess = new.pi1 == "other"
            if new.essential is not None and new.essential != ess:
                raise InconsistentDescriptor("3-manifold essentiality is determined by pi1")
            new = replace(new, essential=ess)
        if new == d:
            return d
        d = new


class _Collector:
    def __init__(self, dim: int):
        self.dim = dim
        self.cat: list[TraceEntry] = []
        self.sys: list[TraceEntry] = []

    def add(self, which: str, rule: str, side: str, value: int) -> bool:
        """Record a bound; returns True if it tightened the current interval."""
        lo, hi = self.interval(which)
        entries = self.cat if which == "cat" else self.sys
        entries.append(TraceEntry(rule, CITE[rule], side, value))
        return value > lo if side == "lo" else value < hi

    def interval(self, which: str) -> tuple[int, int]:
        entries = self.cat if which == "cat" else self.sys
        lo = max((e.value for e in entries if e.side == "lo"), default=1)
        hi = min((e.value for e in entries if e.side == "hi"), default=self.dim)
        return lo, hi


def _evaluate(desc: ManifoldDescriptor, conjecture_mode: bool) -> tuple[BoundInterval, BoundInterval]:
    d = _derive(desc)
    n = d.dim
    c = _Collector(n)

    # cat rules
    c.cat += [TraceEntry("R-cat-1", CITE["R-cat-1"], "lo", 1), TraceEntry("R-cat-1", CITE["R-cat-1"], "hi", n)]
    if d.essential is True:
        c.add("cat", "R-cat-2", "lo", n)
        c.add("cat", "R-cat-2", "hi", n)
    if d.essential is False:
        c.add("cat", "R-cat-3", "hi", n - 1)
    if n == 3:
        val = {"trivial": 1, "free": 2, "other": 3}.get(d.pi1)
        if val is not None:
            c.add("cat", "R-cat-4", "lo", val)
            c.add("cat", "R-cat-4", "hi", val)
    if d.connectivity_k is not None:
        c.add("cat", "R-cat-5", "hi", max(1, n // d.connectivity_k))
    if n in (4, 5) and d.pi1 == "trivial" and d.is_homotopy_sphere is False:
        c.add("cat", "R-cat-6", "lo", 2)
        c.add("cat", "R-cat-6", "hi", 2)
    if d.cuplength_any is not None and d.cuplength_any >= 1:
        c.add("cat", "R-cat-7", "lo", d.cuplength_any)
    if n == 2 and d.is_homotopy_sphere is not None:
        val = 1 if d.is_homotopy_sphere else 2
        c.add("cat", "R-cat-8", "lo", val)
        c.add("cat", "R-cat-8", "hi", val)
    if d.rational_cat is not None and d.rational_cat >= 1:
        c.add("cat", "R-cat-9", "lo", d.rational_cat)

    # syscat rules
    c.sys += [TraceEntry("R-sys-1", CITE["R-sys-1"], "lo", 1), TraceEntry("R-sys-1", CITE["R-sys-1"], "hi", n)]
    if d.essential is True:
        c.add("sys", "R-sys-2", "lo", n)
    if d.orientable is True and d.betti_q is not None and any(d.betti_q[k] >= 1 for k in range(1, n)):
        c.add("sys", "R-sys-4", "lo", 2)
    if d.cuplength_r is not None and d.cuplength_r >= 1:
        c.add("sys", "R-sys-5", "lo", d.cuplength_r)
    if d.jacobi_fiber_nonzero is True and d.b1 is not None:
        c.add("sys", "R-sys-6", "lo", min(d.b1 + 1, n))
    if n == 3:
        if d.pi1 == "trivial":
            c.add("sys", "R-sys-7", "lo", 1)
            c.add("sys", "R-sys-7", "hi", 1)
        elif d.pi1 == "other":
            c.add("sys", "R-sys-7", "lo", 3)
            c.add("sys", "R-sys-7", "hi", 3)
        elif d.pi1 == "free" and d.orientable is True:
            c.add("sys", "R-sys-7", "lo", 2)
            c.add("sys", "R-sys-7", "hi", 2)
        elif d.pi1 == "free" and d.orientable is False:
            c.add("sys", "R-sys-7", "hi", 2)
    if n == 2 and d.is_homotopy_sphere is not None:
        val = 1 if d.is_homotopy_sphere else 2
        c.add("sys", "R-sys-8", "lo", val)
        c.add("sys", "R-sys-8", "hi", val)

    # couple the two intervals through syscat = n <=> cat = n
    changed = True
    while changed:
        changed = False
        clo, chi = c.interval("cat")
        slo, shi = c.interval("sys")
        if chi < n and shi > n - 1:
            changed |= c.add("sys", "R-sys-3", "hi", n - 1)
        if clo == n and slo < n:
            changed |= c.add("sys", "R-sys-3", "lo", n)
        if shi < n and chi > n - 1:
            changed |= c.add("cat", "R-cat-sync", "hi", n - 1)
        if slo == n and clo < n:
            changed |= c.add("cat", "R-cat-sync", "lo", n)

    clo, chi = c.interval("cat")
    slo, shi = c.interval("sys")
    if clo > chi:
        raise InconsistentDescriptor(f"cat bounds conflict: lower {clo} > upper {chi}; trace {[e.rule for e in c.cat]}")
    if slo > shi:
        raise InconsistentDescriptor(f"syscat bounds conflict: lower {slo} > upper {shi}; trace {[e.rule for e in c.sys]}")

    conj_lo = None
    conj_trace: list[TraceEntry] = []
    if conjecture_mode:
        candidates = []
        if d.cuplength_any is not None and d.cuplength_any > slo:
            candidates.append(("C-cuplength", d.cuplength_any))
        if (
            n == 5
            and d.pi1 == "trivial"
            and d.betti_q is not None
            and all(b == 0 for b in d.betti_q[1:n])
            and d.cuplength_any is not None
            and d.cuplength_any >= 2
        ):
            candidates.append(("C-smale", 2))
        if d.orientable is False and d.cuplength_any == 3 and n >= 3:
            candidates.append(("C-rp2xsn", 3))
        for rule, val in candidates:
            val = min(val, shi)
            if val > slo:
                conj_trace.append(TraceEntry(rule, CITE[rule], "lo", val))
        if conj_trace:
            conj_lo = max(e.value for e in conj_trace)

    cat = BoundInterval(clo, chi, tuple(c.cat))
    sys = BoundInterval(slo, shi, tuple(c.sys), conj_lo, tuple(conj_trace))
    return cat, sys


def cat_bounds(desc: ManifoldDescriptor) -> BoundInterval:
    return _evaluate(desc, False)[0]


def syscat_bounds(desc: ManifoldDescriptor, conjecture_mode: bool = False) -> BoundInterval:
    return _evaluate(desc, conjecture_mode)[1]


def all_bounds(desc: ManifoldDescriptor, conjecture_mode: bool = False) -> tuple[BoundInterval, BoundInterval]:
    """(cat interval, syscat interval) from one joint evaluation."""
    return _evaluate(desc, conjecture_mode)


# ---- constants -------------------------------------------------------------

@dataclass(frozen=True)
class InequalitySpec:
    n: int
    p1: int
    p2: int
    p3: int
    A1: Fraction
    A2: Fraction
    statement: str

    @property
    def constant(self) -> Fraction:
        return self.A1 + self.A2


def massey_inequality_spec(n: int, p1: int, p2: int) -> InequalitySpec:
    """Constants of the systolic inequality attached to a nontrivial <w1, w1, w2>.

    With p3 = n - (2 p1 + p2 - 1) and
    A_j = n! / (p_j! (p1 + p_j)! p3!) * binom(p1 + p_j, p1),
    every metric satisfies
    stsys_p1^2 stsys_p2 stsys_p3 <= (A1 + A2) IQ vol_n.
    """
    if min(n, p1, p2) < 1:
        raise InvalidPartition("n, p1, p2 must be positive")
    p3 = n - (2 * p1 + p2 - 1)
    if p3 < 1:
        raise InvalidPartition(f"p3 = n - (2 p1 + p2 - 1) = {p3} < 1")
    f = math.factorial

    def A(pj: int) -> Fraction:
        return Fraction(f(n), f(pj) * f(p1 + pj) * f(p3)) * math.comb(p1 + pj, p1)

    A1, A2 = A(p1), A(p2)
    const = A1 + A2
    const_text = str(const.numerator) if const.denominator == 1 else f"{const.numerator}/{const.denominator}"
    statement = (
        f"stsys_{p1}(G)^2 * stsys_{p2}(G) * stsys_{p3}(G) <= {const_text} * IQ(G) * vol_{n}(G)"
    )
    return InequalitySpec(n, p1, p2, p3, A1, A2, statement)


def gromov_cpn_constant(n: int) -> int:
    """Optimal constant in stsys_2^n <= n! vol_2n on complex projective n-space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.factorial(n)


def iq_modified_syscat_lower(desc: ManifoldDescriptor) -> int | None:
    """Systole factors minus IQ factors (4 - 1) when the Massey-product inequality applies.

    Needs a nontrivial <w1, w1, w2> with known degrees, orientability and
    Betti numbers with b_p1 = b_p2 = b_p3 = 1; otherwise None.
    """
    d = desc
    if d.massey_nontrivial is not True or d.massey_degrees is None:
        return None
    if d.orientable is not True and d.pi1 != "trivial":
        return None
    if d.betti_q is None:
        return None
    p1, p2 = d.massey_degrees
    p3 = d.dim - (2 * p1 + p2 - 1)
    if p3 < 1:
        return None
    if any(p > d.dim or d.betti_q[p] != 1 for p in (p1, p2, p3)):
        return None
    systole_factors = 4  # stsys_p1 twice, stsys_p2, stsys_p3
    iq_factors = 1
    return systole_factors - iq_factors


# ---- descriptor files ------------------------------------------------------

_BOOL = {"yes": True, "true": True, "no": False, "false": False, "unknown": None}
_ALIASES = {"betti": "betti_q", "cuplength": "cuplength_any", "cuplength_real": "cuplength_r"}


def _ints(text: str) -> tuple[int, ...]:
    parts = [p for p in re.split(r"[\s,\[\]()]+", text) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"expected integers, got {text!r}") from None


def parse_descriptor(text: str) -> ManifoldDescriptor:
    """Read ``key: value`` lines; omitted keys are unknown, ``#`` starts a comment."""
    kw: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key = key.strip().lower()
        key = _ALIASES.get(key, key)
        value = value.strip()
        if key in kw:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key == "name":
                kw[key] = value
            elif key in ("dim", "pi1_rank", "connectivity_k", "cuplength_r", "cuplength_any", "rational_cat"):
                if value.lower() != "unknown":
                    kw[key] = int(value)
            elif key in ("orientable", "essential", "massey_nontrivial", "jacobi_fiber_nonzero", "is_homotopy_sphere"):
                if value.lower() not in _BOOL:
                    raise ParseError(f"line {lineno}: {key} must be yes/no/unknown")
                kw[key] = _BOOL[value.lower()]
            elif key == "pi1":
                m = re.fullmatch(r"(trivial|other|unknown)|free\s*(?:\(\s*(\d+)\s*\)|\s(\d+))?", value.lower())
                if not m:
                    raise ParseError(f"line {lineno}: bad pi1 {value!r}")
                if m.group(1):
                    kw["pi1"] = m.group(1)
                else:
                    kw["pi1"] = "free"
                    r = m.group(2) or m.group(3)
                    if r is not None:
                        kw["pi1_rank"] = int(r)
            elif key == "betti_q":
                kw[key] = _ints(value)
            elif key == "massey_degrees":
                kw[key] = _ints(value)
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if "dim" not in kw:
        raise ParseError("descriptor needs 'dim'")
    return ManifoldDescriptor(**kw)


def dump_descriptor(d: ManifoldDescriptor) -> str:
    def tri(v):
        return "unknown" if v is None else ("yes" if v else "no")

    lines = [f"dim: {d.dim}"]
    if d.name:
        lines.insert(0, f"name: {d.name}")
    lines.append(f"orientable: {tri(d.orientable)}")
    lines.append(f"pi1: {d.pi1}" + (f"({d.pi1_rank})" if d.pi1_rank is not None else ""))
    lines.append(f"essential: {tri(d.essential)}")
    if d.betti_q is not None:
        lines.append("betti_q: " + " ".join(map(str, d.betti_q)))
    for key in ("connectivity_k", "cuplength_r", "cuplength_any", "rational_cat"):
        v = getattr(d, key)
        if v is not None:
            lines.append(f"{key}: {v}")
    for key in ("massey_nontrivial", "jacobi_fiber_nonzero", "is_homotopy_sphere"):
        lines.append(f"{key}: {tri(getattr(d, key))}")
    if d.massey_degrees is not None:
        lines.append("massey_degrees: " + " ".join(map(str, d.massey_degrees)))
    return "\n".join(lines) + "\n"


# ---- known cases -------------------------------------------------------------

@dataclass(frozen=True)
class KnownCase:
    key: str
    title: str
    cat: tuple[int, int]
    syscat: tuple[int, int] | None
    descriptor: ManifoldDescriptor
    citations: tuple[str, ...]
    extra: dict = field(default_factory=dict)


def _m19_descriptor() -> ManifoldDescriptor:
    betti = [0] * 20
    for k in (0, 4, 6, 13, 15, 19):
        betti[k] = 1
    return ManifoldDescriptor(
        dim=19,
        orientable=True,
        pi1="trivial",
        betti_q=tuple(betti),
        connectivity_k=4,
        cuplength_r=2,
        cuplength_any=2,
        massey_nontrivial=True,
        massey_degrees=(4, 6),
        rational_cat=3,
        is_homotopy_sphere=False,
        name="SU(6)/(SU(3) x SU(3))",
    )


def _cpn(n: int) -> KnownCase:
    betti = tuple(1 if k % 2 == 0 else 0 for k in range(2 * n + 1))
    desc = ManifoldDescriptor(
        dim=2 * n,
        orientable=True,
        pi1="trivial",
        betti_q=betti,
        connectivity_k=2,
        cuplength_r=n,
        cuplength_any=n,
        is_homotopy_sphere=False if n > 1 else True,
        name=f"CP^{n}",
    )
    return KnownCase(
        key=f"cp{n}",
        title=f"complex projective space CP^{n}",
        cat=(n, n),
        syscat=(n, n),
        descriptor=desc,
        citations=(
            "Gromov: stsys_2^n <= n! vol_2n, attained by the Fubini-Study metric, so syscat CP^n = n",
            "cup-length n and cat <= dim/2 give cat CP^n = n",
        ),
        extra={"gromov_constant": gromov_cpn_constant(n)},
    )


def _table() -> dict[str, KnownCase]:
    rp3 = ManifoldDescriptor(dim=3, orientable=True, pi1="other", betti_q=(1, 0, 0, 1), name="RP^3")
    s2 = ManifoldDescriptor(dim=2, orientable=True, pi1="trivial", betti_q=(1, 0, 1), name="S^2")
    torus = ManifoldDescriptor(dim=2, orientable=True, pi1="other", betti_q=(1, 2, 1), name="T^2")
    m16_betti = [0] * 17
    for k in (0, 2, 14, 16):
        m16_betti[k] = 1
    m16 = ManifoldDescriptor(
        dim=16,
        orientable=True,
        pi1="trivial",
        betti_q=tuple(m16_betti),
        connectivity_k=2,
        cuplength_r=2,
        cuplength_any=2,
        name="Singhof S^2-bundle over S^14",
    )
    smale = ManifoldDescriptor(
        dim=5,
        orientable=True,
        pi1="trivial",
        betti_q=(1, 0, 0, 0, 0, 1),
        connectivity_k=2,
        cuplength_any=2,
        is_homotopy_sphere=False,
        name="Smale M_k",
    )
    return {
        "rp3": KnownCase(
            "rp3", "real projective 3-space", (3, 3), (3, 3), rp3,
            ("RP^3 is essential, so cat = syscat = 3 (Berstein; Gromov)",),
        ),
        "s2": KnownCase("s2", "the 2-sphere", (1, 1), (1, 1), s2, ("cat S^2 = syscat S^2 = 1",)),
        "surface": KnownCase(
            "surface", "closed surface other than S^2", (2, 2), (2, 2), torus,
            ("Gromov 4/3 inequality for infinite pi1, Pu pi/2 for RP^2: cat = syscat = 2",),
        ),
        "cpn": _cpn(3),
        "singhof-m16": KnownCase(
            "singhof-m16", "Singhof's S^2-bundle M^16 over S^14", (3, 3), None, m16,
            (
                "Singhof: cat M^16 = 3",
                "compression rules out sys2^8 <= C vol16; stable systolic category is 2",
            ),
            extra={"stable_syscat": 2},
        ),
        "m19": KnownCase(
            "m19", "SU(6)/(SU(3) x SU(3))", (3, 4), None, _m19_descriptor(),
            (
                "3 <= cat M^19 <= 4",
                "rational category = Toomer invariant e0 = 3 (Felix-Halperin-Lemaire)",
                "nontrivial <w4, w4, w6> gives an IQ-modified systolic category >= 4 - 1 = 3",
            ),
            extra={"rational_cat": 3, "iq_modified_syscat_lower": 3},
        ),
        "smale-mk": KnownCase(
            "smale-mk", "Smale's spin rational homology 5-sphere M_k", (2, 2), None, smale,
            (
                "simply connected 5-manifold, not a homotopy sphere: cat M_k = 2",
                "systolic category open; conjecturally >= 2 from Z_k cup-length",
            ),
        ),
    }


KNOWN_NAMES = ("rp3", "s2", "surface", "cpn", "singhof-m16", "m19", "smale-mk")


def lookup_known(name: str) -> KnownCase:
    key = name.strip().lower()
    m = re.fullmatch(r"cp(?:n|\^?(\d+))?", key)
    if m:
        return _cpn(int(m.group(1))) if m.group(1) else _table()["cpn"]
    table = _table()
    if key not in table:
        raise UnknownName(f"unknown case {name!r}; known: {', '.join(KNOWN_NAMES)} (or cp<n>)")
    return table[key]
