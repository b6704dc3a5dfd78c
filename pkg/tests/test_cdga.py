import math
import random

import pytest

from oracles import homotopy_example, solve_f2
from syscat_lab import cdga
from syscat_lab.cdga import (
    AlgebraMap,
    Field,
    HomotopyFamily,
    MultiMap,
    QQ,
    betti_numbers,
    class_of,
    cohomology,
    cp_model,
    cup_length,
    in_coset,
    massey_triple,
    parse_cdga,
    su6_model,
    toomer_e0,
    toomer_witness,
    torus_model,
    verify_higher_homotopies,
)
from syscat_lab.errors import CapExceeded, DegreeMismatch, NoFundamentalClass, NotSquareZero, ParseError, ProductsNotZero

Z2 = Field(2)
MODELS = {
    "su6": su6_model(),
    "cp3": cp_model(3),
    "torus4": torus_model(4),
    "su6-z2": su6_model(Z2),
    "mixed": parse_cdga("gen a : 2; gen b : 3; gen c : 3; gen e : 6; d b = 0; d c = a^2; d e = a^2*b"),
}


def _random_monomial(A, rng):
    n = rng.randrange(0, A.degree_cap)
    basis = A.basis(n)
    return rng.choice(basis) if basis else A.unit()


@pytest.mark.parametrize("name", MODELS)
def test_d_squared_and_leibniz(name):
    A = MODELS[name]
    rng = random.Random(name)
    F = A.field
    for _ in range(1000):
        a, b = _random_monomial(A, rng), _random_monomial(A, rng)
        pa, pb = {a: F(1)}, {b: F(1)}
        assert not A.d(A.d(pa))
        sign = -1 if A.degree(a) % 2 else 1
        lhs = A.d(A.mul(pa, pb))
        rhs = A.add(A.mul(A.d(pa), pb), A.mul(pa, A.d(pb)), coeffs=[1, sign])
        assert A.add(lhs, rhs, coeffs=[1, -1]) == {}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("F", [QQ, Z2, Field(5)], ids=["Q", "Z2", "Z5"])
def test_torus_betti_numbers(n, F):
    A = torus_model(n, F)
    assert betti_numbers(A, n) == [math.comb(n, k) for k in range(n + 1)]
    assert cup_length(A) == n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("F", [QQ, Z2], ids=["Q", "Z2"])
def test_cp_betti_numbers(n, F):
    A = cp_model(n, F)
    assert betti_numbers(A) == [1 if k <= 2 * n and k % 2 == 0 else 0 for k in range(A.degree_cap)]
    assert toomer_e0(A, 2 * n) == n
    assert cup_length(A) == n


def test_su6_betti_numbers():
    betti = betti_numbers(su6_model(), 19)
    assert [k for k, b in enumerate(betti) if b] == [0, 4, 6, 13, 15, 19]
    assert all(b <= 1 for b in betti)


def test_su6_toomer_witness():
    A = su6_model()
    e0, witness = toomer_witness(A, 19)
    assert e0 == 3
    top_class = A.parse_poly("x4^2*y11 - x4*x6*y9")
    assert not A.d(top_class)
    H = cohomology(A, 19)
    assert not H.is_exact(top_class)
    assert not H.is_exact(witness)
    assert min(A.word_length(m) for m in witness) == 3


def test_su6_cup_length_uses_formal_dimension():
    assert cup_length(su6_model()) == 2
    no_dim = parse_cdga("gen x4 : 4; gen x6 : 6; gen y7 : 7; gen y9 : 9; gen y11 : 11; d y7 = x4^2; d y9 = x4*x6; d y11 = x6^2; cap 20")
    with pytest.raises(CapExceeded):
        cup_length(no_dim)


def test_acyclic_model_has_cup_length_zero():
    A = parse_cdga("gen a : 1; gen b : 2; d a = b; cap 10")
    assert betti_numbers(A) == [1] + [0] * 9
    assert cup_length(A) == 0


def test_z2_su6_runs():
    A = su6_model(Z2)
    betti = betti_numbers(A, 19)
    assert betti[0] == 1 and betti[19] >= 1


# ---- Massey products -----------------------------------------------------------------


def test_su6_massey_product():
    A = su6_model()
    x4, x6 = class_of(A, A.gen("x4")), class_of(A, A.gen("x6"))
    coset = massey_triple(A, x4, x4, x6)
    assert coset.degree == 13
    assert coset.nontrivial
    assert coset.indeterminacy == ()
    assert in_coset(A, coset, class_of(A, A.parse_poly("y7*x6 - x4*y9")))


def _random_cocycle(A, n, rng):
    H = cohomology(A, n)
    out = {}
    for z in H.representatives():
        out = A.add(out, z, coeffs=[1, rng.randint(-3, 3)])
    if n > 0 and A.basis(n - 1):
        for m in A.basis(n - 1):
            out = A.add(out, A.d({m: A.field(1)}), coeffs=[1, rng.randint(-3, 3)])
    return out


def test_massey_invariant_under_rechoices():
    A = su6_model()
    rng = random.Random(1)
    x4, x6 = class_of(A, A.gen("x4")), class_of(A, A.gen("x6"))
    coset = massey_triple(A, x4, x4, x6)
    x, y = coset.primitives
    for _ in range(100):
        prims = (A.add(x, _random_cocycle(A, 7, rng)), A.add(y, _random_cocycle(A, 9, rng)))
        alt = massey_triple(A, x4, x4, x6, primitives=prims)
        assert in_coset(A, coset, alt.representative)
        assert alt.nontrivial


def test_massey_with_other_representatives():
    # e, f form an acyclic pair, so x + f is another representative of [x]
    A = parse_cdga("gen x : 2; gen e : 1; gen f : 2; gen y : 3; d e = f; d y = x^2; cap 8")
    x = class_of(A, A.gen("x"))
    coset = massey_triple(A, x, x, x)
    other = A.add(A.gen("x"), A.gen("f"))
    alt = massey_triple(A, x, x, x, representatives=(other, A.gen("x"), other))
    assert in_coset(A, coset, alt.representative)
    with pytest.raises(ValueError):
        massey_triple(A, x, x, x, representatives=(A.gen("f"), A.gen("x"), A.gen("x")))


def test_massey_requires_vanishing_products():
    A = torus_model(3)
    u, v, w = (class_of(A, A.gen(g)) for g in ("x1", "x2", "x3"))
    with pytest.raises(ProductsNotZero):
        massey_triple(A, u, v, w)


def test_renaming_is_functorial():
    A = su6_model()
    names = ("p", "q", "r", "s", "t")
    B = A.renamed(names)
    assert betti_numbers(B, 19) == betti_numbers(A, 19)
    assert toomer_e0(B, 19) == 3
    p, q = class_of(B, B.gen("p")), class_of(B, B.gen("q"))
    coset = massey_triple(B, p, p, q)
    assert coset.nontrivial
    assert in_coset(B, coset, class_of(B, B.parse_poly("r*q - p*s")))


# ---- parsing and errors ------------------------------------------------------------------


def test_parse_variants():
    text = "cdga v1\nfield Z<3>\ncap 9\ngen x : 2\ngen y : 3  # comment\nd y = x*x\n"
    A = parse_cdga(text)
    assert A.field.char == 3
    assert A.degree_cap == 9
    assert betti_numbers(A) == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    assert parse_cdga("gen x : 1; d x = 0").diff[0] == {}


def test_odd_generators_anticommute_in_parsing():
    A = parse_cdga("gen a : 1; gen b : 1")
    assert A.add(A.parse_poly("a*b"), A.parse_poly("b*a")) == {}
    assert A.parse_poly("a*a") == {}


@pytest.mark.parametrize(
    "text,err",
    [
        ("gen x : 2; gen y : 3; d y = x", DegreeMismatch),
        ("gen a : 1; gen b : 2; d a = b; d b = a*b", NotSquareZero),
        ("gen x : 2; d x = z", ParseError),
        ("gen x : 2; gen x : 4", ParseError),
        ("field Z4; gen x : 1", ParseError),
        ("gen x : 0", DegreeMismatch),
        ("", ParseError),
        ("gen x : 2; d y = x", ParseError),
        ("gen x : 2; d x = 3 +", ParseError),
        ("cap ten; gen x : 1", ParseError),
    ],
)
def test_bad_algebras(text, err):
    with pytest.raises(err):
        parse_cdga(text)


def test_cap_and_fundamental_class_errors():
    A = torus_model(2)
    with pytest.raises(CapExceeded):
        cohomology(A, A.degree_cap)
    with pytest.raises(NoFundamentalClass):
        toomer_witness(A, 1)


def test_builtin_lookup():
    assert cdga.builtin_model("cp 2").names == ("x", "y")
    assert cdga.builtin_model("torus-3").n_gens == 3
    with pytest.raises(ParseError):
        cdga.builtin_model("sp3")


# ---- maps up to higher homotopy --------------------------------------------------------------


def test_identity_is_strict():
    A = cp_model(2)
    checks = verify_higher_homotopies(cdga.identity_family(A), 3)
    assert all(c.holds for c in checks)
    assert checks[0].n_checked > 0


def test_algebra_maps():
    A = cp_model(1)
    assert AlgebraMap(A, A, (A.gen("x"), A.gen("y"))).is_chain_map()
    assert not AlgebraMap(A, A, (A.scale(2, A.gen("x")), A.gen("y"))).is_chain_map()
    with pytest.raises(DegreeMismatch):
        AlgebraMap(A, A, (A.gen("y"), A.gen("x")))


def test_chain_map_needs_f2():
    A, f1 = homotopy_example()
    y, xx = next(iter(A.gen("y"))), next(iter(A.parse_poly("x^2")))
    assert A.format(f1.on_key((y,))) == "2*y"
    assert A.format(f1.on_key((xx,))) == "2*x^2"
    checks = verify_higher_homotopies(HomotopyFamily(A, A, {1: f1}), 2)
    assert checks[0].holds
    assert not checks[1].holds
    assert checks[1].max_discrepancy == 3


def test_solved_f2_satisfies_identities():
    A, f1 = homotopy_example()
    f2 = solve_f2(HomotopyFamily(A, A, {1: f1}))
    assert f2 is not None
    family = HomotopyFamily(A, A, {1: f1, 2: f2})
    assert all(c.holds for c in verify_higher_homotopies(family, 3))
    x = next(iter(A.gen("x")))
    assert A.format(f2.on_key((x, x))) == "y"


def test_corrupted_f2_is_detected():
    A, f1 = homotopy_example()
    f2 = solve_f2(HomotopyFamily(A, A, {1: f1}))
    x = next(iter(A.gen("x")))
    values = dict(f2.values)
    values[(x, x)] = A.scale(2, values[(x, x)])
    bad = HomotopyFamily(A, A, {1: f1, 2: MultiMap(2, A, A, values)})
    checks = verify_higher_homotopies(bad, 2)
    assert checks[0].holds and not checks[1].holds


def test_multimap_degree_checked():
    A, _ = homotopy_example()
    x = next(iter(A.gen("x")))
    with pytest.raises(DegreeMismatch):
        MultiMap(2, A, A, {(x, x): A.gen("x")})
