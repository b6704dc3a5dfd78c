import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syscat_lab import lattice as L
from syscat_lab.errors import NotPositiveDefinite, ParseError, UnsupportedRank


def test_hermite_constants():
    assert L.hermite_constant(1) == 1
    assert L.hermite_constant(2) == pytest.approx(2 / math.sqrt(3), rel=1e-15)
    assert L.hermite_constant(3) == pytest.approx(2 ** (1 / 3), rel=1e-15)
    assert L.hermite_constant(4) == pytest.approx(math.sqrt(2), rel=1e-15)
    with pytest.raises(UnsupportedRank):
        L.hermite_constant(5)


def test_square_lattice():
    r = L.shortest_vector(L.Lattice(np.eye(2)))
    assert r.length == 1
    assert r.coeffs == (1, 0)
    assert r.n_minimizers == 4
    assert not L.check_hermite_bound(L.Lattice(np.eye(2))).equality


def test_hexagonal_equality():
    lat = L.Lattice(L.HEXAGONAL_GRAM)
    rep = L.check_hermite_bound(lat)
    assert rep.equality
    assert abs(rep.lhs - rep.rhs) <= 1e-9 * rep.rhs
    sv = L.shortest_vector(lat)
    assert sv.coeffs == (1, 0)
    assert sv.n_minimizers == 6


def test_d4_attains_gamma4():
    lat = L.Lattice(L.D4_GRAM)
    sv = L.shortest_vector(lat)
    assert sv.n_minimizers == 24
    assert sv.length**2 / L.covolume(lat) ** (2 / 4) == pytest.approx(math.sqrt(2), rel=1e-9)
    assert L.check_hermite_bound(lat).equality


def test_scaling():
    lat = L.Lattice(L.D4_GRAM)
    s = L.shortest_vector(lat.scaled(3.0))
    assert s.length == pytest.approx(3 * L.shortest_vector(lat).length)
    assert L.covolume(lat.scaled(3.0)) == pytest.approx(81 * L.covolume(lat))


def _unimodular(rank, rng):
    U = np.eye(rank, dtype=np.int64)
    for _ in range(6):
        i, j = rng.choice(rank, size=2, replace=False)
        U[:, i] += int(rng.integers(-2, 3)) * U[:, j]
    return U


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_basis_change_invariance(rank, seed):
    rng = np.random.default_rng(seed)
    lat = L.random_lattice(rank, rng)
    U = _unimodular(rank, rng) if rank > 1 else np.array([[-1]])
    other = lat.transformed(U)
    assert L.shortest_vector(other).length == pytest.approx(L.shortest_vector(lat).length, rel=1e-9)
    assert L.covolume(other) == pytest.approx(L.covolume(lat), rel=1e-9)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_agrees_with_naive_box(rank, seed):
    rng = np.random.default_rng(seed)
    # LLL-reduced inputs keep the naive box exhaustive at radius 5
    G, _ = L.lll_reduce(L.random_lattice(rank, rng).gram)
    lat = L.Lattice(G)
    fast = L.shortest_vector(lat)
    slow = L.naive_shortest_vector(lat, radius=5)
    assert fast.length == pytest.approx(slow.length, rel=1e-12)
    assert fast.n_minimizers == slow.n_minimizers


def test_lll_output_is_reduced_and_equivalent():
    rng = np.random.default_rng(9)
    for rank in (2, 3, 4):
        lat = L.random_lattice(rank, rng)
        G, U = L.lll_reduce(lat.gram)
        assert round(abs(np.linalg.det(U))) == 1
        assert np.allclose(U.T @ lat.gram @ U, G)


def test_monte_carlo_no_violations():
    rng = np.random.default_rng(17)
    for rank in (1, 2, 3, 4):
        for _ in range(250):
            assert L.check_hermite_bound(L.random_lattice(rank, rng)).holds


@pytest.mark.parametrize(
    "gram,err",
    [
        ([[1, 2], [2, 1]], NotPositiveDefinite),
        ([[1, 0.3], [0.2, 1]], NotPositiveDefinite),
        ([[0.0]], NotPositiveDefinite),
        (np.eye(9), UnsupportedRank),
    ],
)
def test_invalid_gram(gram, err):
    with pytest.raises(err):
        L.Lattice(gram)


def test_file_round_trip():
    lat = L.Lattice(L.D4_GRAM)
    again = L.parse_lattice(L.dump_lattice(lat))
    assert np.array_equal(again.gram, lat.gram)
    parsed = L.parse_lattice("# hexagonal\nlattice v1\nrank 2\n1 0.5\n0.5 1\n")
    assert np.allclose(parsed.gram, L.HEXAGONAL_GRAM)


@pytest.mark.parametrize(
    "text",
    ["", "lattice v2\nrank 1\n1\n", "lattice v1\nrank 2\n1 0\n", "lattice v1\nrank 2\n1 0\n0 x\n", "lattice v1\nrank two\n"],
)
def test_malformed_files(text):
    with pytest.raises(ParseError):
        L.parse_lattice(text)
