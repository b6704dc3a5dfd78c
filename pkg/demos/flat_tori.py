"""Flat tori R^b / L: the shortest closed geodesic against the Hermite constant.

Run: python3 demos/flat_tori.py
"""
import numpy as np

from syscat_lab import lattice as L

for name, gram in [("square", np.eye(2)), ("hexagonal", L.HEXAGONAL_GRAM), ("D4", L.D4_GRAM)]:
    lat = L.Lattice(gram)
    sv = L.shortest_vector(lat)
    rep = L.check_hermite_bound(lat)
    print(f"{name:10s} rank {lat.rank}: shortest {sv.coeffs} |v| = {sv.length:.6f}, "
          f"{sv.n_minimizers} minimal vectors, sys^b / (gamma_b^(b/2) covol) = {rep.lhs / rep.rhs:.9f}")

print("\nRandom lattices never beat the extremal ones:")
rng = np.random.default_rng(1)
for b in range(1, 5):
    worst = max(
        (lambda r: r.lhs / r.rhs)(L.check_hermite_bound(L.random_lattice(b, rng))) for _ in range(2000)
    )
    print(f"  rank {b}: largest ratio over 2000 samples {worst:.4f}")
