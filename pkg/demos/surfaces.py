"""Systolic ratios of triangulated RP^2 and T^2 against the Pu and Loewner constants.

Run: python3 demos/surfaces.py
"""
import math

import numpy as np

from syscat_lab.mesh import optimize_ratio, perturbed, rp2_6, rp2_geodesic, systolic_ratio, torus7

PU = math.pi / 2
LOEWNER = 2 / math.sqrt(3)

print("Round 6-vertex RP^2 (the hemi-icosahedron with spherical edge lengths)")
mesh = rp2_6(round_metric=True)
for levels in range(4):
    r = systolic_ratio(mesh, levels)
    print(f"  levels {levels}: sys = {r.sysh1_z2:.5f}, area = {r.area:.5f}, ratio = {r.ratio:.5f} ({r.ratio / PU:.3f} pi/2)")
print("  Refining the loop search does not change the coarse flat metric itself;")
print("  getting closer to pi/2 needs a finer base triangulation.")

print("\nGeodesic 21-vertex RP^2 (half of a frequency-2 icosphere)")
r = systolic_ratio(rp2_geodesic(2), 2)
print(f"  ratio = {r.ratio:.5f} ({r.ratio / PU:.4f} pi/2)")

print("\nCoordinate ascent from a perturbed metric never certifies more than Pu allows")
start = perturbed(rp2_6(round_metric=True), 0.8, 1.2, np.random.default_rng(1))
history = []
_, final = optimize_ratio(start, 60, 0.02, seed=1, levels=2, history=history)
print(f"  {len(history) - 1} sweeps: {history[0][1]:.5f} -> {final.ratio:.5f}  (pi/2 = {PU:.5f})")

print("\nSeven-vertex torus: ascent towards the hexagonal flat torus")
start = perturbed(torus7(), 0.8, 1.2, np.random.default_rng(7))
history = []
_, final = optimize_ratio(start, 500, 0.02, seed=7, levels=2, history=history)
for row in history[:: max(1, len(history) // 6)]:
    print(f"  sweep {row[0]:3d}: ratio {row[1]:.5f}")
print(f"  final {final.ratio:.5f} = {final.ratio / LOEWNER:.4f} x 2/sqrt(3); {final.bound_note}")
