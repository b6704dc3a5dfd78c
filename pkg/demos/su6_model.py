"""The Sullivan model of SU(6)/(SU(3) x SU(3)): cohomology, a Massey product, e0.

Run: python3 demos/su6_model.py
"""
from syscat_lab import cdga

A = cdga.su6_model()
print("generators:", ", ".join(f"{n} (deg {d})" for n, d in zip(A.names, A.degrees)))
print("differential:", "; ".join(f"d{n} = {A.format(dict(p))}" for n, p in zip(A.names, A.diff) if p))

betti = cdga.betti_numbers(A, 19)
print("\nnonzero Betti numbers:", {k: b for k, b in enumerate(betti) if b})
print("cup-length:", cdga.cup_length(A))

x4 = cdga.class_of(A, A.gen("x4"))
x6 = cdga.class_of(A, A.gen("x6"))
coset = cdga.massey_triple(A, x4, x4, x6)
x, y = coset.primitives
print("\n<x4, x4, x6>:")
print(f"  x4*x4 = d({A.format(x)}),  x4*x6 = d({A.format(y)})")
print(f"  representative {A.format(coset.cocycle)} in degree {coset.degree}")
print(f"  indeterminacy has dimension {len(coset.indeterminacy)}; nontrivial: {coset.nontrivial}")

e0, witness = cdga.toomer_witness(A, 19)
print(f"\nToomer invariant e0 = {e0}, fundamental class represented by {A.format(witness)}")
print("So the rational category is 3 while the cup-length is only 2.")
