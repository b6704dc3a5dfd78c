"""A tour of the category bounds engine: every answer comes with the rules that produced it.

Run: python3 demos/category_bounds.py
"""
from syscat_lab import bounds as B


def show(label, desc, conjectures=False):
    cat, sys = B.all_bounds(desc, conjecture_mode=conjectures)
    print(f"{label}: cat in [{cat.lo}, {cat.hi}], syscat in [{sys.lo}, {sys.hi}]")
    for t in cat.trace + sys.trace:
        print(f"    {t.rule:10s} {t.side} {t.value}: {t.citation}")
    if sys.conjectural_lo is not None:
        print(f"    conjecturally syscat >= {sys.conjectural_lo}")


show("RP^3", B.lookup_known("rp3").descriptor)
show("orientable 3-manifold with free pi1", B.ManifoldDescriptor(3, orientable=True, pi1="free"))
m19 = B.lookup_known("m19")
show("M^19", m19.descriptor)
print(f"    IQ-modified systolic category >= {B.iq_modified_syscat_lower(m19.descriptor)}")
spec = B.massey_inequality_spec(19, 4, 6)
print(f"    {spec.statement}")
show("Smale M_k (certified only)", B.lookup_known("smale-mk").descriptor)
show("Smale M_k (with conjectures)", B.lookup_known("smale-mk").descriptor, conjectures=True)
