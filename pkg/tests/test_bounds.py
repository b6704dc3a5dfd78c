import math
import random

import pytest

from oracles import HIDEABLE, hide, truth_templates
from syscat_lab import bounds as B
from syscat_lab.errors import InconsistentDescriptor, ParseError, UnknownName

D = B.ManifoldDescriptor
TEMPLATES = truth_templates()


def _contains(outer, inner):
    return outer.lo <= inner.lo and inner.hi <= outer.hi


def test_templates_reproduce_truth():
    for desc, cat, syscat in TEMPLATES:
        c, s = B.all_bounds(desc)
        assert c.contains(cat), desc.name
        if syscat is not None:
            assert s.contains(syscat), desc.name


def test_random_hidden_descriptors():
    rng = random.Random(20240601)
    for _ in range(10_000):
        desc, cat, syscat = rng.choice(TEMPLATES)
        some = [f for f in HIDEABLE if rng.random() < 0.4]
        more = some + [f for f in HIDEABLE if f not in some and rng.random() < 0.4]
        d1, d2 = hide(desc, some), hide(desc, more)
        c1, s1 = B.all_bounds(d1)
        c2, s2 = B.all_bounds(d2)
        # consistency and truth containment
        for c, s in ((c1, s1), (c2, s2)):
            assert 1 <= c.lo <= c.hi <= desc.dim
            assert 1 <= s.lo <= s.hi <= desc.dim
            assert c.contains(cat)
            if syscat is not None:
                assert s.contains(syscat)
        # forgetting information can only widen the intervals
        assert _contains(c2, c1) and _contains(s2, s1)
        # conjectures never move the certified interval
        c3, s3 = B.all_bounds(d2, conjecture_mode=True)
        assert (c3.lo, c3.hi, s3.lo, s3.hi) == (c2.lo, c2.hi, s2.lo, s2.hi)
        assert s2.conjectural_lo is None and not s2.conjectural_trace


def test_trace_lists_every_fired_rule_with_citation():
    c, s = B.all_bounds(B.lookup_known("rp3").descriptor)
    for iv in (c, s):
        assert iv.trace
        assert all(t.citation for t in iv.trace)
        assert all(t.side in ("lo", "hi") for t in iv.trace)
        assert all(t.rule in B.CITE for t in iv.trace)


def test_rp3():
    c, s = B.all_bounds(D(3, orientable=True, pi1="other"))
    assert (c.lo, c.hi) == (3, 3)
    assert (s.lo, s.hi) == (3, 3)


def test_sphere_and_surfaces():
    assert (B.cat_bounds(D(2, pi1="trivial")).lo, B.cat_bounds(D(2, pi1="trivial")).hi) == (1, 1)
    for desc in (D(2, orientable=False), D(2, orientable=True, betti_q=(1, 2, 1)), D(2, pi1="other")):
        c, s = B.all_bounds(desc)
        assert (c.lo, c.hi, s.lo, s.hi) == (2, 2, 2, 2)


def test_three_manifolds_with_free_pi1():
    c, s = B.all_bounds(D(3, orientable=True, pi1="free"))
    assert (c.lo, c.hi, s.lo, s.hi) == (2, 2, 2, 2)
    s = B.syscat_bounds(D(3, orientable=False, pi1="free"))
    assert (s.lo, s.hi) == (1, 2)


@pytest.mark.parametrize("dim", [4, 5])
def test_simply_connected_non_spheres(dim):
    c = B.cat_bounds(D(dim, pi1="trivial", is_homotopy_sphere=False))
    assert (c.lo, c.hi) == (2, 2)


def test_m19():
    known = B.lookup_known("m19")
    c = B.cat_bounds(known.descriptor)
    assert (c.lo, c.hi) == (3, 4)
    assert B.iq_modified_syscat_lower(known.descriptor) == 3
    c2 = B.cat_bounds(D(19, pi1="trivial", connectivity_k=4, cuplength_any=3))
    assert (c2.lo, c2.hi) == (3, 4)


def test_conjectures_only_under_flag():
    smale = B.lookup_known("smale-mk").descriptor
    assert B.syscat_bounds(smale).conjectural_lo is None
    s = B.syscat_bounds(smale, conjecture_mode=True)
    assert s.conjectural_lo == 2
    assert {t.rule for t in s.conjectural_trace} >= {"C-smale"}
    rp2xs2 = D(4, orientable=False, pi1="other", cuplength_any=3)
    assert B.syscat_bounds(rp2xs2).conjectural_lo is None
    assert B.syscat_bounds(rp2xs2, conjecture_mode=True).conjectural_lo == 3


def test_known_cases_inside_engine_intervals():
    for key in B.KNOWN_NAMES + ("cp2", "cp4"):
        k = B.lookup_known(key)
        c, s = B.all_bounds(k.descriptor)
        assert c.lo <= k.cat[0] and k.cat[1] <= c.hi
        if k.syscat is not None:
            assert s.lo <= k.syscat[0] and k.syscat[1] <= s.hi
    with pytest.raises(UnknownName):
        B.lookup_known("lens-space")


# ---- constants ---------------------------------------------------------------------------


def test_massey_constants_19_4_6():
    spec = B.massey_inequality_spec(19, 4, 6)
    assert spec.p3 == 6
    # exact rational arithmetic; here both constants are integers
    assert spec.A1.denominator == 1 and spec.A2.denominator == 1
    assert spec.A1 + spec.A2 == 12235188966
    assert int(spec.A1 + spec.A2) <= math.factorial(19)


def test_massey_constants_4_1_1():
    spec = B.massey_inequality_spec(4, 1, 1)
    assert spec.A1 == 12 and spec.A2 == 12


def test_massey_constants_reject_bad_partitions():
    with pytest.raises((B.InvalidPartition, ValueError)):
        B.massey_inequality_spec(5, 3, 3)


def test_gromov_constant():
    assert B.gromov_cpn_constant(3) == math.factorial(3)


# ---- descriptors ------------------------------------------------------------------------------


def test_descriptor_round_trip():
    for desc, _, _ in TEMPLATES:
        again = B.parse_descriptor(B.dump_descriptor(desc))
        assert again == desc


def test_descriptor_aliases_and_free_rank():
    d = B.parse_descriptor("dim: 3\npi1: free(2)\nbetti: 1 2 2 1\norientable: yes\n")
    assert d.pi1 == "free" and d.pi1_rank == 2 and d.b1 == 2


@pytest.mark.parametrize(
    "text,err",
    [
        ("orientable: yes\n", ParseError),
        ("dim: 3\ncolour: red\n", ParseError),
        ("dim: 3\npi1: weird\n", ParseError),
        ("dim: 3\ndim: 4\n", ParseError),
        ("dim: 2\nbetti_q: 1 0\n", InconsistentDescriptor),
        ("dim: 2\norientable: yes\nbetti_q: 1 0 0\n", InconsistentDescriptor),
        ("dim: 3\npi1: other\nconnectivity_k: 2\n", InconsistentDescriptor),
    ],
)
def test_bad_descriptors(text, err):
    with pytest.raises(err):
        B.parse_descriptor(text)
