import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from suturekit.sutured import (
    DecompositionStep,
    SuturedError,
    SuturedRecord,
    check_balanced,
    closure,
    decompose,
    knot_complement_sutured,
    named_record,
    product_sutured,
    seifert_cut,
)


def test_product_examples():
    for (g, b), chi in {(0, 1): 1, (1, 1): -1, (0, 3): -1}.items():
        s = product_sutured(g, b)
        assert s.chi_R_plus == s.chi_R_minus == chi
        assert s.n_sutures == b
        assert check_balanced(s) == (True, [])
    with pytest.raises(SuturedError):
        product_sutured(1, 0)


def test_knot_complement():
    s = knot_complement_sutured()
    assert s.boundary_components == ((1, 2),)
    assert s.chi_R_plus == s.chi_R_minus == 0
    assert check_balanced(s)[0]


def test_unbalanced_reasons():
    ok, why = check_balanced(SuturedRecord(((1, 0),), 0, 0))
    assert not ok
    assert any("without suture" in r for r in why)
    ok, why = check_balanced(SuturedRecord(((2, 2),), 0, -2))
    assert not ok and any("differs" in r for r in why)


def test_closure_examples():
    kc = knot_complement_sutured()
    c0 = closure(kc, 0)
    assert (c0.genus_R_bar, c0.c1_ok) == (1, False)
    assert c0.c2_status == "unverified"
    c1 = closure(kc, 1)
    assert (c1.genus_R_bar, c1.c1_ok, c1.c2_ok) == (2, True, True)
    c = closure(product_sutured(1, 1), 2)
    assert (c.chi_R_bar, c.genus_R_bar, c.c1_ok) == (-4, 3, True)
    assert closure(kc, 0, nonseparating_curve=True).c2_status == "asserted"


def test_closure_rejects_unbalanced():
    with pytest.raises(SuturedError):
        closure(SuturedRecord(((1, 0),), 0, 0), 1)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_seifert_cut(g):
    s = seifert_cut(g)
    assert s.boundary_components == ((2 * g, 1),)
    assert s.chi_R_plus == s.chi_R_minus == 1 - 2 * g
    # chi of the boundary is chi(R+) + chi(R-) (the suture annulus adds nothing)
    assert s.boundary_chi == 2 * s.chi_R_plus
    assert check_balanced(s)[0]
    assert closure(s, 1).genus_R_bar == g + 1


def test_seifert_cut_genus_zero_rejected():
    with pytest.raises(SuturedError):
        seifert_cut(0)


def test_horizontal_cut():
    out = decompose(DecompositionStep("horizontal", knot_complement_sutured(), surface_chi=0))
    assert len(out) == 2
    for s in out:
        assert s.boundary_components == ((1, 2),) and check_balanced(s)[0]
    with pytest.raises(SuturedError):
        decompose(DecompositionStep("horizontal", knot_complement_sutured(), surface_chi=-2))


def test_product_annulus_cut():
    flags = {"d_plus_nonzero": True, "d_minus_nonzero": True}
    (out,) = decompose(DecompositionStep("product_annulus", product_sutured(1, 1), flags))
    # chi is unchanged and the cut adds two sutures: a pair-of-pants product
    shape = product_sutured(0, 3)
    assert (out.boundary_components, out.chi_R_plus) == (shape.boundary_components, shape.chi_R_plus)
    with pytest.raises(SuturedError):
        decompose(DecompositionStep("product_annulus", product_sutured(1, 1), {"d_plus_nonzero": True}))


def test_seifert_cut_step():
    (out,) = decompose(DecompositionStep("seifert_cut", knot_complement_sutured(), surface_chi=-3))
    assert out == seifert_cut(2)
    with pytest.raises(SuturedError):
        decompose(DecompositionStep("seifert_cut", knot_complement_sutured(), surface_chi=1))


def test_product_handles():
    (a,) = decompose(DecompositionStep("product_handle", product_sutured(0, 1), {"feet": [0, 0], "same_suture": True}))
    assert a.chi_R_plus == 0 and a.boundary_components == ((1, 2),)
    two = SuturedRecord(((0, 1), (0, 1)), 2, 2)
    (b,) = decompose(DecompositionStep("product_handle", two, {"feet": [0, 1]}))
    assert b.boundary_components == ((0, 1),) and b.chi_R_plus == 1
    with pytest.raises(SuturedError):
        decompose(DecompositionStep("product_handle", two, {}))


def test_unknown_kind():
    with pytest.raises(SuturedError):
        decompose(DecompositionStep("twist", knot_complement_sutured()))


def test_named_records():
    assert named_record("knot-complement") == knot_complement_sutured()
    assert named_record("product:1,2") == product_sutured(1, 2)
    assert named_record("seifert:3") == seifert_cut(3)
    with pytest.raises(SuturedError):
        named_record("cube")


def test_json_round_trip():
    s = seifert_cut(2)
    assert SuturedRecord.from_json(json.loads(json.dumps(s.to_json()))) == s
    bad = s.to_json()
    bad["n_sutures"] = 5
    with pytest.raises(SuturedError):
        SuturedRecord.from_json(bad)


records = st.one_of(
    st.tuples(st.integers(0, 4), st.integers(1, 5)).map(lambda a: product_sutured(*a)),
    st.integers(1, 5).map(seifert_cut),
    st.just(knot_complement_sutured()),
)


@given(records, st.integers(0, 6))
def test_closure_chi_additivity_and_monotonicity(s, a):
    c = closure(s, a)
    assert c.aux_boundary == s.n_sutures
    assert c.chi_R_bar == s.chi_R_plus + (2 - 2 * a - s.n_sutures)
    assert c.chi_R_bar % 2 == 0
    assert c.genus_R_bar == 1 - c.chi_R_bar // 2
    assert closure(s, a + 1).genus_R_bar == c.genus_R_bar + 1
    if a >= 2 and s.chi_R_plus <= 0:
        assert c.c1_ok


@given(records)
def test_constructors_and_cuts_stay_balanced(s):
    assert check_balanced(s)[0]
    for rec in decompose(DecompositionStep("horizontal", s, surface_chi=s.chi_R_plus)):
        assert check_balanced(rec)[0]
    flags = {"d_plus_nonzero": True, "d_minus_nonzero": True}
    (rec,) = decompose(DecompositionStep("product_annulus", s, flags))
    assert rec.chi_R_plus == s.chi_R_plus and rec.n_sutures == s.n_sutures + 2
