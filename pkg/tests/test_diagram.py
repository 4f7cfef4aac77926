import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suturekit import oracles
from suturekit.alexander import alexander_fox
from suturekit.diagram import (
    DiagramError,
    KnotDiagram,
    LinkNotSupportedError,
    from_pd_tuples,
    parse_braid,
    parse_braid_word,
    parse_pd,
    seifert_circles,
    seifert_genus_upper,
    wirtinger,
)
from suturekit.table import builtin_table

from conftest import TREFOIL_PD

TABLE = builtin_table()


def test_trefoil_parses(trefoil):
    assert trefoil.n_crossings == 3
    assert abs(trefoil.writhe) == 3
    assert wirtinger(trefoil).n_generators == 3
    assert seifert_genus_upper(trefoil).genus_upper == 1


def test_pd_wrapper_and_separators():
    d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    assert d.crossings == parse_pd(TREFOIL_PD).crossings


def test_three_component_link_rejected():
    # each crossing of this code closes up on itself: three unlinked components
    with pytest.raises(LinkNotSupportedError):
        parse_pd("X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]")


def test_empty_pd_is_unknot():
    d = parse_pd("")
    assert d.n_crossings == 0
    assert wirtinger(d).n_generators == 1
    assert seifert_genus_upper(d).genus_upper == 0


@pytest.mark.parametrize(
    "text",
    ["X[1,2,3]", "X[1,4,2,5];garbage", "X[a,4,2,5]", "X[1,1,1,1]", "Y[1,2,3,4]"],
)
def test_malformed_pd(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_braid_tokens():
    assert parse_braid_word("s1 s2^-1 sigma1 σ2 -1 3") == [1, -2, 1, 2, -1, 3]
    with pytest.raises(DiagramError):
        parse_braid_word("s0")
    with pytest.raises(DiagramError):
        parse_braid_word("t1")


def test_braid_closures():
    assert parse_braid("s1").n_crossings == 1
    assert seifert_genus_upper(parse_braid("s1")).genus_upper == 0
    assert parse_braid("s1 s2").n_crossings == 2
    with pytest.raises(LinkNotSupportedError):
        parse_braid("s1 s1")
    with pytest.raises(LinkNotSupportedError):
        parse_braid("s1 s3")


def test_json_round_trip(trefoil):
    assert KnotDiagram.from_json(trefoil.to_json()).crossings == trefoil.crossings
    bad = trefoil.to_json()
    bad["crossings"][0][0] *= -1
    with pytest.raises(DiagramError):
        KnotDiagram.from_json(bad)


@pytest.mark.parametrize("entry", TABLE, ids=lambda e: e.id)
def test_table_diagrams(entry):
    d = entry.diagram()
    p = wirtinger(d)
    assert p.n_generators == max(d.n_crossings, 1)
    # the Seifert circle count agrees with an independent position tracer
    assert seifert_circles(d) == oracles.traced_seifert_circles(d.crossings)
    assert seifert_genus_upper(d).genus_upper >= entry.genus
    if entry.braid:
        assert alexander_fox(wirtinger(parse_braid(entry.braid))) == alexander_fox(p)
    if entry.minimal and entry.id != "0_1":
        assert d.n_crossings == int(entry.id.split("_")[0])


def _crossing_change(d: KnotDiagram) -> list[tuple[int, int, int, int]]:
    out = []
    for sign, a, b, c, dd in d.crossings:
        out.append((dd, a, b, c) if sign > 0 else (b, c, dd, a))
    return out


@pytest.mark.parametrize("entry", TABLE[1:], ids=lambda e: e.id)
def test_mirror_keeps_alexander_and_negates_writhe(entry):
    d = entry.diagram()
    m = from_pd_tuples(_crossing_change(d))
    assert m.writhe == -d.writhe
    assert alexander_fox(wirtinger(m)) == alexander_fox(wirtinger(d))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(TABLE[1:8]), st.randoms(use_true_random=False), st.integers(0, 40))
def test_relabeling_invariance(entry, rnd, shift):
    d = entry.diagram()
    n = 2 * d.n_crossings
    perm = list(range(d.n_crossings))
    rnd.shuffle(perm)
    tuples = [tuple((x - 1 + shift) % n + 1 for x in d.crossings[k][1:]) for k in perm]
    e = from_pd_tuples(tuples)
    assert e.writhe == d.writhe
    assert seifert_circles(e) == seifert_circles(d)
    assert alexander_fox(wirtinger(e)) == alexander_fox(wirtinger(d))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([e for e in TABLE if e.braid]), st.sampled_from([1, -1]))
def test_markov_stabilization(entry, eps):
    word = parse_braid_word(entry.braid)
    n = max(abs(w) for w in word) + 1
    stab = parse_braid(entry.braid + f" s{n}" + ("" if eps > 0 else "^-1"))
    assert alexander_fox(wirtinger(stab)) == alexander_fox(wirtinger(parse_braid(entry.braid)))
