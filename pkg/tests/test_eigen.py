import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suturekit.eigen import (
    ClusteringError,
    EigenError,
    OperatorFamily,
    build_model,
    decompose,
    munoz_spectrum,
    random_submodel,
    spectrum_subset_check,
    top_eigenspace,
)


def test_munoz_small_cases():
    assert munoz_spectrum(1) == {(0, 2), (0, -2)}
    assert munoz_spectrum(2) == {(0, 2), (0, -2), (2, 2), (-2, 2), (2j, -2), (-2j, -2)}
    for g in range(1, 9):
        assert len(munoz_spectrum(g)) == 2 + 4 * (g - 1)
    with pytest.raises(EigenError):
        munoz_spectrum(0)


def test_diagonal_case():
    f = OperatorFamily(3, [np.diag([0, 2, -2]), np.diag([2, 2, 2])])
    d = decompose(f)
    assert d.tuples() == [(-2, 2), (0, 2), (2, 2)]
    assert [b.dimension for b in d.blocks] == [1, 1, 1]


def test_jordan_block_is_one_generalized_eigenspace():
    j = np.array([[2.0, 1.0], [0.0, 2.0]])
    d = decompose(OperatorFamily(2, [j, 2 * np.eye(2)]))
    assert len(d.blocks) == 1
    assert d.blocks[0].dimension == 2
    assert np.allclose(d.blocks[0].eigenvalues, (2, 2))


def test_non_commuting_rejected():
    a = np.array([[0, 1], [0, 0]])
    b = np.array([[0, 0], [1, 0]])
    with pytest.raises(EigenError, match="do not commute"):
        decompose(OperatorFamily(2, [a, b]))


def test_ambiguous_gap_reported():
    f = OperatorFamily(2, [np.diag([1.0, 1.0 + 5e-6])])
    with pytest.raises(ClusteringError) as exc:
        decompose(f)
    assert exc.value.operator == 0


def test_shape_checked():
    with pytest.raises(EigenError):
        OperatorFamily(3, [np.eye(2)])


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_round_trip(g):
    f = build_model(g, 1, rng_seed=g)
    d = decompose(f)
    assert set(d.tuples()) == munoz_spectrum(g)
    assert sum(b.dimension for b in d.blocks) == f.dim
    assert max(b.snap_distance for b in d.blocks) < 1e-8
    assert top_eigenspace(f, g)[0] == 1


def test_blocks_are_generalized_eigenspaces():
    f = build_model(3, 2, jordan_at=[(2j, -2), (0, 2)], rng_seed=5)
    d = decompose(f)
    n = f.dim
    for b in d.blocks:
        for a, lam in zip(f.operators, b.eigenvalues):
            m = np.linalg.matrix_power(a - lam * np.eye(n), n)
            assert np.abs(m @ b.basis).max() < 1e-6 * np.abs(m).max() + 1e-8
    full = np.hstack([b.basis for b in d.blocks])
    assert np.linalg.matrix_rank(full) == n


def test_projection_identity_and_commutation():
    f = build_model(4, 3, jordan_at=[(0, -2)], rng_seed=9)
    projs = decompose(f).projectors()
    assert np.abs(sum(projs) - np.eye(f.dim)).max() < 1e-8
    for p in projs:
        assert np.abs(p @ p - p).max() < 1e-8
        for a in f.operators:
            assert np.abs(p @ a - a @ p).max() < 1e-8


def test_geometric_integrality():
    f = build_model(5, 1, rng_seed=1)
    for b in decompose(f, geometric_model=False).blocks:
        for z in b.eigenvalues:
            assert abs(z.real / 2 - round(z.real / 2)) < 1e-8
            assert abs(z.imag / 2 - round(z.imag / 2)) < 1e-8


def test_top_eigenspace_variants():
    assert top_eigenspace(build_model(2, 1, jordan_at=[(0, 2)]), 2)[0] == 1
    assert top_eigenspace(build_model(3, 4, rng_seed=2), 3)[0] == 4
    no_top = OperatorFamily(2, [np.diag([0, 0]), np.diag([2, -2])])
    assert top_eigenspace(no_top, 2)[0] == 0
    with pytest.raises(EigenError, match="not simple"):
        top_eigenspace(build_model(2, 1, jordan_at=[(2, 2)]), 2)


def test_subset_violations():
    ok, bad = spectrum_subset_check(OperatorFamily(2, [np.diag([3, 0]), np.diag([2, 2])]), 2)
    assert not ok and bad == [(3, 2)]
    g = 3
    ok, bad = spectrum_subset_check(OperatorFamily(1, [np.diag([2 * g]), np.diag([2])]), g)
    assert not ok and bad == [(2 * g, 2)]
    assert spectrum_subset_check(build_model(3), 3) == (True, [])


def test_json_round_trip():
    f = build_model(2, 1, rng_seed=4)
    g = OperatorFamily.from_json(json.loads(json.dumps(f.to_json())))
    assert g.dim == f.dim and g.genus_tags == {0: 2} and g.geometric
    for a, b in zip(f.operators, g.operators):
        assert np.array_equal(a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_random_submodels_stay_in_spectrum(g, top, seed):
    rng = np.random.default_rng(seed)
    f = build_model(g, top, rng_seed=seed)
    sub = random_submodel(f, rng)
    ok, bad = spectrum_subset_check(sub)
    assert ok, bad
