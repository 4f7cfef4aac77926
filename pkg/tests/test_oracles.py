import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from suturekit import oracles


def unfold(entries):
    x = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        x = a - 1 / x
    return x


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (7, 3), (9, 2), (11, 4), (13, 5)])
def test_even_continued_fraction(p, q):
    cf = oracles.even_continued_fraction(p, q)
    assert all(a % 2 == 0 for a in cf)
    assert abs(unfold(cf).numerator) == p


@pytest.mark.parametrize("p,q", [(3, 1), (5, 1), (5, 2), (7, 2), (9, 4), (11, 3)])
def test_plumbing_matrix_is_a_seifert_matrix(p, q):
    v = oracles.plumbing_seifert_matrix(p, q)
    assert abs((v - v.T).det()) == 1
    delta = oracles.seifert_alexander(v)
    assert sum(delta.values()) == 1
    assert abs(sum(c * (-1) ** e for e, c in delta.items())) == p


def test_trefoil_seifert_polynomial():
    assert oracles.seifert_alexander(Matrix([[-1, 1], [0, -1]])) == {-1: 1, 0: -1, 1: 1}


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 8).map(lambda k: 2 * k + 1), st.data())
def test_two_bridge_count_is_half_determinant(p, data):
    q = data.draw(st.integers(1, p - 1).filter(lambda q: math.gcd(p, q) == 1))
    assert oracles.two_bridge_rep_count(p, q) == (p - 1) // 2


def test_angle_roots_satisfy_relation():
    for phi in oracles.two_bridge_rep_angles(7, 3):
        assert 0 < phi < math.pi
        assert abs(oracles.two_bridge_angle_function(7, 3, phi)) < 1e-9


def test_smith_abelianization():
    # <a, b | a b a^-1 b^-1> and the trefoil's Wirtinger rows
    assert oracles.smith_abelianization(2, [[(0, 1), (1, 1), (0, -1), (1, -1)]]) == (2, [])
    assert oracles.smith_abelianization(2, [[(0, 2), (1, -2)]]) == (1, [2])
    assert oracles.smith_abelianization(3, []) == (3, [])


def test_traced_circles_unknot():
    assert oracles.traced_seifert_circles([]) == 1
