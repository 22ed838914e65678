from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobcoh.errors import InvalidType, LengthError
from frobcoh.rootsys import (
    Weight, build_root_system, dot_action, elements_of_length, poincare_coefficient,
    restricted_decompose,
)

ALL_TYPES = ["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4",
             "C5", "C6", "D4", "D5", "D6", "E6", "F4", "G2"]


def _expected(label):
    f, n = label[0], int(label[1:])
    table = {
        "A": (n * (n + 1) // 2, factorial(n + 1), n + 1),
        "B": (n * n, 2 ** n * factorial(n), 2 * n),
        "C": (n * n, 2 ** n * factorial(n), 2 * n),
        "D": (n * (n - 1), 2 ** (n - 1) * factorial(n), 2 * n - 2),
    }
    special = {"E6": (36, 51840, 12), "E7": (63, 2903040, 18), "E8": (120, 696729600, 30),
               "F4": (24, 1152, 12), "G2": (6, 12, 6)}
    return special.get(label) or table[f]


@pytest.mark.parametrize("label", ALL_TYPES + ["E7", "E8"])
def test_counts_weyl_order_coxeter(label):
    R = build_root_system(label)
    npos, order, h = _expected(label)
    assert R.num_positive == npos
    assert R.weyl_order == order
    assert R.coxeter_number == h
    assert R.rho == Weight((1,) * R.rank)
    assert sum(R.exponents) == npos


@pytest.mark.parametrize("label", ["A2", "B3", "C3", "D4", "G2", "F4"])
def test_length_enumeration_matches_poincare(label):
    R = build_root_system(label)
    total = 0
    for n in range(R.num_positive + 2):
        els = elements_of_length(R, n)
        assert len(els) == poincare_coefficient(R, n)
        assert len(set(els)) == len(els)
        assert all(w.length == n for w in els)
        total += len(els)
    assert total == R.weyl_order


def test_length_examples():
    assert len(elements_of_length(build_root_system("A3"), 3)) == 6
    e = elements_of_length(build_root_system("E6"), 0)
    assert len(e) == 1 and e[0].word == ()
    assert elements_of_length(build_root_system("A1"), 2) == []
    with pytest.raises(LengthError):
        elements_of_length(build_root_system("A2"), -1)


def test_dot_zero_of_longest_a2_element():
    R = build_root_system("A2")
    w = R.element((0, 1, 0))
    assert R.simple_coords(-dot_action(w, R.zero())) == (2, 2)


def _telescoped(R, word):
    """−w·0 = Σ_k s_{i_1}⋯s_{i_{k−1}}(α_{i_k})."""
    total = R.zero()
    for k in range(len(word)):
        total = total + R.act(word[:k], R.simple_weights[word[k]])
    return total


@pytest.mark.parametrize("label", ["A5", "B4", "C4", "D5", "E6", "F4", "G2", "B6"])
def test_dot_action_telescopes(label):
    R = build_root_system(label)
    for n in range(5):
        for w in elements_of_length(R, n):
            assert -w.dot(R.zero()) == _telescoped(R, w.word)


@pytest.mark.parametrize("label", ["A4", "B3", "C4", "D4", "F4", "G2"])
def test_length_three_dot_shapes(label):
    R = build_root_system(label)
    for w in elements_of_length(R, 3):
        i1, i2, i3 = w.word
        c = R.simple_coords(-w.dot(R.zero()))
        if len({i1, i2, i3}) == 3:
            assert c[i3] == 1 and c[i1] > 0 and c[i2] > 0
            assert sum(c) == c[i1] + c[i2] + c[i3]
        else:
            assert i1 == i3
            assert c[i1] >= c[i2] > 0 and sum(c) == c[i1] + c[i2]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2"]), st.data())
def test_dot_action_is_an_action(label, data):
    R = build_root_system(label)
    letters = st.lists(st.integers(0, R.rank - 1), max_size=5)
    u, v = data.draw(letters), data.draw(letters)
    lam = Weight(tuple(data.draw(st.lists(st.integers(-20, 20), min_size=R.rank, max_size=R.rank))))
    assert R.element(u).dot(R.element(v).dot(lam)) == R.element(u + v).dot(lam)


def test_c2_is_stored_as_b2_with_relabeling():
    C2, B2 = build_root_system("C2"), build_root_system("B2")
    assert C2.label == "C2" and C2.internal_label == "B2"
    assert C2.cartan == B2.cartan
    lam = Weight((3, 5))
    assert C2.from_user(C2.to_user(lam)) == lam
    assert C2.to_user(lam) == Weight((5, 3))
    # in C2 the first simple root is short and the second long
    assert C2.is_short(C2.simple_root(C2.user_index(0)))
    assert not C2.is_short(C2.simple_root(C2.user_index(1)))


@pytest.mark.parametrize("bad", ["H3", "D3", "E9", "G3", "A0", "X", "", "B"])
def test_invalid_types(bad):
    with pytest.raises(InvalidType):
        build_root_system(bad)


def test_restricted_decompose_examples():
    assert restricted_decompose(Weight((0, 0)), 7) == (Weight((0, 0)), Weight((0, 0)))
    nu = Weight((3, -4))
    assert restricted_decompose(nu * 5, 5) == (Weight((0, 0)), nu)
    A1 = build_root_system("A1")
    assert restricted_decompose(-A1.simple_weights[0], 5) == (Weight((3,)), Weight((-1,)))


@given(st.sampled_from([2, 3, 5, 7, 11]), st.lists(st.integers(-3 * 121, 3 * 121), min_size=1, max_size=6))
def test_restricted_decompose_round_trip(p, coords):
    lam = Weight(tuple(coords))
    lo, hi = restricted_decompose(lam, p)
    assert all(0 <= c < p for c in lo)
    assert lo + hi * p == lam
    assert restricted_decompose(lo + hi * p, p) == (lo, hi)
