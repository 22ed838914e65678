import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobcoh.rootsums import (
    SIMPLE, TRIPLE, TWO_ROOT, check_p_multiple, check_simple_rhs, check_triple_rhs,
    check_two_root_rhs, compare_catalog, digit_carry_floor, sample_digit_carries,
    digit_carry_solutions,
)
from frobcoh.rootsys import build_root_system


def _lhs(sol):
    return sorted(c for c in (sol.alpha,) + sol.sigmas if any(c))


def test_p_multiple_b2_at_three():
    R = build_root_system("B2")
    sols = check_p_multiple(R, 3)
    assert any(_lhs(s) == [(1, 0), (1, 1), (1, 2)] and s.nu == R.root_weight((1, 1)) for s in sols)


@pytest.mark.parametrize("label", ["A1", "A3", "B3", "G2", "F4"])
def test_p_multiple_empty_at_five(label):
    assert check_p_multiple(build_root_system(label), 5) == []


def test_two_root_g2_at_five():
    R = build_root_system("G2")
    (sol,) = check_two_root_rhs(R, 5)
    assert _lhs(sol) == [(1, 0), (2, 1), (3, 1)]
    assert sorted(sol.rhs) == [(0, 1), (1, 1)]
    assert sol.nu == R.root_weight((1, 0))


def test_two_root_b4_family_and_empty_a4():
    d = compare_catalog(build_root_system("B4"), 5, TWO_ROOT)
    assert d.match and len(d.found) == 2
    assert check_two_root_rhs(build_root_system("A4"), 5) == []


def test_triple_examples():
    assert len(check_triple_rhs(build_root_system("C3"), 5)) == 3
    R = build_root_system("G2")
    (sol,) = check_triple_rhs(R, 7)
    assert _lhs(sol) == [(1, 0), (3, 1), (3, 2)]
    assert sol.rhs == ((0, 3),) and sol.nu == R.root_weight((1, 0))
    assert check_triple_rhs(build_root_system("D4"), 5) == []


def test_simple_examples():
    R = build_root_system("A4")
    sols = check_simple_rhs(R, 5)
    dots = {tuple(R.simple_coords(-R.element(w).dot(R.zero()))) for w in ((2, 1, 0), (1, 2, 3))}
    assert {tuple(a + b + c for a, b, c in zip(s.alpha, *s.sigmas)) for s in sols} == dots
    assert compare_catalog(R, 5, SIMPLE).match
    assert check_simple_rhs(R, 7) == []
    assert check_simple_rhs(build_root_system("B3"), 5) == []


def test_unlisted_bad_cases_are_data_only():
    # complete lists exist where the catalogs are silent; nothing is asserted about them
    d = compare_catalog(build_root_system("A6"), 7, TRIPLE)
    assert d.match is None and d.found


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2", "B2", "D4"]), st.sampled_from([2, 3, 5, 7]),
       st.sampled_from([check_p_multiple, check_two_root_rhs, check_triple_rhs, check_simple_rhs]))
def test_solutions_substitute_back(label, p, solver):
    R = build_root_system(label)
    for sol in solver(R, p):
        sol.validate(R)
        assert sol.alpha in {R.simple_root(i) for i in range(R.rank)}


@pytest.mark.parametrize("label", ["A3", "A7", "B3", "B6", "C4", "D5", "E6", "E7", "E8", "F4", "G2"])
def test_no_digit_carries_at_threshold(label):
    R = build_root_system(label)
    p = digit_carry_floor(R)
    assert digit_carry_solutions(R, p) == []
    assert sample_digit_carries(R, p, 100_000, seed=1) == 0


def test_digit_carry_sampler_finds_small_prime_solutions():
    R = build_root_system("B3")
    assert digit_carry_solutions(R, 3)
    assert sample_digit_carries(R, 3, 2000) > 0
