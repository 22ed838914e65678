import pytest

from frobcoh.chevalley import structure_constants
from frobcoh.cohomology import (
    TRIVIAL, USTAR, CEComplex, TChar, ce_cohomology, closed_form_h2, euler_characteristic,
    extra_h2_classes, h1_u_ustar, h3_U1_char, kostant_check, root_char,
)
from frobcoh.errors import DegreeOutOfRange, PrimeGateError, PrimeGateWarning
from frobcoh.rootsys import Weight, build_root_system, elements_of_length


def _ce(label, p, n, coeff=TRIVIAL):
    return ce_cohomology(structure_constants(label), p, n, coeff)


@pytest.mark.parametrize("label,coeff,top", [("A3", TRIVIAL, 4), ("B2", USTAR, 4), ("G2", TRIVIAL, 6),
                                             ("C3", USTAR, 3), ("B3", TRIVIAL, 4)])
def test_differential_squares_to_zero(label, coeff, top):
    C = CEComplex(structure_constants(label), coeff)
    for n in range(top):
        for cols in C.basis(n).values():
            for key in cols:
                dd = {}
                for img, c in C.differential(key).items():
                    for img2, c2 in C.differential(img).items():
                        dd[img2] = dd.get(img2, 0) + c * c2
                assert not any(dd.values()), (n, key)


def test_block_dimensions_are_binomial():
    from math import comb
    C = CEComplex(structure_constants("B3"), USTAR)
    for n in range(5):
        assert sum(len(c) for c in C.basis(n).values()) == comb(9, n) * 9


def test_a2_degree_three():
    R = build_root_system("A2")
    assert _ce("A2", 5, 3) == root_char(R, [(2, 2)])


def test_g2_degree_two_at_three():
    R = build_root_system("G2")
    got = _ce("G2", 3, 2)
    for c in [(3, 1), (3, 3), (6, 3), (4, 2)]:
        assert got[R.root_weight(c)] >= 1
    assert got == closed_form_h2(R, 3)


def test_extra_h2_classes_absent_for_large_primes():
    for label in ("B4", "C3", "F4", "G2"):
        assert extra_h2_classes(build_root_system(label), 5) == []


def test_f4_degree_two_at_three_has_an_unlisted_class():
    R = build_root_system("F4")
    excess, missing = _ce("F4", 3, 2).minus(closed_form_h2(R, 3))
    assert not missing
    assert [R.simple_coords(w) for w in excess] == [(1, 2, 3, 3)]


def test_kostant_examples():
    assert not kostant_check(structure_constants("A4"), 3, 3)[3].match
    assert all(r.match for r in kostant_check(structure_constants("B4"), 7, 3))
    for label in ("A1", "E6", "G2"):
        rep = kostant_check(structure_constants(label), 3, 0)[0]
        assert rep.match and rep.computed == TChar([build_root_system(label).zero()])


def test_degree_range():
    A = structure_constants("A2")
    with pytest.raises(DegreeOutOfRange):
        ce_cohomology(A, 5, 4)
    assert ce_cohomology(A, 5, 4, USTAR).dim >= 0
    with pytest.raises(DegreeOutOfRange):
        kostant_check(A, 5, 4)


def test_h1_ustar_table_entries():
    R = build_root_system("A3")
    got = h1_u_ustar(structure_constants(R), 5)
    a = R.simple_weights
    assert got[a[0] * 2] == 1
    assert got[a[0] + a[2]] == 2
    assert got[a[0] * 3] == 0
    assert got[a[0] + a[1]] == 1
    assert got[R.root_weight((1, 2, 0))] == 1  # −s2s1·0 = α1 + 2α2


def test_h1_ustar_gate():
    A = structure_constants("B3")
    with pytest.raises(PrimeGateError):
        h1_u_ustar(A, 5)
    with pytest.warns(PrimeGateWarning):
        h1_u_ustar(A, 5, force=True)


def test_h3_u1_rank_one():
    R = build_root_system("A1")
    assert h3_U1_char(structure_constants(R), 5) == TChar({Weight((12,)): 1})


def test_h3_u1_contains_twisted_positive_roots():
    R = build_root_system("A2")
    got = h3_U1_char(structure_constants(R), 5)
    for s in R.positive_root_weights:
        for a in R.simple_weights:
            assert got[s * 5 + a] >= 1


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "G2"])
def test_exterior_powers_at_dot_weights(label):
    R = build_root_system(label)
    C = CEComplex(structure_constants(R))
    for length in range(5):
        for w in elements_of_length(R, length):
            wt = R.simple_coords(-w.dot(R.zero()))
            for n in range(6):
                assert len(C.basis(n).get(wt, [])) == (1 if n == length else 0)


@pytest.mark.parametrize("label,p", [("A3", 3), ("B2", 3), ("G2", 3), ("C3", 5)])
def test_euler_characteristic(label, p):
    coh, chains = euler_characteristic(CEComplex(structure_constants(label)), p)
    assert coh == chains


@pytest.mark.parametrize("label,p", [("A4", 3), ("B3", 3), ("C3", 3), ("G2", 3), ("F4", 3), ("D4", 5)])
def test_degree_three_weights_are_sums_of_distinct_roots(label, p):
    R = build_root_system(label)
    roots = R.positive_roots
    simple = set(R.simple_root(i) for i in range(R.rank))
    sums = set()
    for i, a in enumerate(roots):
        for j in range(i + 1, len(roots)):
            for k in range(j + 1, len(roots)):
                if {a, roots[j], roots[k]} & simple:
                    sums.add(tuple(x + y + z for x, y, z in zip(a, roots[j], roots[k])))
    for w in _ce(label, p, 3):
        assert R.simple_coords(w) in sums


@pytest.mark.parametrize("label,p", [("A2", 3), ("B2", 3), ("A3", 3), ("B3", 5), ("C3", 5), ("G2", 5)])
def test_total_dimension_is_weyl_order(label, p):
    R = build_root_system(label)
    A = structure_constants(R)
    assert sum(ce_cohomology(A, p, n).dim for n in range(A.dim + 1)) == R.weyl_order


@pytest.mark.parametrize("label,p", [("B3", 3), ("C3", 3), ("G2", 3), ("A4", 3)])
def test_sign_convention_does_not_change_cohomology(label, p):
    R = build_root_system(label)
    flipped = structure_constants(R, signs={c: (-1) ** i for i, c in enumerate(R.positive_roots)})
    usual = structure_constants(R)
    for n in range(4):
        for coeff in (TRIVIAL, USTAR):
            assert ce_cohomology(flipped, p, n, coeff) == ce_cohomology(usual, p, n, coeff)


def test_tchar_rejects_negative_multiplicity():
    with pytest.raises(ValueError):
        TChar({Weight((1,)): -1})
    t = TChar([Weight((1,)), Weight((1,)), Weight((2,))])
    assert t.dim == 3 and t[Weight((1,))] == 2
    excess, missing = t.minus(TChar([Weight((2,)), Weight((3,))]))
    assert excess == TChar({Weight((1,)): 2}) and missing == TChar([Weight((3,))])
    assert t.scale(5).shift(Weight((1,))) == TChar({Weight((6,)): 2, Weight((11,)): 1})
