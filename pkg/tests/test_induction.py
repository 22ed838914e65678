import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobcoh.classify import CohClass, br_weights_in_box
from frobcoh.errors import FiltrationViolation, NotDominant, PrimeGateError
from frobcoh.induction import dot_dominant, good_filtration_factors, induce, weyl_dim
from frobcoh.rootsys import Weight, build_root_system, elements_of_length


@given(st.integers(0, 200))
def test_weyl_dim_rank_one(m):
    assert weyl_dim(build_root_system("A1"), Weight((m,))) == m + 1


def test_weyl_dim_examples():
    A2 = build_root_system("A2")
    assert weyl_dim(A2, A2.rho) == 8
    assert weyl_dim(A2, A2.zero()) == 1
    assert weyl_dim(build_root_system("G2"), Weight((1, 0))) == 7
    assert weyl_dim(build_root_system("E8"), Weight((0, 0, 0, 0, 0, 0, 0, 1))) == 248
    with pytest.raises(NotDominant):
        weyl_dim(A2, Weight((1, -1)))


@pytest.mark.parametrize("label", ["A2", "B3", "G2"])
def test_dot_dominant_inverts_the_dot_action(label):
    R = build_root_system(label)
    mu = Weight(tuple(range(1, R.rank + 1)))
    for n in range(4):
        for w in elements_of_length(R, n):
            assert dot_dominant(R, w.dot(mu)) == ((-1) ** n, mu)
    assert dot_dominant(R, Weight((-1,) + (0,) * (R.rank - 1))) == (0, None)


def test_line_with_dominant_weight():
    R = build_root_system("B3")
    p, r = 7, 2
    nu = Weight((1, 1, 2))
    w = elements_of_length(R, 3)[0]
    g = good_filtration_factors(R, nu * p ** r + w.dot(R.zero()) * p, p, r)
    assert g.factors == ((nu, 1),)
    assert g.dim == weyl_dim(R, nu)


def test_zero_class_gives_empty_filtration():
    R = build_root_system("A2")
    g = good_filtration_factors(R, Weight((1, 0)), 5, 2)
    assert g.factors == () and g.dim == 0


@pytest.mark.parametrize("label,p", [("A2", 5), ("B3", 7)])
def test_ustar_with_regular_weight_keeps_everything(label, p):
    R = build_root_system(label)
    nu = R.rho * 3
    for r in (2, 3):
        g = good_filtration_factors(R, nu * p ** r - R.simple_weights[0], p, r)
        assert sorted(w for w, _ in g.factors) == sorted(b + nu for b in R.positive_root_weights)
        assert g.dropped == ()
        assert g.dim == sum(weyl_dim(R, b + nu) for b in R.positive_root_weights)


def test_dimension_is_independent_of_r():
    R = build_root_system("A2")
    nu = Weight((2, 1))
    dims = {good_filtration_factors(R, nu * 5 ** r - R.simple_weights[1], 5, r).dim for r in (1, 2, 3, 4)}
    assert len(dims) == 1


def test_dropped_weights_pair_to_minus_one():
    R = build_root_system("A2")
    for lam, _ in br_weights_in_box(R, 5, 2, 250, dominant=True):
        g = good_filtration_factors(R, lam, 5, 2)
        for w in g.dropped:
            assert min(w) == -1


def test_errors():
    R = build_root_system("B3")
    with pytest.raises(NotDominant):
        good_filtration_factors(R, Weight((-1, 0, 0)), 7, 2)
    with pytest.raises(PrimeGateError):
        good_filtration_factors(R, R.zero(), 5, 2)
    with pytest.raises(FiltrationViolation):
        induce(R, CohClass.line(Weight((-2, 3, 0)), 2))
    with pytest.raises(FiltrationViolation):
        induce(R, CohClass.ustar(R, Weight((0, -2, 0)), 2))
