import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_supports, tldes
from tropdiff.core import (INF, A_val, Tlde, TldeSystem, is_minimal_solution, is_solution,
                           is_subset, monomial, multi_support, proper_subsets, shift, tadd,
                           term_values, tmin, trop_eval, union, val, vanishes, vanishes_weakly)


# --- vanishing -------------------------------------------------------------

@pytest.mark.parametrize("terms, expected", [
    ([1, 1, 2], True),
    ([INF, INF], True),
    ([0, 1, 2], False),
    ([3, INF, 3], True),
])
def test_vanishes(terms, expected):
    assert vanishes(terms) is expected


@pytest.mark.parametrize("terms, expected", [
    ([1, 1, INF], True),
    ([INF, INF], False),
    ([0, 1], False),
    ([0, 5, 5], True),  # repeated but not the minimum
])
def test_vanishes_weakly(terms, expected):
    assert vanishes_weakly(terms) is expected


def test_empty_term_lists_rejected():
    with pytest.raises(ValueError):
        vanishes([])
    with pytest.raises(ValueError):
        vanishes_weakly([])


# --- extended integers ----------------------------------------------------

def test_inf_is_absorbing_and_top():
    assert tadd(INF, 5) is INF
    assert tadd(3, INF) is INF
    assert tmin(INF, 7) == 7
    assert tmin() is INF
    assert INF > 10**18 and not INF < 0
    assert pickle.loads(pickle.dumps(INF)) is INF


def test_overflow_detected():
    with pytest.raises(OverflowError):
        tadd(2**62, 2**62)
    with pytest.raises(OverflowError):
        Tlde.single((2**63, 0))


# --- valuation and evaluation ------------------------------------------------

@pytest.mark.parametrize("S, i, expected", [
    ((3,), 1, 2),
    ((), 0, INF),
    ((0, 5), 2, 3),
    ((0, 5), 6, INF),
])
def test_val(S, i, expected):
    assert val(S, i) == expected


def test_trop_eval_examples():
    assert trop_eval(Tlde.single((0, 1)), ((1,),)) == 1
    assert trop_eval(Tlde.single((2, 0)), ((0, 3),)) == 2
    assert trop_eval(Tlde(((1, 2), (0, 0))), ((), ())) is INF


def test_is_solution_examples():
    P = Tlde.single((0, 1))
    for q in range(1, 8):
        assert is_solution(P, ((q,),))
    assert not is_solution(Tlde.single((0, 0)), ((1,),))
    assert is_solution(Tlde.single((2, 0)), ((0, 3),))
    assert is_solution(P, ((),))


def test_A_val_examples():
    assert A_val(Tlde.single((0, 2, 4)), 0, 3) == 3
    assert A_val(Tlde.single((3, 2, 1, 0)), 0, 2) == 1
    P = Tlde(((5, -1), (7, 2, 0)))
    assert A_val(P, 0, 0) == 5 and A_val(P, 1, 0) == 7


def test_A_val_is_monomial_evaluation():
    P = Tlde(((1, 4, -2), (0, 3)))
    for j in range(2):
        for alpha in range(6):
            assert A_val(P, j, alpha) == trop_eval(P, monomial(2, j, alpha))


def test_malformed_equations():
    with pytest.raises(ValueError):
        Tlde.single((3,))  # order 0
    with pytest.raises(TypeError):
        Tlde.single((1, 2.5))
    with pytest.raises(ValueError):
        TldeSystem((Tlde.single((1, 2)), Tlde.single((1, 2, 3))))
    with pytest.raises(ValueError):
        term_values(Tlde.single((0, 1)), ((1,), (2,)))


def test_support_helpers():
    S = multi_support([3, 1], [])
    assert S == ((1, 3), ())
    assert shift(S, 2) == ((3, 5), ())
    assert union(S, ((2,), (0,))) == ((1, 2, 3), (0,))
    assert is_subset(((1,), ()), S)
    assert len(list(proper_subsets(((0, 1), (2,))))) == 6
    with pytest.raises(ValueError):
        multi_support([-1])


def test_minimal_solution_check():
    P = Tlde.single((2, 0))
    assert is_minimal_solution(P, ((0, 3),))
    assert is_solution(P, ((0, 3, 4),)) and not is_minimal_solution(P, ((0, 3, 4),))
    assert not is_minimal_solution(P, ((),))


# --- properties ------------------------------------------------------------------

@given(small_supports(), small_supports(), st.integers(0, 7))
def test_val_monotone_under_inclusion(S, T, i):
    U = tuple(sorted(set(S) | set(T)))
    assert val(U, i) <= val(S, i)


@given(tldes(n_max=2), st.data())
def test_trop_eval_is_homomorphism(P, data):
    S = tuple(data.draw(small_supports()) for _ in range(P.n))
    T = tuple(data.draw(small_supports()) for _ in range(P.n))
    assert trop_eval(P, union(S, T)) == tmin(trop_eval(P, S), trop_eval(P, T))


@given(tldes(n_max=2), st.data())
def test_solutions_closed_under_union(P, data):
    S = tuple(data.draw(small_supports()) for _ in range(P.n))
    T = tuple(data.draw(small_supports()) for _ in range(P.n))
    if is_solution(P, S) and is_solution(P, T):
        assert is_solution(P, union(S, T))


@given(tldes(n_max=2), st.integers(0, 8))
def test_A_val_linear_above_order(P, extra):
    for j, k in enumerate(P.orders):
        alpha = k + extra
        assert A_val(P, j, alpha + 1) == A_val(P, j, alpha) + 1


@given(st.lists(st.one_of(st.integers(-3, 3), st.just(INF)), min_size=1, max_size=6))
def test_vanishing_implies_weak_vanishing(terms):
    if vanishes(terms) and any(t is not INF for t in terms):
        assert vanishes_weakly(terms)
