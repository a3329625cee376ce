"""One equation in several unknowns."""
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import tldes
from tropdiff.core import Tlde, is_minimal_solution, is_solution, is_subset
from tropdiff.multi import (circuit_matroid, is_regular_n, loops, minimal_solutions_n,
                            ray_solutions)
from tropdiff.oracle import SearchBox, auto_box, oracle_minimal
from tropdiff.single import ShiftRay, minimal_solutions_1

TWO = Tlde(((2, 0), (2, 0)))
multi_tldes = tldes(n_max=3, k_max=2).filter(lambda P: P.n > 1)


def test_loops_examples():
    assert loops(TWO) == frozenset()
    assert loops(Tlde(((0, 1), (2, 0)))) == {0}
    assert loops(Tlde(((0, 1), (0, 1)))) == {0, 1}


def test_circuit_matroid_examples():
    M = circuit_matroid(TWO)
    assert M.loops == frozenset() and M.circuits == (frozenset({0, 1}),)
    assert M.valuation[frozenset({0, 1})] == 0

    M = circuit_matroid(Tlde(((0, 1), (0, 1))))
    assert set(M.circuits) == {frozenset({0}), frozenset({1})}

    M = circuit_matroid(Tlde(((2, 0),) * 3))
    assert set(M.circuits) == {frozenset(c) for c in combinations(range(3), 2)}
    assert set(M.valuation.values()) == {0}


def test_ray_examples():
    assert ray_solutions(TWO) == [ShiftRay(((1,), (1,)))]
    assert ray_solutions(Tlde(((0, 1), (2, 0)))) == [ShiftRay(((1,), ()))]
    assert set(ray_solutions(Tlde(((0, 1), (0, 1))))) == {ShiftRay(((1,), ())), ShiftRay(((), (1,)))}


def test_ray_offset_on_smaller_side():
    P = Tlde(((2, 0), (5, 3)))  # A_{1,u} = 0, A_{1,v} = 3
    assert ray_solutions(P) == [ShiftRay(((4,), (1,)))]
    box = SearchBox((8, 8), (2, 2), 2)
    members = {S for S in oracle_minimal(P, box) if S[0] and S[1] and S[0][0] >= 1 and S[1][0] >= 1}
    assert members == {((4 + i,), (1 + i,)) for i in range(5)}


def test_minimal_solutions_example():
    s = minimal_solutions_n(TWO)
    assert set(s.finite) == {((), (0, 3)), ((0, 3), ()), ((0,), (0,)), ((0,), (3,)), ((3,), (0,))}
    assert s.rays == [ShiftRay(((1,), (1,)))]
    box = SearchBox((6, 6), (2, 2), 2)
    assert s.members_up_to(6) == set(oracle_minimal(TWO, box))


def test_all_loops():
    P = Tlde(((0, 1), (0, 1)))
    s = minimal_solutions_n(P)
    assert len(s.rays) == 2
    # the two constant terms tie, so t_u^0 + t_v^0 is a minimal solution too
    assert s.finite == [((0,), (0,))]
    assert s.members_up_to(5) == set(oracle_minimal(P, SearchBox((5, 5), (2, 2), 2)))


@pytest.mark.parametrize("P, expected", [
    (TWO, False),
    (Tlde(((2, 0), (5, 0))), True),
    (Tlde(((0, 1), (5, 0))), False),
])
def test_is_regular_n(P, expected):
    assert is_regular_n(P) is expected


# --- properties --------------------------------------------------------------------

def _box(P, extra=5):
    box = auto_box(P)
    return SearchBox(tuple(q + extra for q in box.Q), box.cap, box.total)


@settings(max_examples=40)
@given(multi_tldes)
def test_agrees_with_oracle(P):
    box = _box(P)
    s = minimal_solutions_n(P)
    assert s.members_up_to(box.Q[0]) == set(oracle_minimal(P, box))


@given(multi_tldes)
def test_finite_elements_have_two_exponents(P):
    for S in minimal_solutions_n(P).finite:
        assert sum(len(p) for p in S) <= 2


@given(multi_tldes)
def test_ray_shifts_stay_minimal(P):
    for r in minimal_solutions_n(P).rays:
        for i in range(5):
            assert is_minimal_solution(P, r.member(i))


def _support(S):
    return frozenset(j for j, p in enumerate(S) if p)


@given(multi_tldes)
def test_ray_supports_form_an_antichain(P):
    supports = {_support(r.base) for r in minimal_solutions_n(P).rays}
    for A in supports:
        for B in supports:
            assert A == B or not A < B


def _ord(S):
    return tuple(p[0] if p else None for p in S)


@given(multi_tldes)
def test_ray_members_satisfy_circuit_elimination(P):
    rays = minimal_solutions_n(P).rays
    top = 4 + max(P.orders)

    def upto(bound):
        return [_ord(r.member(i)) for r in rays for i in range(bound)
                if max(x for p in r.member(i) for x in p) <= bound]

    members, pool = upto(top), upto(top + 40)

    def ge(x, y):  # x >= y with None as infinity
        return x is None or (y is not None and x >= y)

    for S in members:
        for T in members:
            for i in range(P.n):
                if S[i] is None or S[i] != T[i]:
                    continue
                for j in range(P.n):
                    if S[j] is None or not (T[j] is None or S[j] < T[j]):
                        continue
                    lo = [min((x for x in (a, b) if x is not None), default=None) for a, b in zip(S, T)]
                    assert any(U[i] is None and U[j] == S[j]
                               and all(ge(U[l], lo[l]) for l in range(P.n)) for U in pool)


@given(multi_tldes)
def test_block_solutions_embed(P):
    s = minimal_solutions_n(P)
    for j in range(P.n):
        block = minimal_solutions_1(P.block(j))
        own = {S for S in s.finite if _support(S) == {j}}
        assert own == {tuple(S[0] if l == j else () for l in range(P.n)) for S in block.finite}
        own_rays = {r.base for r in s.rays if _support(r.base) == {j}}
        assert own_rays == {tuple(r.base[0] if l == j else () for l in range(P.n)) for r in block.rays}


@given(multi_tldes)
def test_regular_iff_straddling_shapes(P):
    s = minimal_solutions_n(P)
    k = P.orders

    def straddles(S):
        flat = [(j, x) for j, p in enumerate(S) for x in p]
        if len(flat) != 2:
            return False
        (j1, x1), (j2, x2) = flat
        return (x1 < k[j1]) != (x2 < k[j2])

    assert is_regular_n(P) == (all(straddles(S) for S in s.finite) and not (loops(P)))


@given(multi_tldes)
def test_circuits_are_loops_and_pairs(P):
    M = circuit_matroid(P)
    free = [j for j in range(P.n) if j not in M.loops]
    assert set(M.circuits) == ({frozenset({j}) for j in M.loops}
                               | {frozenset(c) for c in combinations(free, 2)})
    for C, nu in M.valuation.items():
        assert nu >= 0
        if len(C) == 1:
            (j,) = C
            assert nu == P.orders[j]


@given(multi_tldes)
def test_everything_reported_is_a_solution(P):
    s = minimal_solutions_n(P)
    for S in s.finite:
        assert is_solution(P, S)
        assert not any(is_subset(r.member(0), S) for r in s.rays)
