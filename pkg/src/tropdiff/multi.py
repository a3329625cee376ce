"""Minimal solutions of a single TLDE in several unknowns."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import A_val, Tlde, is_solution, is_subset, monomial
from .single import (ShiftRay, SolutionSet, is_holonomic, is_regular_1,
                     minimal_solutions_1)

__all__ = [
    "CircuitMatroid", "loops", "circuit_matroid", "ray_solutions",
    "minimal_solutions_n", "minimal_solutions", "is_regular_n",
]


def _top(P: Tlde, j: int) -> int:
    return A_val(P, j, P.orders[j])


def loops(P: Tlde) -> frozenset:
    """Unknowns whose block, read as a one-unknown equation, is non-holonomic."""
    return frozenset(j for j in range(P.n) if not is_holonomic(P.block(j)))


@dataclass(frozen=True)
class CircuitMatroid:
    ground: tuple
    loops: frozenset
    circuits: tuple
    valuation: dict

    def is_circuit(self, C) -> bool:
        return frozenset(C) in self.circuits


def circuit_matroid(P: Tlde) -> CircuitMatroid:
    L = loops(P)
    free = [j for j in range(P.n) if j not in L]
    circuits = [frozenset({j}) for j in sorted(L)]
    circuits += [frozenset(c) for c in combinations(free, 2)]
    nu = {}
    for C in circuits:
        if len(C) == 1:
            (j,) = C
            nu[C] = P.orders[j]
        else:
            a, b = sorted(C)
            nu[C] = abs(_top(P, a) - _top(P, b))
    return CircuitMatroid(tuple(range(P.n)), L, tuple(circuits), nu)


def ray_solutions(P: Tlde) -> list:
    k = P.orders
    L = loops(P)
    rays = [ShiftRay(monomial(P.n, j, k[j])) for j in sorted(L)]
    free = [j for j in range(P.n) if j not in L]
    for a, b in combinations(free, 2):
        if _top(P, a) < _top(P, b):
            a, b = b, a
        # the unknown with the larger A-value sits at its order
        parts = [()] * P.n
        parts[a] = (k[a],)
        parts[b] = (k[b] + _top(P, a) - _top(P, b),)
        rays.append(ShiftRay(tuple(parts)))
    return rays


def _embed(n: int, j: int, part) -> tuple:
    parts = [()] * n
    parts[j] = tuple(part)
    return tuple(parts)


def minimal_solutions_n(P: Tlde) -> SolutionSet:
    n, k = P.n, P.orders
    L = loops(P)
    finite = []
    for j in range(n):
        for (Sj,) in minimal_solutions_1(P.block(j)).finite:
            finite.append(_embed(n, j, Sj))

    def mono_solves(j, alpha):
        return is_solution(P, monomial(n, j, alpha))

    for i, j in combinations(range(n), 2):
        # both exponents below their orders
        for p in range(k[i]):
            for q in range(k[j]):
                if mono_solves(i, p) or mono_solves(j, q):
                    continue
                S = _pair(n, i, p, j, q)
                if is_solution(P, S):
                    finite.append(S)
    for i in range(n):
        for j in range(n):
            if i == j or j in L:
                continue
            # low exponent on i, the balancing high exponent on j
            for p in range(k[i]):
                if mono_solves(i, p):
                    continue
                q = A_val(P, i, p) - _top(P, j) + k[j]
                if q >= k[j]:
                    finite.append(_pair(n, i, p, j, q))

    rays = ray_solutions(P)
    finite = [S for S in set(finite)
              if not any(T != S and is_subset(T, S) for T in finite)
              and not any(_ray_below(r, S) for r in rays)]
    return SolutionSet(finite, rays)


def _ray_below(ray: ShiftRay, S) -> bool:
    """Some member of the ray is contained in S."""
    top = max((x for p in S for x in p), default=-1)
    i = 0
    while True:
        R = ray.member(i)
        if max(x for p in R for x in p) > top:
            return False
        if is_subset(R, S):
            return True
        i += 1


def _pair(n, i, p, j, q):
    parts = [()] * n
    parts[i] = (p,)
    parts[j] = (q,)
    return tuple(parts)


def minimal_solutions(P: Tlde) -> SolutionSet:
    return minimal_solutions_1(P) if P.n == 1 else minimal_solutions_n(P)


def is_regular_n(P: Tlde) -> bool:
    if not all(is_regular_1(P.block(j)) for j in range(P.n)):
        return False
    low = [A_val(P, j, alpha) for j in range(P.n) for alpha in range(P.orders[j])]
    return len(set(low)) == len(low)
