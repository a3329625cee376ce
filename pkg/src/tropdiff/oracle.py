"""Brute-force ground truth over a bounded exponent box.

Nothing here knows any structure theory; it just tries supports.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import Tlde, _as_system, is_solution

__all__ = ["SearchBox", "OracleBudgetExceeded", "auto_box", "oracle_solutions",
           "oracle_minimal", "oracle_infinity"]


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBox:
    """Exponents 0..Q[j] for unknown j, at most ``cap[j]`` of them, ``total`` overall."""

    Q: tuple
    cap: tuple
    total: Optional[int] = None

    def __post_init__(self):
        if len(self.Q) != len(self.cap):
            raise ValueError("Q and cap must have one entry per unknown")
        if any(q < 0 for q in self.Q) or any(c < 1 for c in self.cap):
            raise ValueError(f"box must be positive, got Q={self.Q} cap={self.cap}")


def auto_box(sigma, Q: Optional[int] = None) -> SearchBox:
    """Uniform box 2 max k + coefficient spread + 1, size caps from the 2m witness bound."""
    sigma = _as_system(sigma)
    if Q is None:
        coeffs = [a for P in sigma for b in P.coeffs for a in b]
        Q = 2 * max(sigma.orders) + max(coeffs) - min(coeffs) + 1
    total = 2 * sigma.m
    return SearchBox(tuple([Q] * sigma.n), tuple([total] * sigma.n), total)


def _budget() -> int:
    return int(os.environ.get("TROPDIFF_BUDGET", "5000000"))


def _candidates(box: SearchBox):
    """Supports ordered by total size, then lexicographically."""
    n = len(box.Q)
    flat = [(j, x) for j in range(n) for x in range(box.Q[j] + 1)]
    top = box.total if box.total is not None else sum(box.cap)
    for r in range(1, top + 1):
        for pick in combinations(flat, r):
            parts = [[] for _ in range(n)]
            for j, x in pick:
                parts[j].append(x)
            if any(len(p) > c for p, c in zip(parts, box.cap)):
                continue
            yield tuple(tuple(p) for p in parts)


def _count(box: SearchBox) -> int:
    from math import comb
    n_flat = sum(q + 1 for q in box.Q)
    top = box.total if box.total is not None else sum(box.cap)
    return sum(comb(n_flat, r) for r in range(1, top + 1))


def oracle_solutions(sigma, box: Optional[SearchBox] = None) -> list:
    sigma = _as_system(sigma)
    box = box or auto_box(sigma)
    if _count(box) > _budget():
        raise OracleBudgetExceeded(
            f"box has {_count(box)} candidates, budget is {_budget()} (TROPDIFF_BUDGET)")
    return [S for S in _candidates(box) if is_solution(sigma, S)]


def oracle_minimal(sigma, box: Optional[SearchBox] = None) -> list:
    sigma = _as_system(sigma)
    found = []
    seen = set()
    for S in oracle_solutions(sigma, box):
        flat = [(j, x) for j, p in enumerate(S) for x in p]
        minimal = True
        # any minimal solution below S is smaller, so it is already in seen
        for r in range(1, len(flat)):
            for pick in combinations(flat, r):
                parts = [[] for _ in S]
                for j, x in pick:
                    parts[j].append(x)
                if tuple(tuple(p) for p in parts) in seen:
                    minimal = False
                    break
            if not minimal:
                break
        if minimal:
            seen.add(S)
            found.append(S)
    return found


def _val_inf(S, i: int):
    """Valuation at infinity.

    For i = 0 this is max S; for i >= 1 differentiation kills the constant
    term, so only negative exponents count: max{s - i : s <= -1}.
    """
    if i == 0:
        return max(S) if S else None
    neg = [s for s in S if s <= -1]
    return max(neg) - i if neg else None


def oracle_infinity(P: Tlde, depth: int) -> list:
    """Minimal subsets of {0, -1, ..., -depth} on which the max-plus analogue vanishes."""
    if P.n != 1:
        raise ValueError("solutions at infinity are defined for one unknown")
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    a = P.coeffs[0]
    pool = list(range(0, -depth - 1, -1))

    def solves(S):
        terms = []
        for i, c in enumerate(a):
            v = _val_inf(S, i)
            if v is not None:
                terms.append(c + v)
        if not terms:
            return True
        top = max(terms)
        return terms.count(top) >= 2

    found = []
    for r in range(1, len(pool) + 1):
        for S in combinations(pool, r):
            S = tuple(sorted(S, reverse=True))
            if any(set(T) <= set(S) for T in found):
                continue
            if solves(S):
                found.append(S)
    return found
