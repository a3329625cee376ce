"""Inversions of families of permutations.

A permutation of [r] is a tuple ``w`` with ``w[i - 1] = w(i)``; positions
and values are 1-based as in the usual notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from math import comb, factorial

import numpy as np

__all__ = ["PermFamily", "m_of", "is_inversion", "count_inversions",
           "classical_inversions", "max_inversions", "cut_witness", "identity",
           "InversionBudgetExceeded"]


class InversionBudgetExceeded(RuntimeError):
    pass


def identity(r: int) -> tuple:
    return tuple(range(1, r + 1))


def _check_perm(w, r):
    if sorted(w) != list(range(1, r + 1)):
        raise ValueError(f"{w} is not a permutation of [1..{r}]")


@dataclass(frozen=True)
class PermFamily:
    r: int
    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(w) for w in self.perms)
        for w in perms:
            _check_perm(w, self.r)
        object.__setattr__(self, "perms", perms)

    @property
    def n(self) -> int:
        return len(self.perms)

    def without(self, j: int) -> "PermFamily":
        return PermFamily(self.r, self.perms[:j] + self.perms[j + 1:])


def _check_tuple(tup, r):
    if len(set(tup)) != len(tup):
        raise ValueError(f"indices must be distinct, got {tup}")
    if any(not 1 <= i <= r for i in tup):
        raise ValueError(f"indices must lie in [1..{r}], got {tup}")


def m_of(w, tup) -> int:
    """The element of ``tup`` on which w is smallest."""
    _check_tuple(tup, len(w))
    return min(tup, key=lambda i: w[i - 1])


def is_inversion(F: PermFamily, tup) -> bool:
    if len(tup) != F.n:
        raise ValueError(f"tuple has {len(tup)} entries, family has {F.n} permutations")
    ms = [m_of(w, tup) for w in F.perms]
    return len(set(ms)) == len(ms)


def count_inversions(F: PermFamily) -> int:
    if F.n < 2:
        raise ValueError("inversions need at least two permutations")
    return sum(is_inversion(F, T) for T in combinations(range(1, F.r + 1), F.n))


def classical_inversions(w) -> int:
    return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def _argmin_table(r: int, n: int):
    """table[p, t] = m_w(T_t) for the p-th permutation and t-th n-subset."""
    perms = list(permutations(range(1, r + 1)))
    subsets = list(combinations(range(1, r + 1), n))
    W = np.array(perms)                      # (P, r), W[p, i-1] = w(i)
    S = np.array(subsets) - 1                # (T, n), 0-based positions
    vals = W[:, S]                           # (P, T, n)
    pick = vals.argmin(axis=2)               # (P, T)
    return perms, S[np.arange(len(subsets))[None, :], pick]  # (P, T) 0-based elems


def max_inversions(n: int, r: int, budget: int = 50_000_000) -> int:
    """Exact maximum of count_inversions over families of n permutations of [r].

    w_1 is fixed to the identity (right composition relabels positions) and
    the remaining permutations are taken as a multiset.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if r < n:
        return 0
    P = factorial(r)
    work = comb(P + n - 3, n - 2) * P * comb(r, n)
    if work > budget:
        raise InversionBudgetExceeded(f"search needs ~{work} steps, budget {budget}")
    perms, table = _argmin_table(r, n)
    ident = table[0]  # permutations() yields the identity first
    best = 0
    for head in combinations_with_replacement(range(P), n - 2):
        rows = [ident] + [table[h] for h in head]
        fixed_ok = np.ones(table.shape[1], dtype=bool)
        for a, b in combinations(range(len(rows)), 2):
            fixed_ok &= rows[a] != rows[b]
        # the last permutation ranges over everything, vectorised
        distinct = np.broadcast_to(fixed_ok, table.shape).copy()
        for row in rows:
            distinct &= table != row[None, :]
        best = max(best, int(distinct.sum(axis=1).max()))
    return best


def cut_witness(F: PermFamily, sub) -> set:
    """Positions j (0-based) such that ``sub`` is an inversion of F without w_j."""
    if F.n < 3:
        raise ValueError("cut_witness needs at least three permutations")
    if len(sub) != F.n - 1:
        raise ValueError(f"subtuple must have {F.n - 1} entries, got {len(sub)}")
    return {j for j in range(F.n) if is_inversion(F.without(j), sub)}
