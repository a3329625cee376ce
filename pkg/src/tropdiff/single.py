"""Analysis of one TLDE in one unknown.

Every function here takes a :class:`~tropdiff.core.Tlde` with ``n == 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import A_val, Tlde, is_solution, is_subset, multi_support, shift

__all__ = [
    "ShiftRay", "SolutionSet", "ConfigEntry", "InfinitySolutions",
    "is_holonomic", "has_nonzero_solution", "q_of_p", "minimal_solutions_1",
    "is_regular_1", "configuration", "infinity_solutions", "solution_key",
]


def solution_key(S):
    return tuple(S)


@dataclass(frozen=True)
class ShiftRay:
    """The family {t^i · base : i >= 0}."""

    base: tuple

    def member(self, i: int):
        return shift(self.base, i)

    def contains(self, S) -> bool:
        """Whether S = t^i · base for some i >= 0."""
        flat_b = [(j, x) for j, p in enumerate(self.base) for x in p]
        flat_s = [(j, x) for j, p in enumerate(S) for x in p]
        if len(flat_b) != len(flat_s) or not flat_b:
            return False
        d = flat_s[0][1] - flat_b[0][1]
        return d >= 0 and shift(self.base, d) == tuple(S)


@dataclass
class SolutionSet:
    """Minimal solutions split into a finite part and shift rays."""

    finite: list = field(default_factory=list)
    rays: list = field(default_factory=list)

    def __post_init__(self):
        self.finite = sorted({tuple(S) for S in self.finite}, key=solution_key)
        self.rays = sorted({ShiftRay(tuple(r.base)) for r in self.rays},
                           key=lambda r: solution_key(r.base))

    @property
    def holonomic(self) -> bool:
        return not self.rays

    def members_up_to(self, bound: int) -> set:
        """Finite part plus every ray member whose exponents stay <= bound."""
        out = {S for S in self.finite}
        for r in self.rays:
            i = 0
            while True:
                S = r.member(i)
                if max(x for p in S for x in p) > bound:
                    break
                out.add(S)
                i += 1
        return out


def _coeffs(P: Tlde) -> tuple:
    if P.n != 1:
        raise ValueError(f"expected a single-unknown equation, got n={P.n}")
    return P.coeffs[0]


def _A_ties(a, alpha: int) -> int:
    """How many indices attain the minimum defining A_alpha."""
    terms = [a[i] + alpha - i for i in range(min(alpha, len(a) - 1) + 1)]
    return terms.count(min(terms))


def is_holonomic(P: Tlde) -> bool:
    a = _coeffs(P)
    return _A_ties(a, len(a) - 1) == 1


def has_nonzero_solution(P: Tlde) -> bool:
    a = _coeffs(P)
    return not all(a[i] - i > a[0] for i in range(1, len(a)))


def q_of_p(P: Tlde, p: int) -> Optional[int]:
    """The unique partner q >= k making {p, q} a minimal solution, if any.

    Returns None when {p} alone already solves P, when P is non-holonomic
    (then {q} solves P for every q >= k), or when the balancing exponent
    falls below k.
    """
    a = _coeffs(P)
    k = len(a) - 1
    if not 0 <= p < k:
        raise ValueError(f"p must satisfy 0 <= p < k={k}, got {p}")
    if _A_ties(a, p) > 1 or not is_holonomic(P):
        return None
    high = min(a[i] - i for i in range(p + 1, k + 1))
    q = A_val(P, 0, p) - high
    return q if q >= k else None


def minimal_solutions_1(P: Tlde) -> SolutionSet:
    a = _coeffs(P)
    k = len(a) - 1
    holonomic = is_holonomic(P)
    singles = [p for p in range(k) if is_solution(P, multi_support([p]))]
    finite = [multi_support([p]) for p in singles]
    for p in range(k):
        for q in range(p + 1, k):
            if p in singles or q in singles:
                continue
            S = multi_support([p, q])
            if is_solution(P, S):
                finite.append(S)
    if holonomic:
        for p in range(k):
            q = q_of_p(P, p)
            if q is not None:
                finite.append(multi_support([p, q]))
        rays = []
    else:
        rays = [ShiftRay(multi_support([k]))]
    finite = [S for S in finite
              if not any(T != S and is_subset(T, S) for T in finite)]
    return SolutionSet(finite, rays)


def is_regular_1(P: Tlde) -> bool:
    a = _coeffs(P)
    k = len(a) - 1
    if any(_A_ties(a, j) > 1 for j in range(k + 1)):
        return False
    low = [A_val(P, 0, j) for j in range(k)]
    return len(set(low)) == len(low)


@dataclass(frozen=True)
class ConfigEntry:
    """One minimal solution seen combinatorially.

    ``low`` holds the exponents below the order k; ``star`` is the unique
    partner q >= k when there is one (rendered as ★).
    """

    low: tuple
    star: Optional[int] = None

    def __str__(self):
        items = [str(x) for x in self.low]
        if self.star is not None:
            items.append(f"★({self.star})")
        return "{" + ",".join(items) + "}"


def configuration(P: Tlde) -> list:
    if not is_holonomic(P):
        raise ValueError("configuration is only defined for holonomic equations")
    k = P.orders[0]
    out = []
    for (S,) in minimal_solutions_1(P).finite:
        low = tuple(x for x in S if x < k)
        high = [x for x in S if x >= k]
        out.append(ConfigEntry(low, high[0] if high else None))
    return out


@dataclass(frozen=True)
class InfinitySolutions:
    """Minimal solutions at ∞: every {-r} (r >= 1), or the single pair {0, -r}."""

    negative_ray: bool
    pair: Optional[tuple] = None

    def members(self, depth: int) -> set:
        if self.negative_ray:
            return {(-r,) for r in range(1, depth + 1)}
        if self.pair is not None and -self.pair[1] <= depth:
            return {self.pair}
        return set()


def infinity_solutions(P: Tlde) -> InfinitySolutions:
    a = _coeffs(P)
    slopes = [x - i for i, x in enumerate(a)]
    top = max(slopes)
    if slopes.count(top) >= 2:
        return InfinitySolutions(True)
    r = top - a[0]
    return InfinitySolutions(False, (0, -r) if r >= 1 else None)
