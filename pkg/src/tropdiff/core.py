"""Min-plus arithmetic over Z ∪ {∞}, supports, valuations and TLDE evaluation.

A support tuple (a ``MultiSupport``) is stored as a tuple of ``n`` sorted,
duplicate-free tuples of nonnegative integers.  Unknowns are indexed from 0.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations
from typing import Iterable, Sequence, Union

__all__ = [
    "INF", "ExtInt", "Support", "MultiSupport",
    "tadd", "tmin", "is_finite",
    "vanishes", "vanishes_weakly", "argmins",
    "support", "multi_support", "monomial", "zero_support", "is_zero",
    "is_subset", "union", "shift", "size", "max_exponent",
    "val", "Tlde", "TldeSystem",
    "term_values", "trop_eval", "is_solution", "A_val", "attaining_elements",
    "proper_subsets", "is_minimal_solution",
]

# Finite values must stay inside the signed 64-bit range; exceeding it is an error.
INT_LIMIT = 2**63 - 1


@total_ordering
class _Infinity:
    """The absorbing element ∞ of the tropical semiring (greater than every int)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "∞"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropdiff.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtInt = Union[int, _Infinity]
Support = tuple  # tuple[int, ...], strictly increasing
MultiSupport = tuple  # tuple[Support, ...]


def is_finite(x: ExtInt) -> bool:
    return x is not INF


def _check_range(x: int) -> int:
    if not -INT_LIMIT <= x <= INT_LIMIT:
        raise OverflowError(f"tropical value {x} leaves the 64-bit range")
    return x


def tadd(a: ExtInt, b: ExtInt) -> ExtInt:
    """Tropical product a ⊙ b (ordinary addition, ∞ absorbing)."""
    if a is INF or b is INF:
        return INF
    return _check_range(a + b)


def tmin(*xs: ExtInt) -> ExtInt:
    """Tropical sum ⊕ (minimum, ∞ is the identity)."""
    best = INF
    for x in xs:
        if x < best:
            best = x
    return best


def argmins(terms: Sequence[ExtInt]) -> list[int]:
    """Positions of the finite minimum; empty when every term is ∞."""
    best = tmin(*terms)
    if best is INF:
        return []
    return [i for i, t in enumerate(terms) if t == best]


def vanishes(terms: Sequence[ExtInt]) -> bool:
    """True when the minimum is ∞ or is attained at two or more positions."""
    if len(terms) == 0:
        raise ValueError("vanishes() needs at least one term")
    best = tmin(*terms)
    if best is INF:
        return True
    return sum(1 for t in terms if t == best) >= 2


def vanishes_weakly(terms: Sequence[ExtInt]) -> bool:
    """True when some finite value occurs at two or more positions."""
    if len(terms) == 0:
        raise ValueError("vanishes_weakly() needs at least one term")
    finite = [t for t in terms if t is not INF]
    return len(set(finite)) < len(finite)


# -- supports ---------------------------------------------------------------

def support(elems: Iterable[int]) -> Support:
    out = tuple(sorted(set(elems)))
    if out and out[0] < 0:
        raise ValueError(f"support elements must be nonnegative, got {out[0]}")
    return out


def multi_support(*parts: Iterable[int]) -> MultiSupport:
    return tuple(support(p) for p in parts)


def zero_support(n: int) -> MultiSupport:
    return ((),) * n


def monomial(n: int, j: int, alpha: int) -> MultiSupport:
    """The support tuple t_j^alpha (unknown ``j`` holds ``{alpha}``)."""
    parts = [()] * n
    parts[j] = (alpha,)
    return tuple(parts)


def is_zero(S: MultiSupport) -> bool:
    return all(len(p) == 0 for p in S)


def is_subset(S: MultiSupport, T: MultiSupport) -> bool:
    """Componentwise inclusion S ⊆ T."""
    return all(set(s).issubset(t) for s, t in zip(S, T))


def union(S: MultiSupport, T: MultiSupport) -> MultiSupport:
    return tuple(support(set(s) | set(t)) for s, t in zip(S, T))


def shift(S: MultiSupport, i: int) -> MultiSupport:
    """Multiply by t^i: add ``i`` to every exponent of every part."""
    return tuple(tuple(x + i for x in p) for p in S)


def size(S: MultiSupport) -> int:
    return sum(len(p) for p in S)


def max_exponent(S: MultiSupport) -> int:
    return max((p[-1] for p in S if p), default=-1)


def proper_subsets(S: MultiSupport):
    """All nonzero proper sub-tuples of S."""
    flat = [(j, x) for j, p in enumerate(S) for x in p]
    n = len(S)
    for r in range(1, len(flat)):
        for pick in combinations(flat, r):
            parts = [[] for _ in range(n)]
            for j, x in pick:
                parts[j].append(x)
            yield tuple(tuple(p) for p in parts)


def val(S: Support, i: int) -> ExtInt:
    """min{s - i : s in S, s >= i}, or ∞ when no element of S reaches i."""
    pos = bisect_left(S, i)
    if pos == len(S):
        return INF
    return S[pos] - i


# -- equations ----------------------------------------------------------------

@dataclass(frozen=True)
class Tlde:
    """A tropical linear differential equation min_{j,i} {a[j][i] + u_j^(i)}.

    ``coeffs[j]`` is the coefficient vector (a_{0,j}, ..., a_{k_j,j}) of
    unknown ``j``; its order is ``k_j = len(coeffs[j]) - 1 >= 1``.
    """

    coeffs: tuple

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.coeffs)
        if not blocks:
            raise ValueError("a TLDE needs at least one unknown")
        for j, b in enumerate(blocks):
            if len(b) < 2:
                raise ValueError(f"unknown {j}: order must be positive (got {len(b) - 1})")
            for a in b:
                if isinstance(a, bool) or not isinstance(a, int):
                    raise TypeError(f"unknown {j}: coefficients must be integers, got {a!r}")
                _check_range(a)
        object.__setattr__(self, "coeffs", blocks)

    @classmethod
    def single(cls, a: Sequence[int]) -> "Tlde":
        return cls((tuple(a),))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def orders(self) -> tuple:
        return tuple(len(b) - 1 for b in self.coeffs)

    def block(self, j: int) -> "Tlde":
        """The single-unknown equation P_j formed by the coefficients of unknown j."""
        return Tlde((self.coeffs[j],))


@dataclass(frozen=True)
class TldeSystem:
    eqs: tuple

    def __post_init__(self):
        eqs = tuple(self.eqs)
        if not eqs:
            raise ValueError("a system needs at least one equation")
        orders = eqs[0].orders
        for l, P in enumerate(eqs):
            if P.orders != orders:
                raise ValueError(
                    f"equation {l} has orders {P.orders}, expected {orders}")
        object.__setattr__(self, "eqs", eqs)

    @property
    def n(self) -> int:
        return self.eqs[0].n

    @property
    def m(self) -> int:
        return len(self.eqs)

    @property
    def orders(self) -> tuple:
        return self.eqs[0].orders

    def __iter__(self):
        return iter(self.eqs)

    def __len__(self):
        return len(self.eqs)


def _as_system(P) -> TldeSystem:
    if isinstance(P, TldeSystem):
        return P
    if isinstance(P, Tlde):
        return TldeSystem((P,))
    return TldeSystem(tuple(P))


def _check_arity(P: Tlde, S: MultiSupport):
    if len(S) != P.n:
        raise ValueError(f"support tuple has {len(S)} parts, equation has {P.n} unknowns")


def term_values(P: Tlde, S: MultiSupport) -> list:
    """The terms a_{i,j} + val(S_j, i), in (j, i) order."""
    _check_arity(P, S)
    out = []
    for block, Sj in zip(P.coeffs, S):
        for i, a in enumerate(block):
            v = val(Sj, i)
            out.append(INF if v is INF else a + v)
    return out


def trop_eval(P: Tlde, S: MultiSupport) -> ExtInt:
    return tmin(*term_values(P, S))


def is_solution(P, S: MultiSupport) -> bool:
    """S solves every equation of P (a Tlde or a TldeSystem)."""
    return all(vanishes(term_values(Q, S)) for Q in _as_system(P))


def is_minimal_solution(P, S: MultiSupport) -> bool:
    if is_zero(S) or not is_solution(P, S):
        return False
    return not any(is_solution(P, T) for T in proper_subsets(S))


def A_val(P: Tlde, j: int, alpha: int) -> int:
    """trop_P(t_j^alpha) = min_{0<=i<=min(alpha,k_j)} a_{i,j} + alpha - i."""
    if not 0 <= j < P.n:
        raise IndexError(f"unknown index {j} out of range for n={P.n}")
    block = P.coeffs[j]
    return min(block[i] + alpha - i for i in range(min(alpha, len(block) - 1) + 1))


def attaining_elements(P: Tlde, S: MultiSupport) -> tuple:
    """Per unknown, the elements of S_j whose terms attain trop_P(S)."""
    _check_arity(P, S)
    best = trop_eval(P, S)
    out = [set() for _ in range(P.n)]
    if best is INF:
        return tuple(frozenset() for _ in out)
    for j, (block, Sj) in enumerate(zip(P.coeffs, S)):
        for i, a in enumerate(block):
            pos = bisect_left(Sj, i)
            if pos < len(Sj) and a + Sj[pos] - i == best:
                out[j].add(Sj[pos])
    return tuple(frozenset(s) for s in out)
