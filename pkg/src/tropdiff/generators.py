"""Instance generators and counting bounds for square systems."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod

from .core import Tlde, TldeSystem
from .systems import is_generic, is_regular_system

__all__ = [
    "GenerationFailed", "LowerBoundPlan", "LeadingTerm",
    "construct_n2", "construct_lower", "expected_lower_count", "lower_configurations",
    "naive_upper_bound", "sharp_bound_n2", "leading_upper", "random_system",
    "check_n2_inequalities", "check_lower_inequalities",
]


class GenerationFailed(RuntimeError):
    """Retry budget ran out before a generic regular instance turned up."""


def _rising(start, k, step, rng, jitter):
    out = [start]
    for _ in range(k):
        out.append(out[-1] + step + rng.randint(0, jitter))
    return tuple(out)


def _falling(start, k, step, rng, jitter):
    out = [start]
    for _ in range(k):
        out.append(out[-1] - step - rng.randint(0, jitter))
    return tuple(out)


# -- the sharp 2x2 family -------------------------------------------------------------

def check_n2_inequalities(sigma: TldeSystem) -> bool:
    """The slope and offset pattern used by construct_n2 (u = unknown 0, v = 1)."""
    (u1, v1), (u2, v2) = sigma.eqs[0].coeffs, sigma.eqs[1].coeffs
    ok = all(u1[i + 1] >= u1[i] + 1 for i in range(len(u1) - 1))
    ok &= all(v1[i + 1] <= v1[i] - 1 for i in range(len(v1) - 1))
    ok &= all(u2[i + 1] <= u2[i] - 1 for i in range(len(u2) - 1))
    ok &= all(v2[i + 1] >= v2[i] + 1 for i in range(len(v2) - 1))
    return bool(ok and v1[0] < u1[0] and u2[0] < v2[0])


def construct_n2(k_u: int, k_v: int, base: int = 0, step: int = 2,
                 seed: int = 0, retries: int = 1000) -> TldeSystem:
    """A generic regular 2x2 system with the maximal number of minimal solutions.

    In equation 1 the u-block rises and the v-block falls, in equation 2 the
    other way round, and the constant terms are ordered so that v wins in
    equation 1 and u wins in equation 2.
    """
    if k_u < 1 or k_v < 1:
        raise ValueError("orders must be positive")
    if step < 2:
        raise ValueError(f"step must be >= 2, got {step}")
    rng = random.Random(seed)
    spread = step * (k_u + k_v + 2)
    for _ in range(retries):
        u1 = _rising(base + rng.randint(1, spread), k_u, step, rng, 1)
        v1 = _falling(u1[0] - rng.randint(1, spread), k_v, step, rng, 1)
        u2 = _falling(base + rng.randint(0, spread), k_u, step, rng, 1)
        v2 = _rising(u2[0] + rng.randint(1, spread), k_v, step, rng, 1)
        sigma = TldeSystem((Tlde((u1, v1)), Tlde((u2, v2))))
        if check_n2_inequalities(sigma) and is_regular_system(sigma) and is_generic(sigma):
            return sigma
    raise GenerationFailed(f"no generic regular instance after {retries} tries; raise step")


# -- the cyclic n x n family ------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundPlan:
    """Orders plus a family of unknowns (0-based) with cyclic gaps of at least 2."""

    n: int
    orders: tuple
    family: tuple

    def __post_init__(self):
        fam = tuple(sorted(self.family))
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.n < 2 or len(self.orders) != self.n:
            raise ValueError("need n >= 2 and one order per unknown")
        if any(k < 1 for k in self.orders):
            raise ValueError("orders must be positive")
        if any(not 0 <= p < self.n for p in fam) or len(set(fam)) != len(fam):
            raise ValueError(f"family must hold distinct indices in [0, {self.n})")
        for a, b in zip(fam, fam[1:] + fam[:1]):
            gap = (b - a) % self.n or self.n
            if len(fam) > 1 and gap < 2:
                raise ValueError(f"family members {a} and {b} are cyclically adjacent")

    def excluded(self) -> set:
        """The family members and their cyclic predecessors."""
        return {p for p in self.family} | {(p - 1) % self.n for p in self.family}


def expected_lower_count(plan: LowerBoundPlan) -> int:
    k = plan.orders
    out = prod(k[p] * (k[p] + 1) // 2 for p in plan.family)
    return out * prod(k[r] for r in range(plan.n) if r not in plan.excluded())


def lower_configurations(plan: LowerBoundPlan):
    """Low parts promised by the construction, one tuple of tuples each.

    A family member p gets {i1, i2} with i1 <= i2 (a single low exponent when
    they coincide), its predecessor gets nothing, every other unknown one
    exponent.
    """
    k = plan.orders
    slots = []
    for j in range(plan.n):
        if j in plan.family:
            slots.append([tuple(sorted({a, b})) for a in range(k[j]) for b in range(a, k[j])])
        elif j in plan.excluded():
            slots.append([()])
        else:
            slots.append([(i,) for i in range(k[j])])
    yield from product(*slots)


def check_lower_inequalities(sigma: TldeSystem) -> bool:
    n = sigma.n
    k = sigma.orders
    for l, P in enumerate(sigma.eqs):
        own, nxt = P.coeffs[l], P.coeffs[(l + 1) % n]
        if not all(own[i + 1] <= own[i] - 1 for i in range(len(own) - 1)):
            return False
        if not all(nxt[i + 1] >= nxt[i] + 1 for i in range(len(nxt) - 1)):
            return False
        if not own[0] < nxt[0]:
            return False
        top = nxt[k[(l + 1) % n]]
        for j in range(n):
            if j in (l, (l + 1) % n):
                continue
            if not all(a > top + k[j] for a in P.coeffs[j]):
                return False
    return True


def construct_lower(plan: LowerBoundPlan, base: int = 0, step: int = 2,
                    seed: int = 0, retries: int = 2000) -> TldeSystem:
    """Cyclic n x n system: in equation l, unknown l falls and unknown l+1 rises.

    Every other unknown is pushed far above the rising block so it never
    attains a minimum.
    """
    if step < 2:
        raise ValueError(f"step must be >= 2, got {step}")
    n, k = plan.n, plan.orders
    rng = random.Random(seed)
    spread = step * (sum(k) + 2)
    wide = spread * n * n
    for _ in range(retries):
        eqs = []
        for l in range(n):
            blocks = [None] * n
            nxt = (l + 1) % n
            own = _falling(base + rng.randint(0, wide), k[l], step, rng, 1)
            up = _rising(own[0] + rng.randint(1, wide), k[nxt], step, rng, 1)
            blocks[l], blocks[nxt] = own, up
            for j in range(n):
                if blocks[j] is None:
                    # wide jitter keeps filler slopes and offsets away from the
                    # two active blocks, which genericity needs once n >= 4
                    floor = up[-1] + k[j] + 1 + rng.randint(0, wide)
                    low_end = _rising(floor, k[j], step, rng, spread)
                    blocks[j] = tuple(reversed(low_end))
            eqs.append(Tlde(tuple(blocks)))
        sigma = TldeSystem(tuple(eqs))
        if check_lower_inequalities(sigma) and is_regular_system(sigma) and is_generic(sigma):
            return sigma
    raise GenerationFailed(f"no generic regular instance after {retries} tries; raise step")


# -- bounds --------------------------------------------------------------------------

def naive_upper_bound(orders) -> int:
    """Sum over d with |d| <= n of prod_j C(k_j + d_j - 1, d_j)."""
    orders = tuple(orders)
    n = len(orders)
    total = 0
    for d in product(range(n + 1), repeat=n):
        if sum(d) <= n:
            total += prod(comb(kj + dj - 1, dj) for kj, dj in zip(orders, d))
    return total


def sharp_bound_n2(k_u: int, k_v: int) -> int:
    s = k_u + k_v
    return s * (s + 1) // 2


@dataclass(frozen=True)
class LeadingTerm:
    value: Fraction
    plus_lower_order: bool = True

    def __str__(self):
        return f"{self.value} + lower-order terms" if self.plus_lower_order else str(self.value)


def leading_upper(n: int, orders) -> LeadingTerm:
    """2 K^n / (n n!) with K the sum of the orders."""
    K = sum(orders)
    return LeadingTerm(Fraction(2 * K**n, n * factorial(n)))


def random_system(n: int, orders, coeff_range=(-6, 6), rng_seed: int = 0,
                  retries: int = 20000) -> TldeSystem:
    """Rejection-sample a generic regular n x n system; same seed, same system."""
    orders = tuple(orders)
    if len(orders) != n:
        raise ValueError("one order per unknown")
    lo, hi = coeff_range
    if hi <= lo:
        raise ValueError(f"empty coefficient range {coeff_range}")
    rng = random.Random(rng_seed)
    for _ in range(retries):
        eqs = tuple(
            Tlde(tuple(tuple(rng.randint(lo, hi) for _ in range(k + 1)) for k in orders))
            for _ in range(n))
        sigma = TldeSystem(eqs)
        if is_regular_system(sigma) and is_generic(sigma):
            return sigma
    raise GenerationFailed(f"no generic regular sample in {retries} draws; widen coeff_range")
