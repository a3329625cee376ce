"""Systems of TLDEs: genericity, regularity and the branching solver.

The solver fixes, for every unknown j, the part L_j of the support lying
below the order k_j and whether a single high exponent q_j >= k_j is
present.  Each equation then reads min{b + q_j, c} over variable terms
and constants.  For every equation the solver picks the two terms that
attain the minimum; each pick is a set of difference constraints on the
q_j, kept as an all-pairs shortest path matrix so that infeasibility shows
up as a negative cycle the moment it appears.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Optional

from .core import (A_val, TldeSystem, Tlde, attaining_elements, is_minimal_solution,
                   is_solution, _as_system)
from .multi import is_regular_n
from .single import ShiftRay, SolutionSet, is_regular_1

__all__ = [
    "SearchBudgetExceeded", "BranchConstraint", "SolutionTypeN2",
    "is_generic", "is_regular_system", "solve_system", "is_holonomic_system",
    "classify_solution_n2", "default_budget",
]

_INF = float("inf")
ZERO = 0  # node index of the constant 0 in the constraint graph


class SearchBudgetExceeded(RuntimeError):
    """The search hit its node budget; results would be incomplete."""


def default_budget() -> int:
    return int(os.environ.get("TROPDIFF_BUDGET", "5000000"))


@dataclass(frozen=True)
class BranchConstraint:
    """x[hi] - x[lo] <= bound, over nodes 0 (the constant) and 1.. (the q_j).

    ``origin`` is (equation index, chosen term pair) or a tag like "order".
    """

    lo: int
    hi: int
    bound: int
    origin: tuple = ()

    @property
    def kind(self) -> str:
        if self.lo == ZERO:
            return "upper"
        if self.hi == ZERO:
            return "lower"
        return "difference"


# -- genericity / regularity ---------------------------------------------------

def _top_matrix(sigma: TldeSystem):
    k = sigma.orders
    return [[A_val(P, j, k[j]) for j in range(sigma.n)] for P in sigma.eqs]


def is_generic(sigma: TldeSystem) -> bool:
    sigma = _as_system(sigma)
    n = sigma.n
    if sigma.m != n:
        raise ValueError(f"genericity needs a square system, got {sigma.m}x{n}")
    M = _top_matrix(sigma)
    sums = [sum(M[l][s[l]] for l in range(n)) for s in permutations(range(n))]
    if len(set(sums)) != len(sums):
        return False
    k = sigma.orders
    # per top index j: the differences A_{k_j,j}(P_l) - A_{alpha,j1}(P_l), over j1 and alpha
    for j in range(n):
        diffs = [{M[l][j] - A_val(P, j1, alpha) for j1 in range(n) for alpha in range(k[j1])}
                 for l, P in enumerate(sigma.eqs)]
        for l1, l2 in combinations(range(n), 2):
            if diffs[l1] & diffs[l2]:
                return False
    return True


def is_regular_system(sigma: TldeSystem) -> bool:
    sigma = _as_system(sigma)
    if sigma.n == 1:
        return all(is_regular_1(P) for P in sigma.eqs)
    return all(is_regular_n(P) for P in sigma.eqs)


# -- difference constraints ------------------------------------------------------

def _fresh(num_nodes: int):
    D = [[_INF] * num_nodes for _ in range(num_nodes)]
    for v in range(num_nodes):
        D[v][v] = 0
    return D


def _add(D, lo: int, hi: int, c) -> bool:
    """Impose x[hi] - x[lo] <= c in place; False on a negative cycle."""
    if D[hi][lo] + c < 0:
        return False
    if D[lo][hi] <= c:
        return True
    N = len(D)
    col_lo = [D[a][lo] for a in range(N)]
    row_hi = D[hi]
    for a in range(N):
        via = col_lo[a] + c
        if via == _INF:
            continue
        Da = D[a]
        for b in range(N):
            w = via + row_hi[b]
            if w < Da[b]:
                Da[b] = w
    return True


def _copy(D):
    return [row[:] for row in D]


# -- reduced equations --------------------------------------------------------------

@dataclass
class _Reduced:
    """One equation after fixing the low parts.

    ``const_elems`` lists the low element read by each constant term of
    minimal value ``cmin``; ``var`` maps node -> (offset, multiplicity) for
    the cheapest terms of each high exponent.
    """

    cmin: object
    const_elems: list
    var: dict


def _reduce(P: Tlde, low, high_nodes):
    consts = []  # (value, element key)
    var_all = {}
    for j, (block, Lj) in enumerate(zip(P.coeffs, low)):
        top = Lj[-1] if Lj else -1
        for i, a in enumerate(block):
            if i <= top:
                s = next(x for x in Lj if x >= i)
                consts.append((a + s - i, (j, s)))
            elif j in high_nodes:
                var_all.setdefault(high_nodes[j], []).append(a - i)
    cmin = min((v for v, _ in consts), default=_INF)
    const_elems = [e for v, e in consts if v == cmin]
    var = {}
    for node, offs in var_all.items():
        b = min(offs)
        var[node] = (b, offs.count(b))
    return _Reduced(cmin, const_elems, var)


def _choices(red: _Reduced, eq: int = 0):
    """Candidate term pairs attaining a doubled minimum in equation ``eq``.

    Each choice is (list of BranchConstraint, covered support elements).
    """
    out = []
    nodes = sorted(red.var)
    has_const = red.cmin != _INF

    def others_geq(value_node, value_off, origin, skip=()):
        # every cheapest variable term is >= x[value_node] + value_off
        return [BranchConstraint(w, value_node, red.var[w][0] - value_off, origin)
                for w in nodes if w not in skip]

    def below_const(node, off, origin):
        return [BranchConstraint(ZERO, node, red.cmin - off, origin)] if has_const else []

    if has_const:
        ce = red.const_elems
        for e1, e2 in combinations(range(len(ce)), 2):
            origin = (eq, ("const", "const"))
            out.append((others_geq(ZERO, red.cmin, origin), {ce[e1], ce[e2]}))
        for e in range(len(ce)):
            for v in nodes:
                b = red.var[v][0]
                origin = (eq, ("const", v))
                cons = [BranchConstraint(ZERO, v, red.cmin - b, origin),
                        BranchConstraint(v, ZERO, b - red.cmin, origin)]
                cons += others_geq(ZERO, red.cmin, origin, skip=(v,))
                out.append((cons, {ce[e], ("q", v)}))
    for v in nodes:
        b, mult = red.var[v]
        if mult >= 2:
            origin = (eq, (v, v))
            cons = below_const(v, b, origin) + others_geq(v, b, origin, skip=(v,))
            out.append((cons, {("q", v)}))
    for v, w in combinations(nodes, 2):
        bv, bw = red.var[v][0], red.var[w][0]
        origin = (eq, (v, w))
        cons = [BranchConstraint(w, v, bw - bv, origin), BranchConstraint(v, w, bv - bw, origin)]
        cons += below_const(v, bv, origin) + others_geq(v, bv, origin, skip=(v, w))
        out.append((cons, {("q", v), ("q", w)}))
    return out


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"search truncated after {self.limit} nodes; raise TROPDIFF_BUDGET")


def _low_choices(k, cap):
    """Per unknown, all subsets of {0..k-1} of size <= cap."""
    return [
        [c for r in range(min(cap, kj) + 1) for c in combinations(range(kj), r)]
        for kj in k
    ]


def _cells(sigma: TldeSystem, one_high_each: bool):
    """(low parts, high unknowns) pairs worth searching."""
    n, k = sigma.n, sigma.orders
    cap = 2 * sigma.m
    lows = _low_choices(k, cap)
    highs = [tuple(range(n))] if one_high_each else [
        h for r in range(n + 1) for h in combinations(range(n), r)]
    for low in product(*lows):
        nlow = sum(len(x) for x in low)
        for H in highs:
            total = nlow + len(H)
            if total == 0 or total > cap:
                continue
            yield low, H


def _solve_cell(sigma: TldeSystem, low, H, budget: _Budget):
    """All minimal solutions with the given low parts and high unknowns.

    Returns (finite solutions, ray bases).
    """
    k = sigma.orders
    high_nodes = {j: idx + 1 for idx, j in enumerate(H)}
    node_unknown = {v: j for j, v in high_nodes.items()}
    reds = [_reduce(P, low, high_nodes) for P in sigma.eqs]
    elements = {(j, s) for j, Lj in enumerate(low) for s in Lj}
    elements |= {("q", v) for v in node_unknown}

    # every low element has to attain the minimum somewhere
    reachable = set()
    for red in reds:
        reachable.update(red.const_elems)
    if not {e for e in elements if e[0] != "q"} <= reachable:
        return [], []

    N = len(H) + 1
    D0 = _fresh(N)
    for v, j in node_unknown.items():
        _add(D0, v, ZERO, -k[j])  # q_j >= k_j
    options = [_choices(red, l) for l, red in enumerate(reds)]
    homogeneous = not any(low)
    found, bases = set(), set()

    def emit(D):
        for point in _sweep(D, N, budget):
            S = _assemble(sigma.n, low, node_unknown, point)
            if homogeneous:
                found_base = _rebase(S, k)
                if found_base is not None:
                    bases.add(found_base)
            else:
                found.add(S)

    def dfs(l, D, covered):
        budget.tick()
        if l == len(reds):
            if covered != elements:
                return
            if homogeneous:
                # normalise the common shift: some q_j sits at its order
                for v, j in node_unknown.items():
                    D2 = _copy(D)
                    if _add(D2, ZERO, v, k[j]):
                        emit(D2)
            else:
                emit(D)
            return
        for cons, cov in options[l]:
            D2 = _copy(D)
            if all(_add(D2, bc.lo, bc.hi, bc.bound) for bc in cons):
                dfs(l + 1, D2, covered | cov)

    dfs(0, D0, frozenset())
    finite = [S for S in found if is_solution(sigma, S) and is_minimal_solution(sigma, S)]
    rays = [B for B in bases if is_solution(sigma, B) and is_minimal_solution(sigma, B)]
    return finite, rays


def _sweep(D, N, budget):
    """Enumerate the integer points of a bounded difference-constraint region."""
    if N == 1:
        yield (0,)
        return
    for v in range(1, N):
        if D[ZERO][v] == _INF:
            raise SearchBudgetExceeded(
                f"unbounded exponent in a branch (node {v}); the branch is not minimal-closed")

    def rec(D, v, acc):
        if v == N:
            yield tuple([0] + acc)
            return
        lo, hi = -D[v][ZERO], D[ZERO][v]
        for x in range(int(lo), int(hi) + 1):
            budget.tick()
            D2 = _copy(D)
            if _add(D2, ZERO, v, x) and _add(D2, v, ZERO, -x):
                yield from rec(D2, v + 1, acc + [x])

    yield from rec(D, 1, [])


def _assemble(n, low, node_unknown, point):
    parts = [list(low[j]) for j in range(n)]
    for v, j in node_unknown.items():
        parts[j].append(point[v])
    return tuple(tuple(sorted(p)) for p in parts)


def _rebase(S, k) -> Optional[tuple]:
    """S itself if some nonempty part has its exponent exactly at the order."""
    if any(p and p[0] == k[j] for j, p in enumerate(S)):
        return S
    return None


def solve_system(sigma, budget: Optional[int] = None, jobs: int = 1,
                 prune: Optional[bool] = None) -> SolutionSet:
    """Enumerate all minimal solutions: the finite part and the shift rays.

    ``prune`` restricts the search to one high exponent per unknown, which is
    valid for generic regular square systems; by default it is switched on
    exactly for those.
    """
    sigma = _as_system(sigma)
    if prune is None:
        prune = sigma.m == sigma.n and is_regular_system(sigma) and is_generic(sigma)
    cells = list(_cells(sigma, prune))
    limit = default_budget() if budget is None else budget
    finite, rays = set(), set()
    if jobs > 1 and len(cells) > 1:
        chunks = [cells[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_solve_chunk, [(sigma, c, limit) for c in chunks]))
    else:
        results = [_solve_chunk((sigma, cells, limit))]
    for fin, ray in results:
        finite.update(fin)
        rays.update(ray)
    return SolutionSet(list(finite), [ShiftRay(B) for B in rays])


def _solve_chunk(args):
    sigma, cells, limit = args
    budget = _Budget(limit)
    finite, rays = set(), set()
    for low, H in cells:
        fin, ray = _solve_cell(sigma, low, H, budget)
        finite.update(fin)
        rays.update(ray)
    return finite, rays


def is_holonomic_system(sigma, budget: Optional[int] = None) -> bool:
    return not solve_system(sigma, budget=budget).rays


# -- n = 2 diagnostics --------------------------------------------------------------

@dataclass(frozen=True)
class SolutionTypeN2:
    """Shape of a minimal solution of a generic regular 2x2 system.

    ``attaining[l]`` is (S_{u,l}, S_{v,l}).  ``A`` is
    A_{u1} - A_{u2} - A_{v1} + A_{v2}; ``A_prime`` maps each low exponent
    (side, i) to A_{i,side,2} - A_{i,side,1} - A_{other,2} + A_{other,1}.
    ``rigidity`` names the matching row of the sign table (e.g. "43") and
    ``rigidity_ok`` says whether the signs agree with it.
    """

    label: str
    attaining: tuple
    A: int
    A_prime: dict
    rigidity: Optional[str] = None
    rigidity_ok: Optional[bool] = None


def _sign_ok(A, Ap, row):
    table = {
        "43": (A >= 0 and Ap >= 0),
        "44": (A <= 0 and Ap + A >= 0),
        "45": (A <= 0 and Ap <= 0),
        "46": (A >= 0 and Ap + A <= 0),
        "47": (A >= 0 and Ap + A >= 0),
        "48": (A <= 0 and Ap >= 0),
        "49": (A <= 0 and Ap + A <= 0),
        "50": (A >= 0 and Ap <= 0),
    }
    return table[row]


def _rigidity_row(label, side_sets, i, hi, other_hi):
    """Match the attaining pattern of the low exponent i against the table.

    ``side_sets[l]`` is (S_{side,l}, S_{other,l}) for l = 0, 1.
    """
    (s1, o1), (s2, o2) = side_sets
    if label in ("u", "v"):
        if s1 == {i} and o1 == {other_hi} and o2 == {other_hi} and s2 == {hi}:
            return "43"
        if s1 == {i, hi} and not o1 and s2 == {hi} and o2 == {other_hi}:
            return "44"
        if s1 == {hi} and o1 == {other_hi} and o2 == {other_hi} and s2 == {i}:
            return "45"
        if s1 == {hi} and o1 == {other_hi} and s2 == {i, hi} and not o2:
            return "46"
        return None
    if s1 == {i} and len(o1) == 1:
        return "47"
    if i in s1 and len(s1) == 2 and not o1:
        return "48"
    if s2 == {i} and len(o2) == 1:
        return "49"
    if i in s2 and len(s2) == 2 and not o2:
        return "50"
    return None


def classify_solution_n2(sigma: TldeSystem, S) -> SolutionTypeN2:
    sigma = _as_system(sigma)
    if sigma.n != 2 or sigma.m != 2:
        raise ValueError("classify_solution_n2 needs a 2x2 system")
    S = tuple(tuple(sorted(p)) for p in S)
    if not is_minimal_solution(sigma, S):
        raise ValueError(f"{S} is not a minimal solution")
    k = sigma.orders
    att = tuple(attaining_elements(P, S) for P in sigma.eqs)
    low = [[x for x in S[j] if x < k[j]] for j in range(2)]
    high = [[x for x in S[j] if x >= k[j]] for j in range(2)]
    if len(high[0]) != 1 or len(high[1]) != 1:
        raise ValueError(f"{S} has no single high exponent per unknown")
    nu, nv = len(low[0]), len(low[1])
    if nu == 1 and nv == 1:
        label = "uv"
    elif nv == 0 and nu == 2:
        label = "uu"
    elif nu == 0 and nv == 2:
        label = "vv"
    elif nv == 0 and nu == 1:
        i = low[0][0]
        label = "uu" if all(i in att[l][0] for l in range(2)) else "u"
    elif nu == 0 and nv == 1:
        p = low[1][0]
        label = "vv" if all(p in att[l][1] for l in range(2)) else "v"
    else:
        raise ValueError(f"{S} matches none of the five n=2 shapes")

    M = _top_matrix(sigma)
    A = M[0][0] - M[1][0] - M[0][1] + M[1][1]
    A_prime = {}
    for side in range(2):
        other = 1 - side
        for i in low[side]:
            A_prime[(side, i)] = (A_val(sigma.eqs[1], side, i) - A_val(sigma.eqs[0], side, i)
                                  - M[1][other] + M[0][other])

    rigidity = rigidity_ok = None
    if label in ("u", "v", "uv", "uu", "vv") and (low[0] or low[1]):
        side = 0 if low[0] else 1
        if label in ("v", "vv"):
            side = 1
        i = low[side][0]
        sides = tuple((set(att[l][side]), set(att[l][1 - side])) for l in range(2))
        row = _rigidity_row(label, sides, i, high[side][0], high[1 - side][0])
        if row is not None:
            sgn = A if side == 0 else -A
            rigidity = row
            rigidity_ok = _sign_ok(sgn, A_prime[(side, i)], row)
    return SolutionTypeN2(label, att, A, A_prime, rigidity, rigidity_ok)
