"""Command-line front end: ``tropdiff <subcommand> ...``.

Exit codes: 0 success, 1 verify mismatch, 2 bad input, 3 resource limit hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .core import Tlde, TldeSystem
from .generators import (GenerationFailed, LowerBoundPlan, construct_lower, construct_n2,
                         leading_upper, naive_upper_bound, random_system, sharp_bound_n2)
from .inversions import (InversionBudgetExceeded, PermFamily, count_inversions,
                         max_inversions)
from .multi import is_regular_n, minimal_solutions
from .oracle import OracleBudgetExceeded, auto_box, oracle_minimal
from .single import ShiftRay, SolutionSet, infinity_solutions, is_regular_1
from .systems import SearchBudgetExceeded, is_generic, is_regular_system, solve_system

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

RESOURCE_ERRORS = (SearchBudgetExceeded, OracleBudgetExceeded, InversionBudgetExceeded,
                   GenerationFailed)


class InputError(ValueError):
    pass


# -- instance files -----------------------------------------------------------------

@dataclass(frozen=True)
class InstanceFile:
    unknowns: int
    orders: tuple
    equations: tuple  # equations[l][j][i] = a_{i,j,l}

    def to_system(self) -> TldeSystem:
        return TldeSystem(tuple(Tlde(eq) for eq in self.equations))

    @classmethod
    def from_system(cls, sigma: TldeSystem) -> "InstanceFile":
        return cls(sigma.n, tuple(sigma.orders), tuple(P.coeffs for P in sigma.eqs))


FIELDS = ("unknowns", "orders", "equations")


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"field {where}: expected an integer, got {json.dumps(x)}")
    return x


def parse_instance(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    extra = sorted(set(data) - set(FIELDS))
    if extra:
        raise InputError(f"unknown field(s): {', '.join(extra)}")
    missing = [f for f in FIELDS if f not in data]
    if missing:
        raise InputError(f"missing field(s): {', '.join(missing)}")
    n = _int(data["unknowns"], "unknowns")
    if n < 1:
        raise InputError("field unknowns: must be >= 1")
    orders = data["orders"]
    if not isinstance(orders, list) or len(orders) != n:
        raise InputError(f"field orders: expected a list of {n} integers")
    orders = tuple(_int(k, f"orders[{j}]") for j, k in enumerate(orders))
    for j, k in enumerate(orders):
        if k < 1:
            raise InputError(f"field orders[{j}]: must be >= 1, got {k}")
    eqs = data["equations"]
    if not isinstance(eqs, list) or not eqs:
        raise InputError("field equations: expected a nonempty list")
    out = []
    for l, eq in enumerate(eqs):
        if not isinstance(eq, list) or len(eq) != n:
            raise InputError(f"field equations[{l}]: expected {n} coefficient lists")
        blocks = []
        for j, block in enumerate(eq):
            if not isinstance(block, list) or len(block) != orders[j] + 1:
                raise InputError(
                    f"field equations[{l}][{j}]: expected {orders[j] + 1} coefficients")
            blocks.append(tuple(_int(a, f"equations[{l}][{j}][{i}]")
                                for i, a in enumerate(block)))
        out.append(tuple(blocks))
    return InstanceFile(n, orders, tuple(out))


def emit_instance(inst: InstanceFile) -> str:
    return json.dumps({"unknowns": inst.unknowns, "orders": list(inst.orders),
                       "equations": [[list(b) for b in eq] for eq in inst.equations]})


# -- solution sets ----------------------------------------------------------------------

def solution_set_to_json(sol: SolutionSet) -> dict:
    return {"finite": [[list(p) for p in S] for S in sol.finite],
            "rays": [{"base": [list(p) for p in r.base]} for r in sol.rays]}


def solution_set_from_json(data: dict) -> SolutionSet:
    finite = [tuple(tuple(p) for p in S) for S in data["finite"]]
    rays = [ShiftRay(tuple(tuple(p) for p in r["base"])) for r in data["rays"]]
    return SolutionSet(finite, rays)


def pretty_support(S) -> str:
    n = len(S)
    terms = []
    for j, part in enumerate(S):
        name = "t" if n == 1 else f"t{j + 1}"
        terms += [f"{name}^{x}" for x in part]
    return " + ".join(terms) if terms else "0"


def pretty_solution_set(sol: SolutionSet) -> str:
    finite = [pretty_support(S) for S in sol.finite]
    rays = [f"t^i · ({pretty_support(r.base)})" for r in sol.rays]
    return (f"finite: {json.dumps(finite, ensure_ascii=False)}\n"
            f"rays: {json.dumps(rays, ensure_ascii=False)}")


# -- subcommands --------------------------------------------------------------------------

def _load(args) -> TldeSystem:
    if not args.input:
        raise InputError("--input FILE is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from None
    try:
        return parse_instance(text).to_system()
    except (ValueError, TypeError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e)) from None


def _solve(sigma: TldeSystem, jobs: int = 1) -> SolutionSet:
    if sigma.m == 1:
        return minimal_solutions(sigma.eqs[0])
    return solve_system(sigma, jobs=jobs)


def _emit(args, payload, pretty_text=None):
    if args.format == "json" or pretty_text is None:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(pretty_text)


def cmd_classify(args):
    sigma = _load(args)
    sol = _solve(sigma, args.jobs)
    if sigma.m == 1:
        P = sigma.eqs[0]
        regular = is_regular_1(P) if P.n == 1 else is_regular_n(P)
    else:
        regular = is_regular_system(sigma)
    generic = is_generic(sigma) if sigma.m == sigma.n else None
    out = {"holonomic": sol.holonomic, "regular": regular, "generic": generic}
    text = "\n".join(f"{k}={json.dumps(v)}" for k, v in out.items())
    _emit(args, out, text)


def cmd_solve(args):
    sol = _solve(_load(args), args.jobs)
    _emit(args, solution_set_to_json(sol), pretty_solution_set(sol))


def cmd_oracle(args):
    sigma = _load(args)
    found = oracle_minimal(sigma, auto_box(sigma, args.bound))
    out = {"bound": auto_box(sigma, args.bound).Q[0], "minimal": [[list(p) for p in S] for S in found]}
    _emit(args, out, "\n".join(pretty_support(S) for S in found))


def cmd_infinity(args):
    sigma = _load(args)
    if sigma.m != 1 or sigma.n != 1:
        raise InputError("infinity needs a single equation in one unknown")
    inf = infinity_solutions(sigma.eqs[0])
    out = {"negative_ray": inf.negative_ray, "pair": list(inf.pair) if inf.pair else None}
    text = "{-r} for every r >= 1" if inf.negative_ray else (
        f"{{{inf.pair[0]},{inf.pair[1]}}}" if inf.pair else "none")
    _emit(args, out, text)


def _int_list(text, what):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None


def cmd_generate(args):
    if args.kind == "construction-n2":
        sigma = construct_n2(args.ku, args.kv, base=args.base, step=args.step, seed=args.seed)
    elif args.kind == "lower":
        orders = _int_list(args.orders or "", "--orders")
        family = _int_list(args.family or "", "--family")
        plan = LowerBoundPlan(len(orders), orders, family)
        sigma = construct_lower(plan, base=args.base, step=args.step, seed=args.seed)
    else:
        orders = _int_list(args.orders or "", "--orders")
        lo, hi = _int_list(args.range, "--range")
        sigma = random_system(len(orders), orders, (lo, hi), args.seed)
    print(emit_instance(InstanceFile.from_system(sigma)))


def cmd_bounds(args):
    orders = _int_list(args.orders or "", "--orders")
    if not orders or any(k < 1 for k in orders):
        raise InputError("--orders: need positive integers")
    lead = leading_upper(len(orders), orders)
    out = {"naive": naive_upper_bound(orders),
           "sharp_n2": sharp_bound_n2(*orders) if len(orders) == 2 else None,
           "leading": str(lead.value), "plus_lower_order": lead.plus_lower_order}
    _emit(args, out, "\n".join(f"{k}={v}" for k, v in out.items()))


def cmd_inversions(args):
    if args.action == "count":
        if not args.perms:
            raise InputError("--perms is required, e.g. '1,2,3;3,2,1'")
        perms = [_int_list(w, "--perms") for w in args.perms.split(";")]
        F = PermFamily(len(perms[0]), tuple(perms))
        out = {"count": count_inversions(F)}
    else:
        out = {"max": max_inversions(args.n, args.r)}
    _emit(args, out, str(next(iter(out.values()))))


def cmd_verify(args):
    sigma = _load(args)
    box = auto_box(sigma, args.bound)
    Q = box.Q[0]
    sol = _solve(sigma, args.jobs)
    structural = {S for S in sol.members_up_to(Q)}
    brute = set(oracle_minimal(sigma, box))
    if structural == brute:
        print("MATCH")
        return EXIT_OK
    print("MISMATCH")
    for S in sorted(structural - brute):
        print(f"  solver only: {pretty_support(S)}")
    for S in sorted(brute - structural):
        print(f"  oracle only: {pretty_support(S)}")
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="instance file (JSON)")
    common.add_argument("--format", choices=("json", "pretty"), default="pretty")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for solve")
    common.add_argument("--bound", type=int, default=None, help="exponent box for the oracle")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="tropdiff",
                                description="Minimal solutions of tropical linear differential equations")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, hlp in [
        ("classify", cmd_classify, "holonomic / regular / generic flags"),
        ("solve", cmd_solve, "all minimal solutions"),
        ("oracle", cmd_oracle, "brute-force minimal solutions in a box"),
        ("infinity", cmd_infinity, "solutions at infinity (one unknown)"),
        ("verify", cmd_verify, "compare the solver with the oracle"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.set_defaults(fn=fn)

    g = sub.add_parser("generate", parents=[common], help="emit an instance file")
    g.add_argument("kind", choices=("construction-n2", "lower", "random"))
    g.add_argument("--ku", type=int, default=1)
    g.add_argument("--kv", type=int, default=1)
    g.add_argument("--orders", help="comma-separated orders, e.g. 1,1,1")
    g.add_argument("--family", default="0", help="comma-separated 0-based family for 'lower'")
    g.add_argument("--range", default="-6,6", help="coefficient range lo,hi for 'random'")
    g.add_argument("--base", type=int, default=0)
    g.add_argument("--step", type=int, default=2)
    g.set_defaults(fn=cmd_generate)

    b = sub.add_parser("bounds", parents=[common], help="counting bounds for given orders")
    b.add_argument("--orders", required=True)
    b.set_defaults(fn=cmd_bounds)

    inv = sub.add_parser("inversions", parents=[common], help="inversions of permutation families")
    inv.add_argument("action", choices=("count", "max"))
    inv.add_argument("--perms", help="permutations separated by ';', values by ','")
    inv.add_argument("--n", type=int, default=2)
    inv.add_argument("--r", type=int, default=4)
    inv.set_defaults(fn=cmd_inversions)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        rc = args.fn(args)
    except RESOURCE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if rc is None else rc


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
