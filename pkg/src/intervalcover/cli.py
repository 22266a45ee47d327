"""Command line interface: generate, solve, verify, ratio.

Exit codes: 0 feasible / success, 2 INFEASIBLE, 1 error (bad input,
budget refusal, or an infeasible approximate answer in ``ratio``).
``solve`` prints one machine-readable JSON line with the cost and, in
exact mode, an optimality tag. Costs are exact integers; ratios print
as exact fractions plus a decimal rendering.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import (
    BudgetExceeded,
    INFEASIBLE,
    Instance,
    PartialSolution,
    covers,
    is_feasible,
    job_profile,
    multiset_cost,
    multiset_profile,
    verify_partial,
    verify_prize,
)
from .files import (
    ParseError,
    SolutionDoc,
    emit_instance,
    emit_lspc,
    emit_solution,
    parse_instance,
    parse_lspc,
    parse_solution,
    solution_doc_for,
)
from .fullcover import full_cover
from .generate import (
    PROFILES,
    generate,
    generate_lspc,
    generate_single_mountain,
    generate_uniform,
)
from .lspc import LspcInstance, solve_lspc, verify_lspc
from .oracle import Budget, oracle_lspc, oracle_partial, oracle_prize
from .pipeline import solve_partial, solve_prize


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit_line(**fields) -> None:
    print(json.dumps(fields, sort_keys=True))


def _cmd_generate(args) -> int:
    params = {}
    if args.profile == "lspc-random":
        params = dict(timeslots=args.timeslots, max_demand=args.max_demand,
                      shorts=args.shorts, longs=args.longs, max_c=args.max_c)
        if args.k is not None:
            params["k"] = args.k
        inst = generate_lspc(args.seed, **params)
        text = emit_lspc(inst)
    else:
        params = dict(jobs=args.jobs, resources=args.resources, timeslots=args.timeslots,
                      max_w=args.max_w, max_c=args.max_c)
        if args.k is not None:
            params["k"] = args.k
        if args.profile == "uniform-random":
            params["penalties"] = args.penalties
            if args.penalties:
                params.pop("k", None)
        elif args.penalties:
            raise ParseError("", "--penalties is only supported with uniform-random")
        if args.profile == "mountain-range":
            params["mountains"] = args.mountains
        inst = generate(args.profile, args.seed, **params)
        text = emit_instance(inst)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _solve_dispatch(problem: str, algorithm: str, inst) -> tuple:
    """Returns (cost, solution or None, optimal flag)."""
    if problem == "partial":
        if inst.k is None:
            raise ParseError("k", "partial coverage needs the partiality parameter")
        if algorithm == "exact":
            res = oracle_partial(inst)
            return res.cost, res.solution, True
        res = solve_partial(inst)
        return res.cost, res.solution, False
    if problem == "prize":
        if any(j.penalty is None for j in inst.jobs):
            raise ParseError("jobs", "prize collecting needs a penalty on every job")
        if algorithm == "exact":
            res = oracle_prize(inst)
            return res.total, res.solution, True
        res = solve_prize(inst)
        return res.total, res.solution, True  # the reduction is cost-exact
    if problem == "lspc":
        if algorithm == "exact":
            res = oracle_lspc(inst)
            return res.cost, res.solution, True
        res = solve_lspc(inst)
        return res.cost, res.solution, False
    # fullcover: exact either way (beta = 1)
    demand = job_profile(inst.jobs, inst.T)
    res = full_cover(demand, inst.resources)
    sol = PartialSolution(res.counts, frozenset(j.id for j in inst.jobs)) if res.feasible else None
    return res.cost, sol, True


def _self_check(problem: str, inst, solution, cost: int) -> None:
    if problem == "partial":
        report = verify_partial(inst, solution)
        ok = report.feasible and report.cost == cost
    elif problem == "prize":
        report = verify_prize(inst, solution)
        ok = report.feasible and report.total == cost
    elif problem == "lspc":
        report = verify_lspc(inst, solution)
        ok = report.feasible and report.cost == cost
    else:
        have = multiset_profile(solution.counts, inst.resources, inst.T)
        ok = covers(have, job_profile(inst.jobs, inst.T)) \
            and multiset_cost(solution.counts, inst.resources) == cost
    if not ok:
        raise RuntimeError(f"internal error: produced {problem} solution failed its own verifier")


def _cmd_solve(args) -> int:
    text = _read(args.input)
    inst = parse_lspc(text) if args.problem == "lspc" else parse_instance(text)
    cost, solution, optimal = _solve_dispatch(args.problem, args.algorithm, inst)
    if not is_feasible(cost):
        _emit_line(status="infeasible", problem=args.problem)
        return 2
    _self_check(args.problem, inst, solution, cost)
    if args.output:
        doc = solution_doc_for(args.problem, solution, cost)
        _write(args.output, emit_solution(doc))
    fields = {"status": "feasible", "problem": args.problem, "cost": cost}
    if optimal:
        fields["optimal"] = True
    _emit_line(**fields)
    return 0


def _verify_doc(inst, doc: SolutionDoc):
    """Returns (feasible, detail dict)."""
    if doc.problem == "lspc":
        if not isinstance(inst, LspcInstance):
            raise ParseError("", "lspc solutions verify against lspc instances")
        from .lspc import LspcSolution

        sol = LspcSolution(doc.counts, frozenset(doc.short_picks), doc.coverage)
        report = verify_lspc(inst, sol)
        detail = {"feasible": report.feasible, "cost_recomputed": report.cost
                  if is_feasible(report.cost) else None}
        if report.violated_clause:
            detail["violated_clause"] = report.violated_clause
            if report.violated_slot:
                detail["violated_slot"] = report.violated_slot
        ok = report.feasible and report.cost == doc.cost
        if report.feasible and report.cost != doc.cost:
            detail["reason"] = f"reported cost {doc.cost} != recomputed {report.cost}"
        return ok, detail
    sol = PartialSolution(doc.counts, frozenset(doc.covered))
    if doc.problem == "partial":
        report = verify_partial(inst, sol)
        recomputed = report.cost
    elif doc.problem == "prize":
        report = verify_prize(inst, sol)
        recomputed = report.total
    else:
        try:
            have = multiset_profile(sol.counts, inst.resources, inst.T)
        except ValueError as exc:
            return False, {"feasible": False, "reason": str(exc)}
        need = job_profile(inst.jobs, inst.T)
        feasible = covers(have, need) and set(doc.covered) == {j.id for j in inst.jobs}
        recomputed = multiset_cost(sol.counts, inst.resources)
        ok = feasible and recomputed == doc.cost
        detail = {"feasible": feasible, "cost_recomputed": recomputed}
        if feasible and recomputed != doc.cost:
            detail["reason"] = f"reported cost {doc.cost} != recomputed {recomputed}"
        return ok, detail
    detail = {"feasible": report.feasible,
              "cost_recomputed": recomputed if is_feasible(recomputed) else None}
    if report.reason:
        detail["reason"] = report.reason
    if report.violated_slot:
        detail["violated_slot"] = report.violated_slot
    ok = report.feasible and recomputed == doc.cost
    if report.feasible and recomputed != doc.cost:
        detail["reason"] = f"reported cost {doc.cost} != recomputed {recomputed}"
    return ok, detail


def _cmd_verify(args) -> int:
    doc = parse_solution(_read(args.solution))
    text = _read(args.input)
    inst = parse_lspc(text) if doc.problem == "lspc" else parse_instance(text)
    ok, detail = _verify_doc(inst, doc)
    _emit_line(problem=doc.problem, **detail)
    return 0 if ok else 2


def _parse_seed_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit() or int(hi) < int(lo):
        raise ParseError("", f"--seeds expects 'a..b' with a <= b, got {text!r}")
    return range(int(lo), int(hi) + 1)


def _ratio_instance(problem: str, profile: str, seed: int):
    if problem == "lspc":
        return generate_lspc(seed)
    if problem == "prize":
        return generate_uniform(seed, penalties=True)
    if profile == "single-mountain":
        return generate_single_mountain(seed)
    return generate(profile, seed)


def _cmd_ratio(args) -> int:
    budget = Budget.from_env()
    worst: Fraction | None = None
    failures = 0
    for seed in _parse_seed_range(args.seeds):
        inst = _ratio_instance(args.problem, args.profile, seed)
        bound = None
        if args.problem == "partial":
            approx = solve_partial(inst)
            exact = oracle_partial(inst, budget)
            approx_cost, approx_sol, exact_cost = approx.cost, approx.solution, exact.cost
            bound = approx.bound_factor
            feasible_ok = approx_sol is None or verify_partial(inst, approx_sol).feasible
        elif args.problem == "prize":
            approx = solve_prize(inst)
            exact = oracle_prize(inst, budget)
            approx_cost, approx_sol, exact_cost = approx.total, approx.solution, exact.total
            feasible_ok = approx_sol is None or verify_prize(inst, approx_sol).feasible
        else:
            approx = solve_lspc(inst)
            exact = oracle_lspc(inst, budget)
            approx_cost, approx_sol, exact_cost = approx.cost, approx.solution, exact.cost
            feasible_ok = approx_sol is None or verify_lspc(inst, approx_sol).feasible
        if not feasible_ok or (is_feasible(exact_cost) and not is_feasible(approx_cost)):
            failures += 1
            print(f"{seed}\tapprox=INFEASIBLE-OR-INVALID\texact={exact_cost}")
            continue
        if not is_feasible(exact_cost):
            print(f"{seed}\tapprox=INFEASIBLE\texact=INFEASIBLE\tratio=-")
            continue
        if exact_cost == 0:
            ratio = Fraction(0, 1) if approx_cost == 0 else None
            shown = "0/0" if approx_cost == 0 else f"{approx_cost}/0"
        else:
            ratio = Fraction(approx_cost, exact_cost)
            shown = f"{ratio.numerator}/{ratio.denominator}"
        if ratio is not None and (worst is None or ratio > worst):
            worst = ratio
        dec = f"{float(ratio):.6f}" if ratio is not None else "inf"
        row = f"{seed}\tapprox={approx_cost}\texact={exact_cost}\tratio={shown}\t({dec})"
        if bound is not None:
            row += f"\tbound={bound}"
        print(row)
        if ratio is None:
            failures += 1  # approximate cost above an exact optimum of zero
    if worst is None:
        print("max-ratio -")
    else:
        print(f"max-ratio {worst.numerator}/{worst.denominator} ({float(worst):.6f})")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalcover",
        description="Minimum-cost interval resource allocation: partial and "
                    "prize-collecting coverage solvers with exact oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a deterministic random instance")
    gen.add_argument("--profile", choices=PROFILES, default="uniform-random")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--output", help="path; stdout when omitted")
    gen.add_argument("--jobs", type=int, default=6)
    gen.add_argument("--resources", type=int, default=5)
    gen.add_argument("--timeslots", type=int, default=10)
    gen.add_argument("--mountains", type=int, default=2)
    gen.add_argument("--max-w", type=int, default=3)
    gen.add_argument("--max-c", type=int, default=10)
    gen.add_argument("--max-demand", type=int, default=3)
    gen.add_argument("--shorts", type=int, default=4)
    gen.add_argument("--longs", type=int, default=4)
    gen.add_argument("--k", type=int)
    gen.add_argument("--penalties", action="store_true",
                     help="attach penalties instead of k (uniform-random only)")

    sol = sub.add_parser("solve", help="solve an instance file")
    sol.add_argument("--problem", choices=("partial", "prize", "lspc", "fullcover"),
                     required=True)
    sol.add_argument("--algorithm", choices=("approx", "exact"), default="approx")
    sol.add_argument("--input", required=True)
    sol.add_argument("--output", help="solution file to write")

    ver = sub.add_parser("verify", help="check a solution file against its instance")
    ver.add_argument("--input", required=True)
    ver.add_argument("--solution", required=True)

    rat = sub.add_parser("ratio", help="compare approx vs exact over a seed range")
    rat.add_argument("--problem", choices=("partial", "prize", "lspc"), default="partial")
    rat.add_argument("--profile", choices=PROFILES[:3], default="uniform-random")
    rat.add_argument("--seeds", required=True, help="inclusive range a..b")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_ratio(args)
    except (ParseError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
