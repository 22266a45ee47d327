"""Exact minimum-cost full cover of a demand profile by interval resources.

The partial-coverage pipeline treats full cover as a pluggable subroutine
with a guarantee factor beta; this module pins beta = 1 by solving the
cover exactly with branch and bound over copy counts. An optimal cover
never needs more than ceil(max demand / w) copies of a resource, which
bounds the search space at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import INFEASIBLE, Cost, Resource


@dataclass(frozen=True)
class FullCoverResult:
    """Optimal multiset (resource id -> copies) with its cost.

    ``beta`` is the guarantee factor of the solver that produced the
    result; the exact search always reports 1.
    """

    counts: Mapping[int, int]
    cost: Cost
    beta: int = 1

    @property
    def feasible(self) -> bool:
        return self.cost is not INFEASIBLE


INFEASIBLE_COVER = FullCoverResult({}, INFEASIBLE)


def _ceildiv(a: int, b: int) -> int:
    return -(-a // b)


def copy_upper_bounds(demand: Sequence[int], resources: Sequence[Resource]) -> dict[int, int]:
    """ceil(max demand / w) per resource: no optimal cover needs more copies."""
    maxd = max(demand, default=0)
    return {r.id: _ceildiv(maxd, r.w) for r in resources}


def full_cover(demand: Sequence[int], resources: Sequence[Resource]) -> FullCoverResult:
    """Minimum-cost multiset whose capacity profile dominates ``demand``."""
    return full_cover_bounded_search(demand, resources, copy_upper_bounds(demand, resources))


def full_cover_bounded_search(
    demand: Sequence[int],
    resources: Sequence[Resource],
    upper_bounds: Mapping[int, int],
) -> FullCoverResult:
    """Branch and bound over copy counts in [0, upper_bounds[id]].

    Prunes a node when its cost plus an optimistic completion bound
    exceeds the incumbent. Equal-cost optima are all visited, and ties
    break to the lexicographically smallest copy vector in the order the
    resources were given. INFEASIBLE iff some slot has positive demand
    and no active resource.
    """
    T = len(demand)
    m = len(resources)
    active_at = [[] for _ in range(T)]  # slot -> positions into `resources`
    for pos, r in enumerate(resources):
        for t in range(r.s - 1, r.e):
            active_at[t].append(pos)
    for t in range(T):
        if demand[t] > 0 and not active_at[t]:
            return INFEASIBLE_COVER
    if all(d <= 0 for d in demand):
        return FullCoverResult({}, 0)

    # Branch on cheap capacity first; the incumbent drops fast and the
    # bound bites early. Ratio ties break to input order.
    order = sorted(range(m), key=lambda pos: (Fraction(resources[pos].c, resources[pos].w), pos))

    # Cheapest-per-unit resource active at each slot (for the greedy seed).
    best_at = [None] * T
    for t in range(T):
        if active_at[t]:
            best_at[t] = min(active_at[t], key=lambda pos: (Fraction(resources[pos].c, resources[pos].w), pos))

    # Greedy incumbent: a feasible cost cap, not a candidate vector.
    residual = [d for d in demand]
    greedy_cost = 0
    for t in range(T):
        if residual[t] > 0:
            r = resources[best_at[t]]
            need = _ceildiv(residual[t], r.w)
            greedy_cost += need * r.c
            add = need * r.w
            for u in range(r.s - 1, r.e):
                residual[u] -= add

    # suffix_best[i][t]: (c, w) of the best cost-per-unit resource among
    # order[i:] active at slot t, or None. Drives the admissible bound
    # max_t ceil(residual_t * c / w) and detects dead slots.
    suffix_best = [[None] * T for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        r = resources[order[i]]
        row = suffix_best[i + 1]
        cur = suffix_best[i]
        for t in range(T):
            cur[t] = row[t]
        for t in range(r.s - 1, r.e):
            prev = cur[t]
            if prev is None or r.c * prev[1] < prev[0] * r.w:
                cur[t] = (r.c, r.w)

    residual = list(demand)
    counts = [0] * m  # indexed by position in `resources`
    best_cost = greedy_cost
    best_vec = None

    def lower_bound(i: int) -> Cost:
        lb = 0
        row = suffix_best[i]
        for t in range(T):
            rt = residual[t]
            if rt > 0:
                br = row[t]
                if br is None:
                    return INFEASIBLE
                est = _ceildiv(rt * br[0], br[1])
                if est > lb:
                    lb = est
        return lb

    def dfs(i: int, cost: int) -> None:
        nonlocal best_cost, best_vec
        lb = lower_bound(i)
        if lb is INFEASIBLE or cost + lb > best_cost:
            return
        if i == m:
            vec = tuple(counts)
            if cost < best_cost or best_vec is None or vec < best_vec:
                best_cost = cost
                best_vec = vec
            return
        pos = order[i]
        r = resources[pos]
        ub = upper_bounds[r.id]
        for n in range(ub + 1):
            counts[pos] = n
            if n:
                for t in range(r.s - 1, r.e):
                    residual[t] -= r.w
            dfs(i + 1, cost + n * r.c)
        counts[pos] = 0
        back = ub * r.w
        for t in range(r.s - 1, r.e):
            residual[t] += back

    dfs(0, 0)
    assert best_vec is not None, "greedy incumbent exists, search must find an optimum"
    picked = {resources[pos].id: n for pos, n in enumerate(best_vec) if n > 0}
    return FullCoverResult(picked, best_cost)
