"""Narrow/wide split, the long/short build, and the prize reduction."""

import itertools
import random

import pytest

from intervalcover.core import (
    INFEASIBLE,
    BudgetExceeded,
    Instance,
    Job,
    PartialSolution,
    Resource,
    covers,
    job_profile,
    multiset_cost,
    multiset_profile,
    verify_prize,
)
from intervalcover.generate import generate_mountain_range, generate_uniform
from intervalcover.lspc import LspcSolver, verify_lspc
from intervalcover.mountains import Mountain, MountainRange
from intervalcover.oracle import oracle_prize
from intervalcover.reductions import (
    SmfcInstance,
    build_lspc,
    lift_lspc,
    lift_smfc,
    lift_split,
    pc_to_smfc,
    smfc_solve_exact,
    split_narrow_wide,
    with_target,
)


def classify_part(interval, spans):
    """Independent labelling: narrow iff contained in one span but not
    equal to it; wide iff it fully spans every span it intersects."""
    s, e = interval
    touched = [sp for sp in spans if s <= sp[1] and sp[0] <= e]
    if not touched:
        return None
    if all(s <= sp[0] and sp[1] <= e for sp in touched):
        return "wide"
    if len(touched) == 1 and touched[0][0] <= s and e <= touched[0][1] \
            and (s, e) != touched[0]:
        return "narrow"
    return None


def _three_mountain_range():
    jobs = [Job(0, 1, 3), Job(1, 5, 7), Job(2, 9, 11)]
    rng = MountainRange((
        Mountain(2, frozenset({0}), (1, 3)),
        Mountain(6, frozenset({1}), (5, 7)),
        Mountain(10, frozenset({2}), (9, 11)),
    ))
    return jobs, rng


def test_split_inside_one_span():
    jobs, rng = _three_mountain_range()
    derived, smap = split_narrow_wide(rng, (Resource(0, 5, 6, 2, 3),))
    assert len(derived) == 1
    part = derived[0]
    assert part.role == "narrow" and part.mountain == 1
    assert (part.resource.s, part.resource.e) == (5, 6)
    assert (part.resource.w, part.resource.c) == (2, 3)


def test_split_exactly_covering_all_spans():
    jobs, rng = _three_mountain_range()
    derived, smap = split_narrow_wide(rng, (Resource(0, 1, 11, 1, 2),))
    assert len(derived) == 1
    assert derived[0].role == "wide"
    assert (derived[0].resource.s, derived[0].resource.e) == (1, 11)


def test_split_random_classification():
    rnd = random.Random("reductions-split")
    jobs, rng = _three_mountain_range()
    spans = [m.span for m in rng.mountains]
    for _ in range(120):
        s = rnd.randint(1, 11)
        e = rnd.randint(s, 11)
        res = (Resource(0, s, e, rnd.randint(1, 3), rnd.randint(0, 9)),)
        derived, smap = split_narrow_wide(rng, res)
        assert len(derived) <= 3
        for part in derived:
            label = classify_part((part.resource.s, part.resource.e), spans)
            assert label == part.role
        # one copy per part keeps coverage inside the spans
        if derived:
            counts = {p.resource.id: 1 for p in derived}
            prof = multiset_profile(counts, [p.resource for p in derived], 11)
            for sp in spans:
                for t in range(sp[0], sp[1] + 1):
                    if res[0].s <= t <= res[0].e:
                        assert prof[t - 1] >= res[0].w


def test_lift_split_takes_max():
    smap_parts = {4: (0, 1, 2)}
    derived_sol = PartialSolution({0: 2, 2: 1}, frozenset({9}))
    from intervalcover.reductions import SplitMap

    lifted = lift_split(derived_sol, SplitMap(smap_parts))
    assert lifted.counts == {4: 2}
    assert lifted.covered == {9}


def test_lift_split_empty():
    from intervalcover.reductions import SplitMap

    lifted = lift_split(PartialSolution({}, frozenset()), SplitMap({}))
    assert lifted.counts == {} and lifted.covered == frozenset()


def test_build_lspc_single_mountain_no_narrows():
    jobs = [Job(0, 2, 4), Job(1, 3, 5)]
    rng = MountainRange((Mountain(3, frozenset({0, 1}), (2, 5)),))
    derived, smap = split_narrow_wide(rng, (Resource(0, 1, 6, 2, 4),))
    build = build_lspc(rng, jobs, derived, 1, 6)
    assert build.instance.T == 1
    assert build.instance.d == (2,)
    assert not build.instance.shorts
    assert len(build.instance.longs) == 1
    assert build.instance.longs[0].w == 2 and build.instance.longs[0].c == 4


def test_build_lspc_prices_single_job_short():
    jobs = [Job(0, 2, 3), Job(1, 2, 4)]
    rng = MountainRange((Mountain(3, frozenset({0, 1}), (2, 4)),))
    narrow = Resource(0, 2, 3, 1, 6)  # strictly inside the span
    derived, smap = split_narrow_wide(rng, (narrow,))
    assert derived[0].role == "narrow"
    build = build_lspc(rng, jobs, derived, 1, 5)
    kappa_one = [s for s in build.instance.shorts if s.w == 1]
    assert len(kappa_one) == 1
    assert kappa_one[0].c == 6
    assoc = build.associations[kappa_one[0].id]
    assert assoc.covered == {0} and assoc.kappa == 1


def test_build_lspc_associations_verify():
    rnd = random.Random("reductions-build")
    for seed in range(60):
        inst, rng = generate_mountain_range(seed, mountains=2, jobs=6, resources=5,
                                            timeslots=12)
        derived, smap = split_narrow_wide(rng, inst.resources)
        build = build_lspc(rng, inst.jobs, derived, 0, inst.T)
        assert sum(build.instance.d) == len(rng.job_ids())
        narrow_res = [p.resource for p in derived if p.role == "narrow"]
        for sid, assoc in build.associations.items():
            short = build.instance.shorts[sid]
            assert short.w == assoc.kappa == len(assoc.covered)
            prof = multiset_profile(assoc.counts, narrow_res, inst.T)
            need = job_profile((inst.jobs[j] for j in assoc.covered), inst.T)
            assert covers(prof, need)


def test_lift_lspc_trivials():
    jobs = [Job(0, 2, 4), Job(1, 3, 5)]
    rng = MountainRange((Mountain(3, frozenset({0, 1}), (2, 5)),))
    derived, smap = split_narrow_wide(rng, (Resource(0, 2, 5, 1, 4),))
    build = build_lspc(rng, jobs, derived, 1, 6)
    solver = LspcSolver(build.instance)

    empty = solver.solve_for(0)
    lifted = lift_lspc(empty.solution, with_target(build, 0), rng, derived)
    assert lifted.counts == {} and lifted.covered == frozenset()

    one = solver.solve_for(1)  # no shorts exist: one wide copy, one chosen job
    assert one.cost == 4 and one.solution.long_counts == {0: 1}
    lifted = lift_lspc(one.solution, with_target(build, 1), rng, derived)
    assert lifted.counts == {0: 1}
    assert len(lifted.covered) == 1


def test_lift_lspc_roundtrip_random():
    for seed in range(60):
        inst, rng = generate_mountain_range(seed, mountains=2, jobs=6, resources=5,
                                            timeslots=12)
        derived, smap = split_narrow_wide(rng, inst.resources)
        build = build_lspc(rng, inst.jobs, derived, 0, inst.T)
        solver = LspcSolver(build.instance)
        size = len(rng.job_ids())
        for kappa in range(size + 1):
            res = solver.solve_for(kappa)
            if res.solution is None:
                continue
            lifted = lift_lspc(res.solution, with_target(build, kappa), rng, derived)
            assert len(lifted.covered) >= kappa
            dres = [p.resource for p in derived]
            assert multiset_cost(lifted.counts, dres) == res.cost
            have = multiset_profile(lifted.counts, dres, inst.T) if lifted.counts \
                else (0,) * inst.T
            need = job_profile((inst.jobs[j] for j in lifted.covered), inst.T)
            assert covers(have, need)
            # lifting to the original resources stays feasible and never costs more
            original = lift_split(lifted, smap)
            ocost = multiset_cost(original.counts, inst.resources)
            assert ocost <= res.cost
            ohave = multiset_profile(original.counts, inst.resources, inst.T) \
                if original.counts else (0,) * inst.T
            assert covers(ohave, need)


def test_pc_to_smfc_construction():
    inst = Instance(2, (Job(0, 1, 2, 5),), (Resource(0, 1, 2, 1, 3),))
    build = pc_to_smfc(inst)
    smfc = build.instance
    assert smfc.demand == (1, 1)
    assert len(smfc.s_types) == 1
    assert smfc.s_types[0].w == 1 and smfc.s_types[0].c == 5
    assert smfc.m_types == inst.resources


def test_pc_to_smfc_empty_jobs():
    inst = Instance(2, (), (Resource(0, 1, 2, 1, 3),))
    build = pc_to_smfc(inst)
    assert build.instance.demand == (0, 0)
    assert not build.instance.s_types


def test_pc_to_smfc_demand_matches_profile():
    for seed in range(30):
        inst = generate_uniform(seed, jobs=6, resources=4, timeslots=9, penalties=True)
        build = pc_to_smfc(inst)
        assert build.instance.demand == job_profile(inst.jobs, inst.T)


def brute_force_smfc(smfc, max_copies=6):
    """Flat enumeration over (once-only subset) x (bounded copy vectors)."""
    best = INFEASIBLE
    mbounds = [max_copies] * len(smfc.m_types)
    for bits in range(1 << len(smfc.s_types)):
        chosen = [r for i, r in enumerate(smfc.s_types) if bits >> i & 1]
        scost = sum(r.c for r in chosen)
        for vec in itertools.product(*(range(b + 1) for b in mbounds)):
            ok = True
            for t in range(1, smfc.T + 1):
                cap = sum(r.w for r in chosen if r.s <= t <= r.e)
                cap += sum(n * r.w for n, r in zip(vec, smfc.m_types) if r.s <= t <= r.e)
                if cap < smfc.demand[t - 1]:
                    ok = False
                    break
            if ok:
                cost = scost + sum(n * r.c for n, r in zip(vec, smfc.m_types))
                best = min(best, cost)
    return best


def test_smfc_zero_demand():
    smfc = SmfcInstance(2, (0, 0), (), ())
    res = smfc_solve_exact(smfc)
    assert res.cost == 0 and not res.s_selected and not res.m_counts


def test_smfc_two_branch_minimum():
    smfc = SmfcInstance(2, (1, 1),
                        (Resource(0, 1, 2, 1, 5),),
                        (Resource(0, 1, 2, 1, 3),))
    res = smfc_solve_exact(smfc)
    assert res.cost == 3
    assert not res.s_selected and res.m_counts == {0: 1}


def test_smfc_matches_flat_enumeration():
    rnd = random.Random("reductions-smfc")
    for _ in range(40):
        T = rnd.randint(1, 5)
        demand = tuple(rnd.randint(0, 3) for _ in range(T))
        s_types = []
        for i in range(rnd.randint(0, 3)):
            s = rnd.randint(1, T)
            e = rnd.randint(s, T)
            s_types.append(Resource(i, s, e, 1, rnd.randint(0, 8)))
        m_types = []
        for i in range(rnd.randint(0, 3)):
            s = rnd.randint(1, T)
            e = rnd.randint(s, T)
            m_types.append(Resource(i, s, e, rnd.randint(1, 3), rnd.randint(0, 8)))
        smfc = SmfcInstance(T, demand, tuple(s_types), tuple(m_types))
        assert smfc_solve_exact(smfc).cost == brute_force_smfc(smfc)


def test_smfc_budget_refusal():
    s_types = tuple(Resource(i, 1, 1, 1, 1) for i in range(20))
    smfc = SmfcInstance(1, (1,), s_types, ())
    with pytest.raises(BudgetExceeded):
        smfc_solve_exact(smfc)


def test_lift_smfc_extremes():
    inst = Instance(2, (Job(0, 1, 1, 2), Job(1, 2, 2, 3)), ())
    build = pc_to_smfc(inst)
    res = smfc_solve_exact(build.instance)
    assert res.cost == 5  # no resources: pay every penalty
    sol = lift_smfc(res, build)
    assert sol.covered == frozenset()
    report = verify_prize(inst, sol)
    assert report.feasible and report.total == 5


def test_lift_smfc_nothing_selected_means_full_cover():
    inst = Instance(2, (Job(0, 1, 2, 100), Job(1, 1, 1, 100)),
                    (Resource(0, 1, 2, 2, 3),))
    build = pc_to_smfc(inst)
    res = smfc_solve_exact(build.instance)
    assert res.cost == 3 and not res.s_selected
    sol = lift_smfc(res, build)
    assert sol.covered == {0, 1}
    report = verify_prize(inst, sol)
    assert report.feasible and report.total == 3


def test_prize_reduction_cost_exact_both_ways():
    for seed in range(60):
        inst = generate_uniform(seed, jobs=7, resources=5, timeslots=10, penalties=True)
        build = pc_to_smfc(inst)
        res = smfc_solve_exact(build.instance)
        ora = oracle_prize(inst)
        assert res.cost == ora.total
        sol = lift_smfc(res, build)
        report = verify_prize(inst, sol)
        assert report.feasible and report.total == res.cost
