"""Acceptance suite: one PASS/FAIL line per criterion.

Runs under pytest (lines go straight to the terminal) or as a script:

    python tests/test_acceptance.py [criterion numbers...]
"""

import functools
import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

import pytest

import differential
from builders import quadrant_index
from conftest import random_quadrant_instance
from dyncover.boot_interval import BootIntervalSetCover
from dyncover.boot_quadrant import OS_ADD, OS_MU, OS_MULT, BootQuadrantSetCover
from dyncover.cli import make_engine, scaling, split_initial
from dyncover.core import DIRECTIONS, NO_COVER, ProblemInstance
from dyncover.localmod import (LocalHittingSetEngine, PartialQuadSCEngine, quasi_optimum,
                               restrict_to_feasible)
from dyncover.oracle import (exact_interval_opt, exact_opt_bruteforce, interval_feasible,
                             interval_is_solution, is_feasible, is_solution)
from dyncover.static_solvers import NaiveQuadrantSetCover, quadrant_set_cover_os
from dyncover.trace import KINDS, Query, generate

HERE = os.path.dirname(os.path.abspath(__file__))
SCALING_CSV = os.path.join(os.path.dirname(HERE), "scaling_report.csv")


class Outcome:
    def __init__(self, ok, detail, gating=True):
        self.ok = ok
        self.detail = detail
        self.gating = gating

    def line(self, label):
        word = "PASS" if self.ok else ("FAIL" if self.gating else "WARN")
        return f"criterion {label}: {word} ({self.detail})"


def replay(trace, kind, start, step, every=1):
    """Seed from the block before the first query, then call ``step`` per update.

    ``start(points, ranges)`` builds the engine; ``step(i, instance, engine,
    is_query)`` runs after every update and at every query.
    """
    head, rest = split_initial(trace)
    inst = ProblemInstance(kind)
    for cmd in head:
        inst.apply(cmd)
    engine = start(dict(inst.points), dict(inst.ranges))
    for i, cmd in enumerate(rest):
        if isinstance(cmd, Query):
            step(i, inst, engine, True)
            continue
        inst.apply(cmd)
        engine.apply(cmd)
        if every:
            step(i, inst, engine, False)
    return inst, engine


# ---------------------------------------------------------------------------
# 1 and 4: interval set cover

@functools.cache
def interval_runs():
    configs = [(d, e) for d in (1, 2) for e in (0.1, 0.5, 1.0)]
    sizes = (300, 600, 1000, 1300)
    stats = {"checks": 0, "ratio": 0, "invalid": 0, "verdict": 0, "infeasible": 0,
             "worst": 0.0}
    t0 = time.perf_counter()
    for t in range(50):
        depth, eps = configs[t % len(configs)]
        tr = generate(KINDS[t % 3], "interval-sc", sizes[t % 4], 5000, seed=1000 + t,
                      query_every=10)

        def check(i, inst, e, is_query, eps=eps):
            if not is_query:
                return
            stats["checks"] += 1
            sol = e.solution()
            feasible = interval_feasible(inst)
            if (sol is NO_COVER) == feasible:
                stats["verdict"] += 1
                return
            if not feasible:
                stats["infeasible"] += 1
                return
            if not interval_is_solution(inst, sol.counts()):
                stats["invalid"] += 1
            opt = exact_interval_opt(inst)
            if sol.size() > (1 + eps) * opt:
                stats["ratio"] += 1
            if opt:
                stats["worst"] = max(stats["worst"], sol.size() / opt / (1 + eps))

        replay(tr, "cover", lambda p, r, d=depth, e=eps: BootIntervalSetCover(e, d, p, r),
               check, every=0)
    stats["seconds"] = time.perf_counter() - t0
    return stats


def criterion_1():
    s = interval_runs()
    bad = s["ratio"] + s["invalid"]
    ok = bad == 0 and s["seconds"] <= 60
    return Outcome(ok, f"50 traces, {s['checks']} queries, {bad} violations, "
                       f"max size/((1+eps)opt)={s['worst']:.3f}, {s['seconds']:.1f}s")


# ---------------------------------------------------------------------------
# 2: the output-sensitive quadrant cover on static instances

def iteration_points_separated(inst, rec):
    for d in DIRECTIONS:
        for q in inst.ranges.values():
            if sum(q.contains(p[:2]) for p in rec[d]) > 1:
                return False
    return True


def seeded_quadrant_instance(rnd):
    """Random quadrants with most points dropped inside them, so most instances are coverable."""
    inst = random_quadrant_instance(rnd, npts=0, nq=18, span=40)
    quads = list(inst.ranges.values())
    for i in range(rnd.randint(0, 60)):
        p = (rnd.randint(0, 40), rnd.randint(0, 40))
        if quads and rnd.random() < 0.9:
            q = rnd.choice(quads)
            dx = 1 if q.direction.endswith("E") else -1
            dy = 1 if q.direction.startswith("N") else -1
            p = (q.x + dx * rnd.randint(0, 20), q.y + dy * rnd.randint(0, 20))
        inst.insert_point(i, p)
    return inst


def criterion_2():
    rnd = random.Random(2)
    t0 = time.perf_counter()
    bad = feasible = 0
    for _ in range(2000):
        inst = seeded_quadrant_instance(rnd)
        rec = {}
        sol = quadrant_set_cover_os(quadrant_index(inst), record=rec)
        opt = exact_opt_bruteforce(inst)
        if opt is NO_COVER:
            bad += sol is not NO_COVER
            continue
        feasible += 1
        if (sol is NO_COVER or not is_solution(inst, sol.counts())
                or sol.size() > OS_MULT * opt + OS_ADD
                or not iteration_points_separated(inst, rec)):
            bad += 1
    secs = time.perf_counter() - t0
    return Outcome(bad == 0 and secs <= 120,
                   f"2000 instances ({feasible} coverable), {bad} violations, {secs:.1f}s")


# ---------------------------------------------------------------------------
# 3 and 4: bootstrapped quadrant set cover

@functools.cache
def quadrant_runs():
    sizes = (24, 30, 150, 400, 660)
    stats = {"checks": 0, "oracle": 0, "naive": 0, "ratio": 0, "invalid": 0, "verdict": 0,
             "infeasible": 0}
    t0 = time.perf_counter()
    for t in range(20):
        n = sizes[t % len(sizes)]
        every = 10 if n <= 150 else 40
        tr = generate(KINDS[t % 3], "quadrant-sc", n, 2000, seed=3000 + t, query_every=every)

        def start(points, ranges):
            naive = NaiveQuadrantSetCover()
            for pid, p in points.items():
                naive.insert_point(pid, p)
            for rid, r in ranges.items():
                naive.insert_range(rid, r)
            return BootQuadrantSetCover(1.0, 1, points, ranges), naive

        def check(i, inst, pair, is_query):
            if not is_query:
                return
            e, naive = pair
            stats["checks"] += 1
            sol = e.solution()
            feasible = is_feasible(inst)
            if (sol is NO_COVER) == feasible:
                stats["verdict"] += 1
                return
            if not feasible:
                stats["infeasible"] += 1
                return
            if not is_solution(inst, sol.counts()):
                stats["invalid"] += 1
            if len(inst.ranges) <= 18:
                stats["oracle"] += 1
                bound = (OS_MULT + 1) * exact_opt_bruteforce(inst) + OS_ADD
            else:
                stats["naive"] += 1
                bound = (OS_MULT + 1) * naive.solution().size()
            if sol.size() > bound:
                stats["ratio"] += 1

        _replay_pair(tr, start, check)
    stats["seconds"] = time.perf_counter() - t0
    return stats


def _replay_pair(trace, start, check):
    head, rest = split_initial(trace)
    inst = ProblemInstance("cover")
    for cmd in head:
        inst.apply(cmd)
    pair = start(dict(inst.points), dict(inst.ranges))
    for i, cmd in enumerate(rest):
        if isinstance(cmd, Query):
            check(i, inst, pair, True)
            continue
        inst.apply(cmd)
        for e in pair:
            e.apply(cmd)


def criterion_3():
    s = quadrant_runs()
    bad = s["ratio"] + s["invalid"]
    ok = bad == 0 and s["seconds"] <= 300
    return Outcome(ok, f"20 traces, {s['checks']} queries ({s['oracle']} vs enumeration, "
                       f"{s['naive']} vs naive), {bad} violations, {s['seconds']:.1f}s")


def criterion_4():
    a, b = interval_runs(), quadrant_runs()
    mism = a["verdict"] + b["verdict"]
    none = a["infeasible"] + b["infeasible"]
    return Outcome(mism == 0, f"{a['checks'] + b['checks']} queries, {none} without a cover, "
                              f"{mism} mismatches")


# ---------------------------------------------------------------------------
# 5: local modification for interval hitting set

@functools.cache
def hitting_runs():
    stats = {"ops": 0, "miss": 0, "ratio_feasible": 0, "ratio_any": 0, "infeasible": 0,
             "quasi_jump": 0}
    t0 = time.perf_counter()
    for t in range(50):
        eps = (0.2, 1.0)[t % 2]
        tr = generate(KINDS[t % 3], "interval-hs", (20, 40)[t // 2 % 2],
                      10_000, seed=5000 + t, query_every=0)

        def check(i, inst, e, is_query, eps=eps):
            if is_query:
                return
            stats["ops"] += 1
            sub = restrict_to_feasible(inst)
            counts = e.maintained().counts()
            if not interval_is_solution(sub, counts):
                stats["miss"] += 1
            q = exact_interval_opt(sub)
            size = e.maintained().size()
            if size > (1 + eps) * q:
                stats["ratio_any"] += 1
                if e.feasible():
                    stats["ratio_feasible"] += 1
            if not e.feasible():
                stats["infeasible"] += 1

        replay(tr, "hitting", lambda p, r, e=eps: LocalHittingSetEngine(e, p, r), check)
    stats["seconds"] = time.perf_counter() - t0
    return stats


def criterion_5():
    s = hitting_runs()
    bad = s["miss"] + s["ratio_feasible"]
    return Outcome(bad == 0 and s["seconds"] <= 90,
                   f"{s['ops']} ops, {bad} violations at feasible states or unhit hittable "
                   f"intervals, {s['seconds']:.1f}s")


def criterion_5_every_op():
    s = hitting_runs()
    return Outcome(s["ratio_any"] == 0,
                   f"size bound checked after all {s['ops']} ops: {s['ratio_any']} violations, "
                   f"all at the {s['infeasible']} ops where some interval is unhittable")


# ---------------------------------------------------------------------------
# 6: stability of the quasi-optimum

def stability_run(trace, kind, quasi):
    jumps = ops = 0
    head, rest = split_initial(trace)
    inst = ProblemInstance(kind)
    for cmd in head:
        inst.apply(cmd)
    prev = quasi(inst)
    for cmd in rest:
        if isinstance(cmd, Query):
            continue
        inst.apply(cmd)
        q = quasi(inst)
        ops += 1
        jumps += abs(q - prev) > 1
        prev = q
    return ops, jumps


def criterion_6():
    runs = [("interval-hs", False, 30, 40_000), ("interval-sc", True, 60, 20_000),
            ("quadrant-sc", True, 30, 20_000), ("unitsq-hs", True, 24, 22_000)]
    total = jumps = 0
    for k, (problem, partial, n, count) in enumerate(runs):
        for part in range(4):
            tr = generate(KINDS[part % 3], problem, n, count // 4, seed=6000 + 10 * k + part,
                          query_every=0, partial=partial)
            kind = "hitting" if problem.endswith("-hs") else "cover"
            o, j = stability_run(tr, kind, quasi_optimum)
            total += o
            jumps += j
    return Outcome(jumps == 0 and total >= 100_000, f"{total} ops, {jumps} jumps above 1")


# ---------------------------------------------------------------------------
# 7: partially dynamic quadrant set cover and the reductions built on it

def criterion_7():
    stats = {"checks": 0, "bad": 0, "verdict": 0}
    t0 = time.perf_counter()
    plans = [("quadrant-sc", 24, 1)] * 20 + [(p, 24, 4) for p in
                                             ("unitsq-sc", "unitsq-hs", "quadrant-hs")] * 3
    for t, (problem, n, factor) in enumerate(plans):
        eps = (0.5, 1.0)[t % 2]
        kind = "hitting" if problem.endswith("-hs") else "cover"
        tr = generate(KINDS[t % 3], problem, n, 5000, seed=7000 + t, query_every=10,
                      partial=True)

        def check(i, inst, e, is_query, eps=eps, factor=factor):
            if not is_query:
                return
            stats["checks"] += 1
            sol = e.solution()
            feasible = is_feasible(inst)
            if (sol is NO_COVER) == feasible:
                stats["verdict"] += 1
                return
            if not feasible:
                return
            q = quasi_optimum(inst)
            if not is_solution(inst, sol.counts()) or sol.size() > factor * (OS_MU + eps) * q:
                stats["bad"] += 1

        replay(tr, kind, lambda p, r, pr=problem, e=eps: make_engine(pr, "localmod", e, 1, p, r),
               check, every=0)
    bad = stats["bad"] + stats["verdict"]
    secs = time.perf_counter() - t0
    return Outcome(bad == 0, f"20 quadrant traces plus 9 reduced traces, {stats['checks']} "
                             f"queries, {bad} violations, {secs:.1f}s")


# ---------------------------------------------------------------------------
# 8: differential suite over the index structures

def criterion_8():
    t0 = time.perf_counter()
    failures = []
    for name, check in differential.STRUCTURES.items():
        try:
            n = check(10_000, seed=8)
        except AssertionError as err:
            failures.append(f"{name}: {err}")
            continue
        if n < 10_000:
            failures.append(f"{name}: only {n} cases")
    secs = time.perf_counter() - t0
    detail = f"{len(differential.STRUCTURES)} structures x 10000 cases, {len(failures)} " \
             f"mismatching, {secs:.1f}s"
    if failures:
        detail += "; " + "; ".join(failures)
    return Outcome(not failures and secs <= 120, detail)


# ---------------------------------------------------------------------------
# 9: scaling report (informational)

def criterion_9():
    import csv

    rows = []
    fits = []
    for problem, depth, exps, limit in [("interval-sc", 2, range(10, 16), 0.48),
                                        ("quadrant-sc", 1, range(10, 15), 0.85)]:
        eps = 0.5 if problem == "interval-sc" else 1.0
        pts, slope = scaling(problem, "bootstrap", eps, depth, exps, seed=9)
        rows += [(problem, depth, *r) for r in pts]
        rows.append((problem, depth, "exponent", "", f"{slope:.4f}", ""))
        fits.append((problem, slope, limit))
    with open(SCALING_CSV, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "depth", "n", "updates", "elementary_ops_per_update",
                    "seconds_per_update"])
        w.writerows(rows)
    ok = all(s <= lim for _, s, lim in fits)
    detail = ", ".join(f"{p} exponent {s:.3f} (limit {lim})" for p, s, lim in fits)
    return Outcome(ok, f"{detail}; wrote {os.path.basename(SCALING_CSV)}", gating=False)


# ---------------------------------------------------------------------------
# 10: rebuilds are invisible

def transparency(name, start, fresh, trace, kind):
    seen = {"boundaries": 0, "mismatch": 0}
    box = {}

    def compare(eng):
        inst = box["inst"]
        a = eng.solution()
        b = fresh(dict(inst.points), dict(inst.ranges)).solution()
        seen["boundaries"] += 1
        if (a is NO_COVER) != (b is NO_COVER) or (a is not NO_COVER and a.size() != b.size()):
            seen["mismatch"] += 1

    head, rest = split_initial(trace)
    inst = ProblemInstance(kind)
    box["inst"] = inst
    for cmd in head:
        inst.apply(cmd)
    e = start(dict(inst.points), dict(inst.ranges))
    e.on_rebuild = compare
    for cmd in rest:
        if not isinstance(cmd, Query):
            inst.apply(cmd)
            e.apply(cmd)
    return seen


def criterion_10():
    plans = [
        ("interval bootstrap depth 1", "interval-sc", 300, 1500, False,
         lambda p, r: BootIntervalSetCover(0.5, 1, p, r)),
        ("interval bootstrap depth 2", "interval-sc", 300, 1500, False,
         lambda p, r: BootIntervalSetCover(0.5, 2, p, r)),
        ("quadrant bootstrap", "quadrant-sc", 150, 600, False,
         lambda p, r: BootQuadrantSetCover(1.0, 1, p, r)),
        ("interval hitting set", "interval-hs", 60, 1500, False,
         lambda p, r: LocalHittingSetEngine(0.5, p, r)),
        ("partial quadrant cover", "quadrant-sc", 150, 1500, True,
         lambda p, r: PartialQuadSCEngine(1.0, p, r)),
    ]
    parts, bad = [], 0
    for name, problem, n, ops, partial, build in plans:
        tr = generate("sliding-window", problem, n, ops, seed=10, query_every=0, partial=partial)
        kind = "hitting" if problem.endswith("-hs") else "cover"
        seen = transparency(name, build, build, tr, kind)
        if seen["boundaries"] < 3 or seen["mismatch"]:
            bad += 1
        parts.append(f"{name}: {seen['boundaries']} rebuilds, {seen['mismatch']} mismatches")
    return Outcome(bad == 0, "; ".join(parts))


# ---------------------------------------------------------------------------

CRITERIA = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4,
    "5": criterion_5, "5 (bound after every op)": criterion_5_every_op, "6": criterion_6,
    "7": criterion_7, "8": criterion_8, "9": criterion_9, "10": criterion_10,
}


def emit(capsys, label, outcome):
    with capsys.disabled():
        print("\n" + outcome.line(label))


@pytest.mark.parametrize("label", list(CRITERIA))
def test_acceptance(label, capsys):
    outcome = CRITERIA[label]()
    emit(capsys, label, outcome)
    if outcome.gating:
        assert outcome.ok, outcome.detail


if __name__ == "__main__":
    wanted = sys.argv[1:] or list(CRITERIA)
    failed = False
    for label in CRITERIA:
        if label.split()[0] in wanted:
            out = CRITERIA[label]()
            print(out.line(label), flush=True)
            failed |= out.gating and not out.ok
    sys.exit(1 if failed else 0)
