import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from builders import line_points, max_right, min_right, quadrant_index
from conftest import random_interval_instance, random_quadrant_instance
from dyncover.core import (BUDGET_EXCEEDED, DIRECTIONS, NO_COVER, Interval, ProblemInstance,
                           Quadrant)
from dyncover.oracle import exact_interval_opt, exact_opt_bruteforce, is_solution
from dyncover.static_solvers import (NaiveIntervalHittingSet, NaiveIntervalSetCover,
                                     NaiveQuadrantSetCover, interval_hitting_set_greedy,
                                     interval_set_cover_greedy, quadrant_set_cover_os,
                                     uncovered_boxes)


def instance(kind, points, ranges):
    inst = ProblemInstance(kind)
    for i, p in enumerate(points):
        inst.insert_point(i, p)
    for i, r in enumerate(ranges):
        inst.insert_range(100 + i, r)
    return inst


def cover(inst, budget=None):
    return interval_set_cover_greedy(line_points(inst), max_right(inst), budget)


def hit(inst, budget=None):
    return interval_hitting_set_greedy(line_points(inst), min_right(inst), budget)


def quad(inst, budget=None, record=None):
    return quadrant_set_cover_os(quadrant_index(inst), budget, record)


def test_interval_cover_examples():
    three = instance("cover", [1, 3, 5], [Interval(0, 2), Interval(2, 4), Interval(4, 6)])
    assert cover(three).counts() == {100: 1, 101: 1, 102: 1}
    one = instance("cover", [1, 3], [Interval(0, 4)])
    assert cover(one).size() == 1
    assert cover(instance("cover", [5], [Interval(0, 2)])) is NO_COVER
    tight = instance("cover", [1, 3], [Interval(0, 2), Interval(0, 3.5), Interval(2.5, 5)])
    assert cover(tight, budget=0) is BUDGET_EXCEEDED
    assert cover(tight).counts() == {101: 1}


def test_interval_hitting_examples():
    inst = instance("hitting", [1, 4], [Interval(0, 2), Interval(1, 5), Interval(3, 6)])
    assert hit(inst).counts() == {0: 1, 1: 1}
    assert hit(instance("hitting", [2], [Interval(1, 3)])).counts() == {0: 1}
    assert hit(instance("hitting", [2], [Interval(5, 6)])) is NO_COVER


@pytest.mark.parametrize("kind, solve", [("cover", cover), ("hitting", hit)])
def test_interval_greedy_is_exact(kind, solve, rnd):
    for _ in range(1500):
        inst = random_interval_instance(rnd, kind, nrng=15)
        got = solve(inst)
        want = exact_opt_bruteforce(inst)
        if want is NO_COVER:
            assert got is NO_COVER
        else:
            assert got.size() == want
            assert is_solution(inst, got.counts())


@pytest.mark.parametrize("kind, solve", [("cover", cover), ("hitting", hit)])
def test_interval_budget_monotone(kind, solve, rnd):
    for _ in range(300):
        inst = random_interval_instance(rnd, kind, npts=20, nrng=20)
        full = solve(inst)
        first = None
        for b in range(0, 22):
            got = solve(inst, b)
            if first is None and got is not BUDGET_EXCEEDED:
                first = b
            if first is not None:
                assert got is full or got.counts() == full.counts()
        if full is not NO_COVER:
            assert first == full.size()


def test_quadrant_examples():
    one = instance("cover", [(0, 0)], [Quadrant("SE", -1, 1)])
    assert quad(one).size() == 1
    two = instance("cover", [(0, 0), (10, 10)], [Quadrant("SE", -1, 1), Quadrant("NE", 5, 5)])
    sol = quad(two)
    assert sol.size() <= 4 and is_solution(two, sol.counts())
    assert quad(instance("cover", [(0, 0)], [Quadrant("SE", 1, 1)])) is NO_COVER


def test_no_points_needs_no_quadrants():
    assert quad(instance("cover", [], [Quadrant("SE", 0, 0)])).size() == 0


def test_single_quadrant_covering_everything_needs_no_loop():
    inst = instance("cover", [(1, 1), (3, 3)], [Quadrant("SE", 0, 10)])
    rec = {}
    assert quad(inst, record=rec).counts() == {100: 1}
    assert rec["SE"] == []


def test_nw_covered_point_adds_three_quadrants_in_one_iteration():
    ranges = [Quadrant("SE", 0, 0), Quadrant("SE", 5, 10), Quadrant("NW", 7, 3),
              Quadrant("SE", 6.5, 20)]
    inst = instance("cover", [(6, 5), (1, -1)], ranges)
    rec = {}
    sol = quad(inst, record=rec)
    # seeds pick the SE quadrant at (0, 0); the loop visits (6, 5) once and adds
    # the NW quadrant, the SE quadrant over (6, 5) and the SE one over the NW vertex
    assert rec["SE"] == [(6, 5, 0)]
    assert sol.counts() == {100: 1, 101: 1, 102: 1, 103: 1}


def test_ne_covered_point_ends_the_loop():
    ranges = [Quadrant("SE", 0, 0), Quadrant("SE", 2, 8), Quadrant("NE", 1, 4)]
    inst = instance("cover", [(1, -1), (3, 5), (4, 7)], ranges)
    rec = {}
    sol = quad(inst, record=rec)
    assert rec["SE"] == [(3, 5, 1)]
    assert is_solution(inst, sol.counts())


def quadrant_cases(seed, count, npts=60, nq=18):
    rnd = random.Random(seed)
    for _ in range(count):
        yield random_quadrant_instance(rnd, npts=npts, nq=nq, span=40)


def iteration_points_separated(inst, rec):
    for d in DIRECTIONS:
        pts = rec[d]
        for q in inst.ranges.values():
            if sum(q.contains(p[:2]) for p in pts) > 1:
                return False
    return True


def test_quadrant_os_envelope_and_iteration_points():
    for inst in quadrant_cases(5, 300):
        rec = {}
        sol = quad(inst, record=rec)
        opt = exact_opt_bruteforce(inst)
        if opt is NO_COVER:
            assert sol is NO_COVER
            continue
        assert is_solution(inst, sol.counts())
        assert sol.size() <= 12 * opt + 16
        assert iteration_points_separated(inst, rec)


def test_quadrant_budget_monotone():
    for inst in quadrant_cases(6, 150):
        full = quad(inst)
        rec = {}
        quad(inst, record=rec)
        used = sum(len(v) for v in rec.values())
        for b in range(used + 3):
            got = quad(inst, b)
            if b < used:
                assert got is BUDGET_EXCEEDED
            else:
                assert got is full or got.counts() == full.counts()


@given(st.lists(st.tuples(st.sampled_from(DIRECTIONS), st.integers(0, 8), st.integers(0, 8)),
                max_size=6),
       st.integers(-1, 9), st.integers(-1, 9))
def test_uncovered_boxes_partition_the_complement(quads, x, y):
    qs = [Quadrant(*q) for q in quads]
    for px, py in [(x, y), (x + 0.5, y), (x, y + 0.5), (x + 0.5, y + 0.5)]:
        covered = any(q.contains((px, py)) for q in qs)
        in_box = 0
        for xlo, xhi, lo_open, hi_open, ylo, yhi in uncovered_boxes(qs):
            okx = (xlo < px if lo_open else xlo <= px) and (px < xhi if hi_open else px <= xhi)
            in_box += okx and ylo < py < yhi
        assert in_box == (0 if covered else 1)


def test_naive_engines_track_updates(rnd):
    eng = NaiveIntervalSetCover()
    eng.insert_point(1, 3.0)
    assert eng.solution() is NO_COVER
    eng.insert_range(2, Interval(0, 5))
    assert eng.solution().counts() == {2: 1}
    eng.delete_point(1)
    assert eng.solution().size() == 0

    hs = NaiveIntervalHittingSet()
    hs.insert_range(1, Interval(0, 1))
    assert hs.solution() is NO_COVER
    hs.insert_point(2, 0.5)
    assert hs.solution().counts() == {2: 1}

    qs = NaiveQuadrantSetCover()
    qs.insert_point(1, (0, 0))
    qs.insert_range(2, Quadrant("NE", -1, -1))
    assert qs.solution().counts() == {2: 1}
    qs.delete_range(2)
    assert qs.solution() is NO_COVER
