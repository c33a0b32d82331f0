import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import differential
from dyncover import kernels
from dyncover.core import NEG_INF, POS_INF, InvalidRange, Quadrant, UnsupportedUpdate
from dyncover.geom_index import (FrameIndex, HittingFeasibilityTree, IntervalMaxRightTree,
                                 OrderedPointSet1D, PhiTree, QuadrantHeightTree,
                                 QuadrantVertexIndex, UncoveredCounter,
                                 best_interval_containing, cell_mode, compute_sigma,
                                 has_hitting_set, height, interval_containing_interval,
                                 leftmost_point_right_of, phi, special_quadrant,
                                 three_sided_min)
from dyncover.oracle import three_sided_scan
from dyncover.threesided import ThreeSidedRangeMin


def points_1d(*xs):
    return OrderedPointSet1D(list(enumerate(xs)))


def max_tree(*ivals):
    t = IntervalMaxRightTree()
    for i, iv in enumerate(ivals):
        t.insert(i, iv)
    return t


@pytest.mark.parametrize("xs, q, want", [((1, 3, 5), 2, 3), ((1,), 1, None), ((), 0, None)])
def test_leftmost_point_right_of(xs, q, want):
    assert leftmost_point_right_of(points_1d(*xs), q) == want


@pytest.mark.parametrize("ivals, q, want", [
    (((0, 2), (0, 4), (3, 5)), 1, (0, 4)),
    (((3, 5),), 1, None),
    (((0, 2),), 2, (0, 2)),
])
def test_best_interval_containing(ivals, q, want):
    assert best_interval_containing(max_tree(*ivals), q) == want


@pytest.mark.parametrize("ivals, J, want", [
    (((0, 10),), (2, 3), (0, 10)),
    (((0, 2), (3, 9)), (1, 4), None),
    (((1, 4),), (1, 4), (1, 4)),
])
def test_interval_containing_interval(ivals, J, want):
    assert interval_containing_interval(max_tree(*ivals), J) == want


@pytest.mark.parametrize("xs, ivals, want", [
    ((1,), ((0, 2),), True),
    ((1,), ((2, 3),), False),
    ((0, 5), ((1, 4), (0, 6)), False),
])
def test_has_hitting_set(xs, ivals, want):
    t = HittingFeasibilityTree()
    for i, x in enumerate(xs):
        t.insert_point(i, x)
    for i, iv in enumerate(ivals):
        t.insert_interval(i, iv)
    assert has_hitting_set(t) is want


def test_hitting_feasibility_rejects_reversed_interval():
    with pytest.raises(InvalidRange):
        HittingFeasibilityTree().insert_interval(0, (3, 1))


@pytest.mark.parametrize("verts, x, want", [
    (((2, 3), (5, 1)), 0, 3),
    (((2, 3),), 4, NEG_INF),
    ((), 7, NEG_INF),
])
def test_sw_height(verts, x, want):
    t = QuadrantHeightTree("SW")
    for i, v in enumerate(verts):
        t.insert(i, *v)
    assert height(t, x) == want


def frame(se=(), sw=()):
    fr = FrameIndex("SE")
    for i, v in enumerate(se):
        fr.insert_quadrant(i, Quadrant("SE", *v))
    for i, v in enumerate(sw):
        fr.insert_quadrant(100 + i, Quadrant("SW", *v))
    return fr


@pytest.mark.parametrize("se, sw, want", [
    (((0, 5),), ((2, 3),), (0, 3)),
    (((0, 5),), (), (0, NEG_INF)),
    # the SW quadrant at (-1, 9) sits left of the staircase and never meets it
    (((0, 5),), ((-1, 9),), (0, NEG_INF)),
])
def test_compute_sigma_examples(se, sw, want):
    assert compute_sigma(frame(se, sw)) == want


def test_compute_sigma_without_se_quadrants():
    assert compute_sigma(frame(sw=((1, 1),))) is None


def test_phi_examples():
    t = PhiTree()
    t.insert_vertex("q", 10, 10)
    for i, p in enumerate([(1, 2), (3, 4), (0, -1)]):
        t.insert_point(i, *p)
    # (0, -1) is not in the quadrant at (10, 10), the others are
    t.delete_vertex("q")
    t.insert_vertex("q", -5, 10)
    assert phi(t, 1) == (1, 2, 0)
    assert phi(t, 4) is None

    t = PhiTree()
    t.insert_point(0, 5, 9)
    t.insert_vertex("q", 0, 0)
    assert phi(t, 0) is None


def test_phi_ties_break_by_id():
    t = PhiTree()
    t.insert_vertex("q", 0, 10)
    t.insert_point(7, 2, 3)
    t.insert_point(4, 2, 5)
    assert phi(t, NEG_INF) == (2, 3, 7)
    assert phi(t, 3) == (2, 5, 4)


def test_rightmost_and_topmost_containing_quadrant():
    fr = FrameIndex("SE")
    fr.insert_quadrant(0, Quadrant("SW", 2, 3))
    fr.insert_quadrant(1, Quadrant("SW", 4, 1))
    assert fr.right_sw(0, 0) == 1
    fr.insert_quadrant(2, Quadrant("SE", 0, 5))
    assert fr.up_se(1, 1) == 2
    assert fr.up_ne(3, 3) is None
    assert fr.right_nw(3, 3) is None


def test_frames_see_reflected_directions():
    fr = FrameIndex("NW")
    fr.insert_quadrant(0, Quadrant("NW", 3, 4))
    # NW at (3, 4) reflected through both axes is SE at (-3, -4)
    assert fr.quads[0] == ("SE", -3, -4)
    assert fr.up_se(*fr.to_frame(0, 9)) == 0
    assert fr.up_se(*fr.to_frame(4, 9)) is None


def test_three_sided_examples():
    t = ThreeSidedRangeMin()
    for w, (x, y) in [(1, (1, 5)), (2, (2, 7)), (4, (4, 6))]:
        t.insert((x, y), x, (y,), w)
    assert t.query_keys(2, (5,), (7, POS_INF)) == 2
    assert three_sided_min(ThreeSidedRangeMin(), 0, 0, 1) is None
    one = ThreeSidedRangeMin()
    one.insert("a", 3, (3, "a"), (3, 3, "a"))
    assert three_sided_min(one, 0, 0, 9) == (3, 3, "a")


def test_three_sided_rejects_empty_y_range():
    with pytest.raises(InvalidRange):
        ThreeSidedRangeMin().three_sided_min(0, 2, 1)


def test_three_sided_independent_of_bucket_schedule():
    rnd = random.Random(3)
    a, b = ThreeSidedRangeMin(), ThreeSidedRangeMin()
    live = {}
    for step in range(3000):
        if live and rnd.random() < 0.4:
            k = rnd.choice(list(live))
            del live[k]
            a.delete(k)
            b.delete(k)
        else:
            k = step
            live[k] = (rnd.randint(0, 50), rnd.randint(0, 50))
            for t in (a, b):
                t.insert(k, live[k][0], (live[k][1], k), (*live[k], k))
        if rnd.random() < 0.05:
            b.rebuild()
        x0 = rnd.randint(0, 50)
        y1, y2 = sorted((rnd.randint(0, 50), rnd.randint(0, 50)))
        want = three_sided_scan(live, x0, y1, y2)
        assert a.three_sided_min(x0, y1, y2) == want == b.three_sided_min(x0, y1, y2)


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_three_sided_on_each_backend(backend):
    if backend == "compiled":
        pytest.importorskip("dyncover._speedups")
    before = kernels.BACKEND
    kernels.use_backend(backend)
    try:
        assert differential.check_three_sided(1500, seed=11) == 1500
    finally:
        kernels.use_backend(before)


def test_special_quadrant_examples():
    f = QuadrantVertexIndex()
    f.insert(0, Quadrant("SE", 0.5, 2))
    cell = (0, 1, 0, 1)
    assert special_quadrant(f, cell, "right") == Quadrant("SE", 0.5, 2)
    assert special_quadrant(f, cell, "left") is None

    f = QuadrantVertexIndex()
    f.insert(0, Quadrant("SW", 0.3, 2))
    f.insert(1, Quadrant("SW", 0.7, 3))
    assert special_quadrant(f, cell, "left") == Quadrant("SW", 0.7, 3)


def test_special_quadrant_on_unbounded_cell():
    f = QuadrantVertexIndex()
    f.insert(0, Quadrant("NE", 3, -100))
    assert f.special((NEG_INF, 5, 0, POS_INF), "right") == 0
    assert f.special((NEG_INF, 5, 0, POS_INF), "top") is None


@pytest.mark.parametrize("q, want", [
    (Quadrant("SE", -1, 5), "contains"),
    (Quadrant("SE", 1, 1), "inside"),
    (Quadrant("SE", 1, 5), "right"),
    (Quadrant("SW", 1, 5), "left"),
    (Quadrant("SE", -1, 1), "bottom"),
    (Quadrant("NE", -1, 1), "top"),
    (Quadrant("SE", 3, 1), "outside"),
    (Quadrant("NW", 0, 1), "outside"),
])
def test_cell_mode_examples(q, want):
    assert cell_mode(q, (0, 2, 0, 2)) == want


cell_pts = [(x / 2, y / 2) for x in range(1, 5) for y in range(1, 5)]


@given(st.sampled_from(["SE", "SW", "NE", "NW"]), st.integers(-2, 10), st.integers(-2, 10))
def test_cell_mode_matches_sampled_membership(d, a, b):
    # cell (0, 2] x (0, 2] sampled on half steps; vertices on a half-step grid too
    q = Quadrant(d, a / 4, b / 4)
    inside = {p for p in cell_pts if q.contains(p)}
    mode = cell_mode(q, (0, 2, 0, 2))
    if mode == "outside":
        assert not inside
    elif mode == "contains":
        assert inside == set(cell_pts)
    elif mode == "inside":
        assert 0 < q.x <= 2 and 0 < q.y <= 2
    else:
        # a side mode: membership inside the cell depends on one axis only
        axis = 0 if mode in ("left", "right") else 1
        for p in cell_pts:
            other = tuple(p[k] if k == axis else 1.0 for k in range(2))
            assert (p in inside) == q.contains(other)
        kept = {"left": (1e-9, 1), "right": (2, 1), "bottom": (1, 1e-9), "top": (1, 2)}[mode]
        assert q.contains(kept)


def test_uncovered_counter_is_static_in_the_quadrants():
    c = UncoveredCounter({0: Quadrant("SE", 0, 5)})
    c.insert_point(1, (1, 1))
    c.insert_point(2, (-1, 1))
    assert c.count == 1 and not c.has_cover()
    c.delete_point(2)
    assert c.has_cover()
    with pytest.raises(UnsupportedUpdate):
        c.insert_range(3, Quadrant("SE", 0, 0))


@pytest.mark.parametrize("name", sorted(differential.STRUCTURES))
def test_differential_against_scans(name):
    assert differential.STRUCTURES[name](2000, seed=7) == 2000
