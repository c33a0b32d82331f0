import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyncover.core import (EMPTY_VIEW, DeletePoint, DeleteRange, DuplicateId, InsertPoint,
                           InsertRange, Interval, InvalidRange, NEG_INF, POS_INF, ProblemInstance,
                           Quadrant, SolutionView, UnitSquare, UnknownId, make_interval,
                           make_quadrant, solution_disjoint_union)


def test_interval_closed_right_end():
    assert Interval(0, 2).contains(2)


def test_quadrant_se_excludes_left_point():
    assert not Quadrant("SE", 1, 1).contains((0, 0))


def test_unit_square_closed_corner():
    assert UnitSquare(0, 0).contains((1, 1))


@pytest.mark.parametrize("d, inside, outside", [
    ("SE", (2, -1), (0, 0)),
    ("SW", (0, 0), (2, 0)),
    ("NE", (2, 2), (0, 2)),
    ("NW", (0, 2), (0, 0)),
])
def test_quadrant_regions(d, inside, outside):
    q = Quadrant(d, 1, 1)
    assert q.contains(inside)
    assert not q.contains(outside)
    assert q.contains((1, 1))


def test_sentinels_bracket_finite_values():
    assert NEG_INF < -1e308 and POS_INF > 1e308


def test_constructors_validate():
    with pytest.raises(InvalidRange):
        make_interval(3, 1)
    with pytest.raises(ValueError):
        make_quadrant("UP", 0, 0)


def test_union_sums_multiplicities():
    v = solution_disjoint_union([SolutionView({"A": 1}), SolutionView({"A": 2})])
    assert v.multiplicity("A") == 3
    assert v.size() == 3


def test_union_with_empty():
    v = solution_disjoint_union([EMPTY_VIEW, SolutionView({"B": 1})])
    assert v.size() == 1


def test_union_reports_every_copy():
    v = solution_disjoint_union([SolutionView({"A": 1, "B": 1}), SolutionView({"B": 1, "C": 1})])
    assert v.size() == 4
    assert sorted(v.report()) == ["A", "B", "B", "C"]


def test_shadow_counts_membership_not_size():
    child = SolutionView({"q": 2})
    v = SolutionView({"q": 1}, [child], resolve=lambda e: (), shadow={"q": 2})
    assert v.size() == 3
    assert v.multiplicity("q") == 3


views = st.recursive(
    st.dictionaries(st.sampled_from("abcde"), st.integers(1, 3), max_size=4).map(SolutionView),
    lambda kids: st.tuples(
        st.dictionaries(st.sampled_from("abcde"), st.integers(1, 3), max_size=3),
        st.lists(kids, max_size=3),
    ).map(lambda t: SolutionView(t[0], t[1])),
    max_leaves=8,
)


@given(views)
def test_view_size_and_multiplicity_match_report(v):
    stream = list(v.report())
    assert v.size() == len(stream) == len(v)
    for e in "abcde":
        assert v.multiplicity(e) == stream.count(e)


def test_instance_insert_point():
    inst = ProblemInstance()
    inst.apply(InsertPoint(7, 3))
    assert set(inst.points) == {7}


def test_double_delete_raises():
    inst = ProblemInstance()
    inst.apply(InsertPoint(7, 3))
    inst.apply(DeletePoint(7))
    with pytest.raises(UnknownId):
        inst.apply(DeletePoint(7))


def test_ids_are_never_reused():
    inst = ProblemInstance()
    inst.apply(InsertRange(2, Interval(0, 5)))
    inst.apply(DeleteRange(2))
    with pytest.raises(DuplicateId):
        inst.apply(InsertRange(2, Interval(0, 1)))


def test_reuse_allowed_for_owned_subinstances():
    inst = ProblemInstance(reuse_ids=True)
    inst.insert_range(2, Interval(0, 5))
    inst.delete_range(2)
    inst.insert_range(2, Interval(0, 1))
    assert inst.ranges[2] == Interval(0, 1)


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(-5, 5)), max_size=20, unique_by=lambda t: t[0]))
def test_insert_then_delete_restores(pairs):
    inst = ProblemInstance()
    inst.insert_point(999, 0)
    before = dict(inst.points)
    for pid, x in pairs:
        inst.insert_point(pid, x)
    for pid, _ in pairs:
        inst.delete_point(pid)
    assert inst.points == before
