"""Index bundles built straight from a ProblemInstance."""

from dyncover.geom_index import (IntervalMaxRightTree, IntervalMinRightTree, OrderedPointSet1D,
                                 QuadrantIndex)


def line_points(inst):
    return OrderedPointSet1D(list(inst.points.items()))


def max_right(inst):
    t = IntervalMaxRightTree()
    t.load(inst.ranges.items())
    return t


def min_right(inst):
    t = IntervalMinRightTree()
    t.load(inst.ranges.items())
    return t


def quadrant_index(inst):
    idx = QuadrantIndex()
    for pid, p in inst.points.items():
        idx.insert_point(pid, p)
    for qid, q in inst.ranges.items():
        idx.insert_quadrant(qid, q)
    return idx
