"""Dynamic structures that patch a good solution locally and recompute it rarely.

Both engines keep a meter: ``cnt`` operations since the last recompute and
``opt_snapshot`` the solution size at that recompute.  A recompute happens
once ``cnt`` is large relative to ``opt_snapshot`` and the current instance is
feasible; otherwise each update adds or removes a constant number of elements.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .boot_quadrant import OS_MU
from .core import (NO_COVER, DuplicateId, Engine, Interval, ProblemInstance, Quadrant,
                   SolutionView, UnknownId, UnsupportedUpdate)
from .geom_index import (HittingFeasibilityTree, IntervalMinRightTree, OrderedPointSet1D,
                         QuadrantIndex, UncoveredCounter)
from .oracle import DEFAULT_BUDGET, exact_interval_opt, exact_opt_bruteforce
from .static_solvers import interval_hitting_set_greedy, quadrant_set_cover_os


class StabilityMeter:
    """Counts operations since the last recompute and decides when to recompute.

    The trigger ``cnt >= eps * opt / (scale * (2 + eps))`` is evaluated in exact
    rational arithmetic.  Floats go through their shortest decimal form, so
    0.1 means 1/10 rather than the nearest binary double.
    """

    def __init__(self, epsilon, scale=1):
        self.eps = Fraction(str(epsilon))
        self.scale = Fraction(str(scale))
        self.cnt = 0
        self.opt_snapshot = 0

    def tick(self):
        self.cnt += 1

    def due(self):
        return self.cnt * (2 + self.eps) * self.scale >= self.eps * self.opt_snapshot

    def reset(self, size):
        self.cnt = 0
        self.opt_snapshot = size


def _point_x(coords):
    return coords[0] if isinstance(coords, tuple) else coords


class LocalHittingSetEngine(Engine):
    """(1+eps)-approximate fully dynamic interval hitting set."""

    problem = "interval-hs"

    def __init__(self, epsilon=0.5, points=None, ranges=None):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.epsilon = epsilon
        self.points: dict = {pid: _point_x(c) for pid, c in (points or {}).items()}
        self.ivals: dict = {}
        for rid, iv in (ranges or {}).items():
            self.ivals[rid] = self._check_interval(iv)
        self.pts = OrderedPointSet1D(list(self.points.items()))
        self.tree = IntervalMinRightTree()
        self.tree.load(self.ivals.items())
        self.feas = HittingFeasibilityTree()
        for pid, x in self.points.items():
            self.feas.insert_point(pid, x)
        for rid, iv in self.ivals.items():
            self.feas.insert_interval(rid, iv)
        self.meter = StabilityMeter(epsilon)
        self.recomputes = 0
        self.on_rebuild = None
        # the first solution only has to hit the intervals that can be hit
        hittable = IntervalMinRightTree()
        hittable.load((rid, iv) for rid, iv in self.ivals.items()
                      if self.point_in(iv) is not None)
        self._adopt(interval_hitting_set_greedy(self.pts, hittable))

    @staticmethod
    def _check_interval(iv):
        if not isinstance(iv, Interval):
            raise UnsupportedUpdate(f"expected an interval, got {iv!r}")
        return iv

    def _adopt(self, view):
        self.chosen = Counter(view.counts())
        self.meter.reset(sum(self.chosen.values()))

    def point_in(self, iv):
        """Id of some point inside the interval, or None."""
        hit = self.pts.successor(iv.left, strict=False)
        if hit is None or hit[0] > iv.right:
            return None
        return hit[1]

    def feasible(self):
        return self.feas.has_hitting_set()

    def _after(self, patch):
        self.meter.tick()
        if self.meter.due() and self.feasible():
            self.recomputes += 1
            self._adopt(interval_hitting_set_greedy(self.pts, self.tree))
            if self.on_rebuild is not None:
                self.on_rebuild(self)
        else:
            patch()

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        x = _point_x(coords)
        self.points[pid] = x
        self.pts.insert(pid, x)
        self.feas.insert_point(pid, x)

        def patch():
            self.chosen[pid] += 1

        self._after(patch)

    def delete_point(self, pid):
        try:
            x = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        self.pts.delete(pid)
        self.feas.delete_point(pid)
        # a deleted point cannot stay in the solution, whatever happens next
        self.chosen.pop(pid, None)

        def patch():
            for hit in self.pts.around(x, pid):
                if hit is not None:
                    self.chosen[hit[1]] += 1

        self._after(patch)
        return x

    def insert_range(self, rid, rng):
        if rid in self.ivals:
            raise DuplicateId(rid)
        iv = self._check_interval(rng)
        self.ivals[rid] = iv
        self.tree.insert(rid, iv)
        self.feas.insert_interval(rid, iv)

        def patch():
            pid = self.point_in(iv)
            if pid is not None:
                self.chosen[pid] += 1

        self._after(patch)

    def delete_range(self, rid):
        try:
            iv = self.ivals.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        self.tree.delete(rid)
        self.feas.delete_interval(rid)
        self._after(lambda: None)
        return iv

    def maintained(self):
        """The patched solution, exposed even while some interval cannot be hit."""
        return SolutionView(dict(self.chosen))

    def solution(self):
        if not self.feasible():
            return NO_COVER
        return self.maintained()


class PartialQuadSCEngine(Engine):
    """Constant-factor quadrant set cover with a fixed quadrant family.

    Only point updates are accepted.  The output-sensitive cover is rerun over
    the covered points; inserted points are patched in with any quadrant that
    contains them.
    """

    problem = "quadrant-sc"
    dynamic_ranges = False

    def __init__(self, epsilon=1.0, points=None, ranges=None, mu=OS_MU):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        self.epsilon = epsilon
        self.mu = mu
        self.quads: dict = {}
        for qid, q in (ranges or {}).items():
            if not isinstance(q, Quadrant):
                raise UnsupportedUpdate(f"expected a quadrant, got {q!r}")
            self.quads[qid] = q
        self.counter = UncoveredCounter(self.quads)
        self.points: dict = {}
        self.idx = QuadrantIndex()
        for qid, q in sorted(self.quads.items()):
            self.idx.insert_quadrant(qid, q)
        for pid, p in sorted((points or {}).items()):
            self._add_point(pid, tuple(p))
        self.meter = StabilityMeter(epsilon, mu)
        self.recomputes = 0
        self.on_rebuild = None
        self._adopt()

    def _add_point(self, pid, p):
        self.points[pid] = p
        self.counter.insert_point(pid, p)
        # the index only ever sees coverable points
        if pid not in self.counter.uncovered:
            self.idx.insert_point(pid, p)

    def _adopt(self):
        self.chosen = Counter(quadrant_set_cover_os(self.idx).counts())
        self.meter.reset(sum(self.chosen.values()))

    def feasible(self):
        return self.counter.has_cover()

    def _after(self, patch):
        self.meter.tick()
        if self.meter.due() and self.feasible():
            self.recomputes += 1
            self._adopt()
            if self.on_rebuild is not None:
                self.on_rebuild(self)
        else:
            patch()

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        p = tuple(coords)
        self._add_point(pid, p)

        def patch():
            qid = self.counter.index.stabbing(p[0], p[1])
            if qid is not None:
                self.chosen[qid] += 1

        self._after(patch)

    def delete_point(self, pid):
        try:
            p = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        if pid in self.idx.points:
            self.idx.delete_point(pid)
        self.counter.delete_point(pid)
        self._after(lambda: None)
        return p

    def insert_range(self, rid, rng):
        raise UnsupportedUpdate("the quadrant family is fixed after construction")

    def delete_range(self, rid):
        raise UnsupportedUpdate("the quadrant family is fixed after construction")

    def maintained(self):
        return SolutionView(dict(self.chosen))

    def solution(self):
        if not self.feasible():
            return NO_COVER
        return self.maintained()


def restrict_to_feasible(instance: ProblemInstance) -> ProblemInstance:
    """Drop the points no range covers (cover) or the ranges no point hits (hitting)."""
    out = ProblemInstance(instance.kind, reuse_ids=True)
    pts, rngs = instance.points, instance.ranges
    if instance.kind == "hitting":
        out.points = dict(pts)
        out.ranges = {rid: r for rid, r in rngs.items()
                      if any(r.contains(p) for p in pts.values())}
    else:
        out.ranges = dict(rngs)
        out.points = {pid: p for pid, p in pts.items()
                      if any(r.contains(p) for r in rngs.values())}
    return out


def quasi_optimum(instance: ProblemInstance, budget=DEFAULT_BUDGET):
    """Optimum of the instance once infeasible points or ranges are dropped."""
    sub = restrict_to_feasible(instance)
    if all(isinstance(r, Interval) for r in sub.ranges.values()):
        return exact_interval_opt(sub)
    return exact_opt_bruteforce(sub, budget)
