"""Bootstrapped (1+eps)-approximate dynamic interval set cover.

A node of depth d cuts the line into r portions, each with about f points and
interval endpoints, and keeps one depth d-1 child per portion over the points
of the portion and the intervals that cut it without containing it.  A depth 0
node simply reruns the exact greedy on demand.

The answer is the exact greedy cover whenever that cover is small (at most
delta intervals).  Otherwise it is one containing interval per coverable
portion plus the children's covers of the uncoverable portions.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import Counter

from .core import (BUDGET_EXCEEDED, NEG_INF, NO_COVER, POS_INF, DuplicateId, Engine, Interval,
                   SolutionView, UnknownId, UnsupportedUpdate)
from .geom_index import IntervalMaxRightTree, OrderedPointSet1D
from .static_solvers import interval_set_cover_greedy


def equal_frequency_cuts(values, parts):
    """Separators splitting the sorted values into about ``parts`` groups of equal size.

    A separator sits halfway between two consecutive distinct values, so no
    value used for the cut lies on it.
    """
    vals = sorted(values)
    total = len(vals)
    if parts <= 1 or total == 0:
        return []
    chunk = math.ceil(total / parts)
    seps = []
    k = chunk
    while k < total:
        lo, hi = vals[k - 1], vals[k]
        if lo == hi:
            k = bisect_right(vals, lo)
            if k >= total:
                break
            hi = vals[k]
        seps.append((lo + hi) / 2)
        k += chunk
    return seps


def interval_alpha(depth):
    """Update-time exponent of a depth-d interval node."""
    return 1.0 / (depth + 1)


def interval_f(n, eps, depth):
    a = interval_alpha(depth)
    return min(n ** (1 - a) / eps ** a, n / 2)


def parts_for(n, f):
    if n <= 0:
        return 1
    return max(1, math.ceil(n / f))


class BootIntervalSetCover(Engine):
    problem = "interval-sc"

    def __init__(self, epsilon=0.5, depth=2, points=None, ranges=None, delta_override=None):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.epsilon = epsilon
        self.depth = depth
        self.delta_override = delta_override
        self.points: dict = dict(points or {})
        self.ivals: dict = {}
        for rid, iv in (ranges or {}).items():
            self.ivals[rid] = self._check_interval(iv)
        self.rebuilds = 0
        self.last_path = None
        self.on_rebuild = None
        self._build()

    @staticmethod
    def _check_interval(iv):
        if not isinstance(iv, Interval):
            raise UnsupportedUpdate(f"expected an interval, got {iv!r}")
        return iv

    # ---- construction --------------------------------------------------

    def _build(self):
        self._cache = None
        self.ops = 0
        self.pts = OrderedPointSet1D(list(self.points.items()))
        self.tree = IntervalMaxRightTree()
        self.tree.load(self.ivals.items())
        self.seps = []
        self.children = []
        n = len(self.points) + len(self.ivals)
        self.n_build = n
        if self.depth == 0:
            self.f = float(max(n, 1))
            self.period = None
            return
        self.f = interval_f(n, self.epsilon, self.depth) if n else 1.0
        self.period = max(1, math.ceil(self.f))
        r = parts_for(n, self.f)
        values = list(self.points.values())
        for iv in self.ivals.values():
            values.append(iv.left)
            values.append(iv.right)
        self.seps = equal_frequency_cuts(values, r)
        parts = len(self.seps) + 1
        pts = [dict() for _ in range(parts)]
        ivs = [dict() for _ in range(parts)]
        for pid, x in sorted(self.points.items()):
            pts[self.locate(x)][pid] = x
        for rid, iv in sorted(self.ivals.items()):
            for k in self.owners(iv):
                ivs[k][rid] = iv
        child_eps = self.epsilon / 2
        self.children = [
            BootIntervalSetCover(child_eps, self.depth - 1, pts[k], ivs[k])
            for k in range(parts)
        ]

    def rebuild(self):
        self.rebuilds += 1
        self._build()
        if self.on_rebuild is not None:
            self.on_rebuild(self)

    # ---- partition -----------------------------------------------------

    @property
    def r(self):
        return len(self.seps) + 1

    def locate(self, x):
        """Index of the portion (s_{i-1}, s_i] holding x."""
        return bisect_left(self.seps, x)

    def bounds(self, k):
        seps = self.seps
        lo = seps[k - 1] if k > 0 else NEG_INF
        hi = seps[k] if k < len(seps) else POS_INF
        return lo, hi

    def owners(self, iv):
        """Portions the interval meets without containing (at most two)."""
        i = self.locate(iv.left)
        j = self.locate(iv.right)
        if i == j:
            return (i,)
        lo, hi = self.bounds(j)
        if iv.right >= hi and iv.left <= lo:
            return (i,)
        return (i, j)

    # ---- updates -------------------------------------------------------

    def _tick(self):
        self._cache = None
        self.ops += 1
        if self.period is not None and self.ops >= self.period:
            self.rebuild()

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        x = coords[0] if isinstance(coords, tuple) else coords
        self.points[pid] = x
        self.pts.insert(pid, x)
        if self.children:
            self.children[self.locate(x)].insert_point(pid, x)
        self._tick()

    def delete_point(self, pid):
        try:
            x = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        self.pts.delete(pid)
        if self.children:
            self.children[self.locate(x)].delete_point(pid)
        self._tick()
        return x

    def insert_range(self, rid, rng):
        if rid in self.ivals:
            raise DuplicateId(rid)
        iv = self._check_interval(rng)
        self.ivals[rid] = iv
        self.tree.insert(rid, iv)
        for k in (self.owners(iv) if self.children else ()):
            self.children[k].insert_range(rid, iv)
        self._tick()

    def delete_range(self, rid):
        try:
            iv = self.ivals.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        self.tree.delete(rid)
        for k in (self.owners(iv) if self.children else ()):
            self.children[k].delete_range(rid)
        self._tick()
        return iv

    # ---- solution ------------------------------------------------------

    def delta(self):
        if self.delta_override is not None:
            return self.delta_override
        n = len(self.points) + len(self.ivals)
        eps = self.epsilon
        return math.ceil(min((6 + 2 * eps) * self.r / eps, n))

    def solution(self):
        if self._cache is None:
            self._cache = self._solve()
        return self._cache

    def _solve(self):
        if self.depth == 0:
            self.last_path = "exact"
            return interval_set_cover_greedy(self.pts, self.tree)
        res = interval_set_cover_greedy(self.pts, self.tree, budget=self.delta())
        if res is not BUDGET_EXCEEDED:
            self.last_path = "exact"
            return res
        self.last_path = "composite"
        witnesses = Counter()
        views = {}
        for k in range(self.r):
            lo, hi = self.bounds(k)
            w = self.tree.containing_interval(lo, hi)
            if w is not None:
                witnesses[w] += 1
                continue
            v = self.children[k].solution()
            if v is NO_COVER:
                return NO_COVER
            views[k] = v

        def resolve(eid):
            iv = self.ivals.get(eid)
            if iv is None:
                return ()
            ks = {self.locate(iv.left), self.locate(iv.right)}
            return [views[k] for k in ks if k in views]

        return SolutionView(dict(witnesses), [views[k] for k in sorted(views)], resolve)

    def coverable(self):
        """Portion indices that a single interval contains."""
        return [k for k in range(self.r) if self.tree.containing_interval(*self.bounds(k)) is not None]
