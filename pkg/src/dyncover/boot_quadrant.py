"""Bootstrapped constant-factor dynamic quadrant set cover.

A node of depth d lays an r x r grid over the plane, each row and column
holding about f points and vertices.  Cell (i, j) gets a depth d-1 child over
its points, the quadrants whose vertex lies in the cell and up to four
special quadrants: for each side of the cell, the extreme quadrant that cuts
the cell while keeping that side.  A depth 0 node reruns the output-sensitive
cover on demand.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import Counter

from .boot_interval import equal_frequency_cuts, parts_for
from .core import (BUDGET_EXCEEDED, NEG_INF, NO_COVER, POS_INF, DuplicateId, Engine, Quadrant,
                   SolutionView, UnknownId, UnsupportedUpdate)
from .geom_index import QuadrantIndex, QuadrantVertexIndex, cell_mode
from .static_solvers import quadrant_set_cover_os

# The output-sensitive cover returns at most OS_MULT * opt + OS_ADD quadrants,
# and nothing when there is nothing to cover, so OS_MU bounds its ratio.
OS_MULT = 12
OS_ADD = 16
OS_MU = OS_MULT + OS_ADD

SIDES = ("left", "right", "top", "bottom")


def quadrant_alpha(depth):
    a = 1.0
    for _ in range(depth):
        a = 2 * a / (1 + 2 * a)
    return a


def quadrant_f(n, eps, depth):
    a = quadrant_alpha(depth)
    raw = n ** (1 - a / 2) / math.sqrt(eps) ** a
    return min(max(raw, math.sqrt(n) / 2), n / 2)


def _better(mode, q, qid, cur, cid):
    """Whether quadrant q (id qid) is more extreme than cur for the given side."""
    if mode == "right":
        return (q.x, qid) < (cur.x, cid)
    if mode == "left":
        return (q.x, qid) > (cur.x, cid)
    if mode == "bottom":
        return (q.y, qid) > (cur.y, cid)
    return (q.y, qid) < (cur.y, cid)


class BootQuadrantSetCover(Engine):
    problem = "quadrant-sc"

    def __init__(self, epsilon=1.0, depth=1, points=None, ranges=None, delta_override=None,
                 mu=OS_MU):
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.epsilon = epsilon
        self.depth = depth
        self.mu = mu
        self.delta_override = delta_override
        self.points: dict = {pid: tuple(p) for pid, p in (points or {}).items()}
        self.quads: dict = {}
        for qid, q in (ranges or {}).items():
            self.quads[qid] = self._check_quadrant(q)
        self.rebuilds = 0
        self.last_path = None
        self.on_rebuild = None
        self._build()

    @staticmethod
    def _check_quadrant(q):
        if not isinstance(q, Quadrant):
            raise UnsupportedUpdate(f"expected a quadrant, got {q!r}")
        return q

    # ---- construction --------------------------------------------------

    def _build(self):
        self._cache = None
        self.ops = 0
        idx = QuadrantIndex()
        for pid, p in sorted(self.points.items()):
            idx.insert_point(pid, p)
        for qid, q in sorted(self.quads.items()):
            idx.insert_quadrant(qid, q)
        self.idx = idx
        self.cx, self.cy = [], []
        self.children = {}
        self.specials = {}
        n = len(self.points) + len(self.quads)
        self.n_build = n
        if self.depth == 0:
            self.f = float(max(n, 1))
            self.period = None
            self.vindex = None
            return
        self.f = quadrant_f(n, self.epsilon, self.depth) if n else 1.0
        self.period = max(1, math.ceil(self.f))
        r = parts_for(n, self.f)
        vindex = QuadrantVertexIndex()
        for qid, q in sorted(self.quads.items()):
            vindex.insert(qid, q)
        self.vindex = vindex
        xs = [p[0] for p in self.points.values()] + [q.x for q in self.quads.values()]
        ys = [p[1] for p in self.points.values()] + [q.y for q in self.quads.values()]
        self.cx = equal_frequency_cuts(xs, r)
        self.cy = equal_frequency_cuts(ys, r)
        pts = {c: {} for c in self.cells()}
        qs = {c: {} for c in self.cells()}
        for pid, p in sorted(self.points.items()):
            pts[self.locate(p[0], p[1])][pid] = p
        for qid, q in sorted(self.quads.items()):
            qs[self.locate(q.x, q.y)][qid] = q
        for c in self.cells():
            box = self.cell_box(c)
            picks = {}
            for mode in SIDES:
                s = vindex.special(box, mode)
                if s is not None:
                    picks[mode] = s
                    qs[c][s] = self.quads[s]
            self.specials[c] = picks
        child_eps = self.epsilon / 2
        for c in self.cells():
            self.children[c] = BootQuadrantSetCover(child_eps, self.depth - 1, pts[c], qs[c],
                                                    mu=self.mu)

    def rebuild(self):
        self.rebuilds += 1
        self._build()
        if self.on_rebuild is not None:
            self.on_rebuild(self)

    # ---- grid ----------------------------------------------------------

    @property
    def shape(self):
        return len(self.cy) + 1, len(self.cx) + 1

    def cells(self):
        rows, cols = self.shape
        return [(i, j) for i in range(rows) for j in range(cols)]

    def locate(self, x, y):
        """(row, column) of the cell (c_{j-1}, c_j] x (r_{i-1}, r_i] holding the point."""
        return bisect_left(self.cy, y), bisect_left(self.cx, x)

    def cell_box(self, c):
        i, j = c
        cx, cy = self.cx, self.cy
        x1 = cx[j - 1] if j > 0 else NEG_INF
        x2 = cx[j] if j < len(cx) else POS_INF
        y1 = cy[i - 1] if i > 0 else NEG_INF
        y2 = cy[i] if i < len(cy) else POS_INF
        return (x1, x2, y1, y2)

    def _cross(self, c):
        """Cells sharing a row or a column with c, c itself excluded."""
        i, j = c
        rows, cols = self.shape
        out = [(i, k) for k in range(cols) if k != j]
        out.extend((k, j) for k in range(rows) if k != i)
        return out

    # ---- updates -------------------------------------------------------

    def _tick(self):
        self._cache = None
        self.ops += 1
        if self.period is not None and self.ops >= self.period:
            self.rebuild()

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        p = tuple(coords)
        self.points[pid] = p
        self.idx.insert_point(pid, p)
        if self.children:
            self.children[self.locate(*p)].insert_point(pid, p)
        self._tick()

    def delete_point(self, pid):
        try:
            p = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        self.idx.delete_point(pid)
        if self.children:
            self.children[self.locate(*p)].delete_point(pid)
        self._tick()
        return p

    def insert_range(self, rid, rng):
        if rid in self.quads:
            raise DuplicateId(rid)
        q = self._check_quadrant(rng)
        self.quads[rid] = q
        self.idx.insert_quadrant(rid, q)
        if self.children:
            self.vindex.insert(rid, q)
            home = self.locate(q.x, q.y)
            self.children[home].insert_range(rid, q)
            for c in self._cross(home):
                mode = cell_mode(q, self.cell_box(c))
                if mode not in SIDES:
                    continue
                picks = self.specials[c]
                cur = picks.get(mode)
                if cur is None or _better(mode, q, rid, self.quads[cur], cur):
                    child = self.children[c]
                    if cur is not None:
                        child.delete_range(cur)
                    child.insert_range(rid, q)
                    picks[mode] = rid
        self._tick()

    def delete_range(self, rid):
        try:
            q = self.quads[rid]
        except KeyError:
            raise UnknownId(rid) from None
        self.idx.delete_quadrant(rid)
        if self.children:
            self.vindex.delete(rid)
            home = self.locate(q.x, q.y)
            self.children[home].delete_range(rid)
            for c in self._cross(home):
                picks = self.specials[c]
                for mode, s in list(picks.items()):
                    if s != rid:
                        continue
                    child = self.children[c]
                    child.delete_range(rid)
                    new = self.vindex.special(self.cell_box(c), mode)
                    if new is None:
                        del picks[mode]
                    else:
                        picks[mode] = new
                        child.insert_range(new, self.quads[new])
        del self.quads[rid]
        self._tick()
        return q

    # ---- solution ------------------------------------------------------

    def delta(self):
        if self.delta_override is not None:
            return self.delta_override
        n = len(self.points) + len(self.quads)
        rows, cols = self.shape
        eps = self.epsilon
        return math.ceil(min((8 * self.mu + 4 * eps + 2) * rows * cols / eps, n))

    def solution(self):
        if self._cache is None:
            self._cache = self._solve()
        return self._cache

    def _solve(self):
        if self.depth == 0:
            self.last_path = "os"
            return quadrant_set_cover_os(self.idx)
        res = quadrant_set_cover_os(self.idx, budget=self.mu * self.delta())
        if res is not BUDGET_EXCEEDED:
            self.last_path = "os"
            return res
        self.last_path = "composite"
        witnesses = Counter()
        views = {}
        shadow = Counter()
        for c in self.cells():
            w = self.vindex.covering(*self.cell_box(c))
            if w is not None:
                witnesses[w] += 1
                continue
            v = self.children[c].solution()
            if v is NO_COVER:
                return NO_COVER
            views[c] = v
            for s in self.specials[c].values():
                m = v.multiplicity(s)
                if m:
                    shadow[s] += m

        def resolve(eid):
            q = self.quads.get(eid)
            if q is None:
                return ()
            c = self.locate(q.x, q.y)
            return (views[c],) if c in views else ()

        return SolutionView(dict(witnesses), [views[c] for c in self.cells() if c in views],
                            resolve, dict(shadow))

    def coverable(self):
        return [c for c in self.cells() if self.vindex.covering(*self.cell_box(c)) is not None]
