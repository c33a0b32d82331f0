"""Output-sensitive solvers run on top of the dynamic indexes.

Each solver touches only as much of the index as the size of its answer
requires.  With a ``budget`` it gives up with BUDGET_EXCEEDED as soon as the
answer would need more than ``budget`` picks (intervals) or loop iterations
(quadrants).
"""

from __future__ import annotations

from collections import defaultdict

from .core import (BUDGET_EXCEEDED, DIRECTIONS, NEG_INF, NO_COVER, POS_INF, Engine,
                   MissingQuadrant, Quadrant, SolutionView, UnsupportedUpdate)
from .geom_index import (IntervalMaxRightTree, IntervalMinRightTree, OrderedPointSet1D,
                         QuadrantIndex, compute_sigma)
from .instrument import OPS


def interval_set_cover_greedy(points: OrderedPointSet1D, ivals: IntervalMaxRightTree, budget=None):
    """Minimum cover: cover the leftmost uncovered point with the interval reaching furthest right."""
    picks = []
    hit = points.successor(NEG_INF, strict=False)
    while hit is not None:
        iid = ivals.best_containing(hit[0])
        if iid is None:
            return NO_COVER
        if budget is not None and len(picks) >= budget:
            return BUDGET_EXCEEDED
        picks.append(iid)
        hit = points.successor(ivals.ivals[iid][1])
    return SolutionView(dict.fromkeys(picks, 1))


def interval_hitting_set_greedy(points: OrderedPointSet1D, ivals: IntervalMinRightTree, budget=None):
    """Minimum hitting set: stab the unhit interval ending first with the last point inside it."""
    picks = []
    last = NEG_INF
    while True:
        nxt = ivals.min_right_after(last)
        if nxt is None:
            break
        right, iid = nxt
        hit = points.predecessor(right, strict=False)
        if hit is None or hit[0] < ivals.ivals[iid][0]:
            return NO_COVER
        if budget is not None and len(picks) >= budget:
            return BUDGET_EXCEEDED
        picks.append(hit[1])
        last = hit[0]
    return SolutionView(dict.fromkeys(picks, 1))


# ---------------------------------------------------------------------------
# quadrants


def _need(qid):
    if qid is None:
        raise MissingQuadrant("a covered point has no containing quadrant in the index")
    return qid


def _cover_frame(fr, ans, budget, record):
    """Cover S within the union of the frame's SE quadrants; returns iterations used or None."""
    a = fr.phi(NEG_INF)
    if a is None:
        return 0
    sigma = compute_sigma(fr)
    sx, sy = sigma
    q = fr.right_sw(sx, sy) if sy != NEG_INF else None
    if q is not None:
        ans[q] = 1
    q = _need(fr.up_se(sx, sy))
    ans[q] = 1
    a = fr.phi(fr.vertex(q)[1])
    iters = 0
    while a is not None:
        if budget is not None and iters >= budget:
            return None
        iters += 1
        OPS.count += 1
        ax, ay = a[0], a[1]
        if record is not None:
            record.append((fr.sx * ax, fr.sy * ay, a[2]))
        if fr.in_ne(ax, ay):
            ans[_need(fr.up_ne(ax, ay))] = 1
            ans[_need(fr.up_se(ax, ay))] = 1
            break
        se = _need(fr.up_se(ax, ay))
        nw = fr.right_nw(ax, ay)
        if nw is not None:
            ans[nw] = 1
            ans[se] = 1
            vx, vy = fr.vertex(nw)
            q = _need(fr.up_se(vx, vy))
        else:
            q = se
        ans[q] = 1
        a = fr.phi(fr.vertex(q)[1])
    return iters


def uncovered_boxes(quads):
    """Decompose the complement of a union of quadrants into boxes.

    Yields (xlo, xhi, xlo_open, xhi_open, ylo, yhi); the y-range is always the
    open interval (ylo, yhi).  Vertical lines through vertices and the open
    slabs between them each contribute at most one box.
    """
    se, ne, sw, nw = (defaultdict(lambda: NEG_INF), defaultdict(lambda: POS_INF),
                      defaultdict(lambda: NEG_INF), defaultdict(lambda: POS_INF))
    for q in quads:
        d, x, y = q
        if d == "SE":
            se[x] = max(se[x], y)
        elif d == "NE":
            ne[x] = min(ne[x], y)
        elif d == "SW":
            sw[x] = max(sw[x], y)
        else:
            nw[x] = min(nw[x], y)
    xs = sorted(set(se) | set(ne) | set(sw) | set(nw))
    m = len(xs)
    # east quadrants active at x: vertex x <= x; prefix over xs
    e_lo, e_hi = [NEG_INF] * (m + 1), [POS_INF] * (m + 1)
    for i, x in enumerate(xs):
        e_lo[i + 1] = max(e_lo[i], se.get(x, NEG_INF))
        e_hi[i + 1] = min(e_hi[i], ne.get(x, POS_INF))
    # west quadrants active at x: vertex x >= x; suffix over xs
    w_lo, w_hi = [NEG_INF] * (m + 1), [POS_INF] * (m + 1)
    for i in range(m - 1, -1, -1):
        x = xs[i]
        w_lo[i] = max(w_lo[i + 1], sw.get(x, NEG_INF))
        w_hi[i] = min(w_hi[i + 1], nw.get(x, POS_INF))
    bounds = [NEG_INF] + xs + [POS_INF]
    for i in range(m + 1):
        # open slab between bounds[i] and bounds[i+1]: east active up to index i, west from i
        lo = max(e_lo[i], w_lo[i])
        hi = min(e_hi[i], w_hi[i])
        if lo < hi:
            yield (bounds[i], bounds[i + 1], True, True, lo, hi)
        if i < m:
            lo = max(e_lo[i + 1], w_lo[i])
            hi = min(e_hi[i + 1], w_hi[i])
            if lo < hi:
                yield (xs[i], xs[i], False, False, lo, hi)


def covers_all(idx: QuadrantIndex, qids) -> bool:
    """Whether the chosen quadrants cover every point of the index."""
    empty = idx.empty
    for xlo, xhi, lo_open, hi_open, ylo, yhi in uncovered_boxes(idx.quads[q] for q in qids):
        OPS.count += 1
        if empty.any_in(xlo, xhi, ylo, yhi, lo_open, hi_open, True, True):
            return False
    return True


def quadrant_set_cover_os(idx: QuadrantIndex, budget=None, record=None):
    """Constant-factor cover of S by quadrants, or NO_COVER / BUDGET_EXCEEDED.

    The same routine runs once per reflected frame, each covering the points
    inside the union of one direction's quadrants.  ``record``, if a dict, gets
    the loop's visited points per direction (original coordinates).
    """
    ans: dict = {}
    used = 0
    for d in DIRECTIONS:
        trail = None
        if record is not None:
            trail = record.setdefault(d, [])
        left = None if budget is None else budget - used
        iters = _cover_frame(idx.frames[d], ans, left, trail)
        if iters is None:
            return BUDGET_EXCEEDED
        used += iters
    if not covers_all(idx, ans):
        return NO_COVER
    return SolutionView(ans)


# ---------------------------------------------------------------------------
# recompute-per-query engines (depth-0 base and benchmark baseline)


class _LazyEngine(Engine):
    def __init__(self):
        self._cached = None

    def _touch(self):
        self._cached = None

    def solution(self):
        if self._cached is None:
            self._cached = self._solve()
        return self._cached


class NaiveIntervalSetCover(_LazyEngine):
    problem = "interval-sc"

    def __init__(self):
        super().__init__()
        self.points = OrderedPointSet1D()
        self.ivals = IntervalMaxRightTree()

    def insert_point(self, pid, coords):
        self.points.insert(pid, coords)
        self._touch()

    def delete_point(self, pid):
        self._touch()
        return self.points.delete(pid)

    def insert_range(self, rid, rng):
        self.ivals.insert(rid, rng)
        self._touch()

    def delete_range(self, rid):
        self._touch()
        return self.ivals.delete(rid)

    def _solve(self):
        return interval_set_cover_greedy(self.points, self.ivals)


class NaiveIntervalHittingSet(NaiveIntervalSetCover):
    problem = "interval-hs"

    def __init__(self):
        _LazyEngine.__init__(self)
        self.points = OrderedPointSet1D()
        self.ivals = IntervalMinRightTree()

    def _solve(self):
        return interval_hitting_set_greedy(self.points, self.ivals)


class NaiveQuadrantSetCover(_LazyEngine):
    problem = "quadrant-sc"

    def __init__(self):
        super().__init__()
        self.idx = QuadrantIndex()

    def insert_point(self, pid, coords):
        self.idx.insert_point(pid, tuple(coords))
        self._touch()

    def delete_point(self, pid):
        self._touch()
        return self.idx.delete_point(pid)

    def insert_range(self, rid, rng):
        if not isinstance(rng, Quadrant):
            raise UnsupportedUpdate(f"expected a quadrant, got {rng!r}")
        self.idx.insert_quadrant(rid, rng)
        self._touch()

    def delete_range(self, rid):
        self._touch()
        return self.idx.delete_quadrant(rid)

    def _solve(self):
        return quadrant_set_cover_os(self.idx)
