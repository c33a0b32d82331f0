"""Dynamic search structures shared by the static solvers and the dynamic engines.

Every structure supports logarithmic (expected) updates and answers its
queries in polylogarithmic time.  Ties between equal coordinates are broken by
element id, so every "leftmost", "topmost" or "rightmost" answer is unique.
"""

from __future__ import annotations

from sortedcontainers import SortedList

from .core import NEG_INF, POS_INF, DIRECTIONS, InvalidRange, Quadrant, UnsupportedUpdate
from .instrument import OPS
from .threesided import RangeEmptiness2D, ThreeSidedRangeMin
from .treap import Treap

__all__ = [
    "OrderedPointSet1D", "IntervalMaxRightTree", "IntervalMinRightTree",
    "HittingFeasibilityTree", "QuadrantHeightTree", "QuadrantDirectoryTree",
    "ThreeSidedRangeMin", "RangeEmptiness2D", "PhiTree", "FrameIndex",
    "QuadrantVertexIndex", "QuadrantIndex", "SpecialQuadrantFinder", "RectCoverFinder",
    "UncoveredCounter", "compute_sigma", "leftmost_point_right_of",
    "rightmost_point_left_of", "best_interval_containing",
    "interval_containing_interval", "has_hitting_set", "height", "phi",
    "three_sided_min", "special_quadrant", "cell_mode", "reflect", "FRAME_SIGNS",
]


def _max(a, b):
    return a if a >= b else b


def _min(a, b):
    return a if a <= b else b


def _leaf_val(key, val):
    return val


# ---------------------------------------------------------------------------
# one dimension


class OrderedPointSet1D:
    """Points on a line keyed by (coordinate, id)."""

    def __init__(self, items=()):
        self._s = SortedList((c, i) for i, c in items)
        self._coord = {i: c for i, c in items}
        OPS.count += len(self._coord)

    def __len__(self):
        return len(self._s)

    def __contains__(self, pid):
        return pid in self._coord

    def insert(self, pid, coord):
        if pid in self._coord:
            raise KeyError(pid)
        self._coord[pid] = coord
        self._s.add((coord, pid))

    def delete(self, pid):
        c = self._coord.pop(pid)
        self._s.remove((c, pid))
        return c

    def coord(self, pid):
        return self._coord[pid]

    def successor(self, q, strict=True):
        """(coord, id) of the leftmost point right of q (at q too if not strict)."""
        s = self._s
        i = s.bisect_left((q, POS_INF)) if strict else s.bisect_left((q,))
        OPS.count += 1
        return s[i] if i < len(s) else None

    def predecessor(self, q, strict=True):
        s = self._s
        i = s.bisect_left((q,)) if strict else s.bisect_left((q, POS_INF))
        OPS.count += 1
        return s[i - 1] if i > 0 else None

    def around(self, coord, pid):
        """Neighbours in (coordinate, id) order of a key, which need not be present."""
        s = self._s
        key = (coord, pid)
        i = s.bisect_left(key)
        j = s.bisect_right(key)
        OPS.count += 1
        return (s[i - 1] if i > 0 else None), (s[j] if j < len(s) else None)

    def items(self):
        return list(self._s)


def leftmost_point_right_of(t: OrderedPointSet1D, q):
    hit = t.successor(q)
    return None if hit is None else hit[0]


def rightmost_point_left_of(t: OrderedPointSet1D, q):
    hit = t.predecessor(q)
    return None if hit is None else hit[0]


class _IntervalTree:
    """Intervals keyed by (left, id), each subtree summarised by an extreme (right, id)."""

    _combine = None

    def __init__(self):
        self.tree = Treap(leaf=_leaf_val, combine=self._combine)
        self.ivals: dict = {}

    def __len__(self):
        return len(self.ivals)

    def __contains__(self, iid):
        return iid in self.ivals

    def insert(self, iid, ival):
        if iid in self.ivals:
            raise KeyError(iid)
        self.ivals[iid] = ival
        self.tree.insert((ival[0], iid), (ival[1], iid))

    def delete(self, iid):
        ival = self.ivals.pop(iid)
        self.tree.delete((ival[0], iid))
        return ival

    def load(self, items):
        """Replace the contents with (id, interval) pairs in one pass."""
        self.ivals = dict(items)
        self.tree.build(sorted(((iv[0], i), (iv[1], i)) for i, iv in self.ivals.items()))

    def check(self):
        return self.tree.check()


class IntervalMaxRightTree(_IntervalTree):
    _combine = staticmethod(_max)

    def best_containing(self, q):
        """Id of the interval containing q whose right end is largest, or None."""
        agg = self.tree.fold(hi=(q, POS_INF))
        if agg is None or agg[0] < q:
            return None
        return agg[1]

    def containing_interval(self, a, b):
        """Id of some interval containing [a, b], or None."""
        agg = self.tree.fold(hi=(a, POS_INF))
        if agg is None or agg[0] < b:
            return None
        return agg[1]


class IntervalMinRightTree(_IntervalTree):
    _combine = staticmethod(_min)

    def min_right_after(self, a):
        """(right, id) minimising the right end among intervals with left > a."""
        return self.tree.fold(lo=(a, POS_INF), lo_open=True)


def best_interval_containing(t: IntervalMaxRightTree, q):
    iid = t.best_containing(q)
    return None if iid is None else t.ivals[iid]


def interval_containing_interval(t: IntervalMaxRightTree, J):
    iid = t.containing_interval(J[0], J[1])
    return None if iid is None else t.ivals[iid]


class HittingFeasibilityTree:
    """Tracks whether every interval contains a point.

    The points, padded with sentinels at both infinities, cut the line into
    open gaps.  A gap is bad when some interval fits strictly inside it; the
    instance has a hitting set exactly when no gap is bad.
    """

    _LO = (NEG_INF, NEG_INF)
    _HI = (POS_INF, POS_INF)

    def __init__(self):
        self.pts = SortedList([self._LO, self._HI])
        self.coord: dict = {}
        self.ivals = IntervalMinRightTree()
        self.bad: dict = {self._LO: False}
        self.nbad = 0

    def _set(self, key, flag):
        old = self.bad.get(key, False)
        self.bad[key] = flag
        self.nbad += flag - old

    def _recompute(self, key):
        i = self.pts.index(key)
        nxt = self.pts[i + 1]
        m = self.ivals.min_right_after(key[0])
        self._set(key, m is not None and m[0] < nxt[0])

    def _owner(self, left):
        # gap owning an interval: the last point strictly left of it
        i = self.pts.bisect_left((left,))
        return self.pts[i - 1]

    def insert_point(self, pid, x):
        if pid in self.coord:
            raise KeyError(pid)
        key = (x, pid)
        self.coord[pid] = x
        self.pts.add(key)
        i = self.pts.index(key)
        self._recompute(self.pts[i - 1])
        self._recompute(key)

    def delete_point(self, pid):
        x = self.coord.pop(pid)
        key = (x, pid)
        i = self.pts.index(key)
        prev = self.pts[i - 1]
        self.pts.remove(key)
        self._set(key, False)
        del self.bad[key]
        self._recompute(prev)

    def insert_interval(self, iid, ival):
        if ival[0] > ival[1]:
            raise InvalidRange(ival)
        self.ivals.insert(iid, ival)
        self._recompute(self._owner(ival[0]))

    def delete_interval(self, iid):
        ival = self.ivals.delete(iid)
        self._recompute(self._owner(ival[0]))
        return ival

    def has_hitting_set(self):
        return self.nbad == 0


def has_hitting_set(t: HittingFeasibilityTree) -> bool:
    return t.has_hitting_set()


# ---------------------------------------------------------------------------
# quadrant helpers

# per frame: signs applied to (x, y) so that the frame's direction becomes SE
FRAME_SIGNS = {"SE": (1, 1), "SW": (-1, 1), "NE": (1, -1), "NW": (-1, -1)}
_FLIP_X = {"SE": "SW", "SW": "SE", "NE": "NW", "NW": "NE"}
_FLIP_Y = {"SE": "NE", "NE": "SE", "SW": "NW", "NW": "SW"}


def reflect(direction, sx, sy):
    if sx < 0:
        direction = _FLIP_X[direction]
    if sy < 0:
        direction = _FLIP_Y[direction]
    return direction


class QuadrantHeightTree:
    """Upper envelope height of SW (or SE) quadrants at a given x."""

    def __init__(self, direction="SW"):
        if direction not in ("SW", "SE"):
            raise ValueError(direction)
        self.direction = direction
        self.tree = Treap(leaf=_leaf_val, combine=_max)
        self.verts: dict = {}

    def __len__(self):
        return len(self.verts)

    def insert(self, qid, x, y):
        self.verts[qid] = (x, y)
        self.tree.insert((x, qid), (y, qid))

    def delete(self, qid):
        x, _ = self.verts.pop(qid)
        self.tree.delete((x, qid))

    def height(self, x):
        if self.direction == "SW":
            agg = self.tree.fold(lo=(x,))
        else:
            agg = self.tree.fold(hi=(x, POS_INF))
        return NEG_INF if agg is None else agg[0]


def height(t: QuadrantHeightTree, x):
    return t.height(x)


class QuadrantDirectoryTree:
    """Quadrants keyed by one vertex coordinate, summarised by the extreme other coordinate.

    ``key_axis`` is 0 (x) or 1 (y); the summary is the max (or min) of
    (other coordinate, id).
    """

    def __init__(self, key_axis, use_max):
        self.key_axis = key_axis
        self.use_max = use_max
        self.tree = Treap(leaf=_leaf_val, combine=_max if use_max else _min)
        self.verts: dict = {}

    def __len__(self):
        return len(self.verts)

    def insert(self, qid, x, y):
        self.verts[qid] = (x, y)
        if self.key_axis == 0:
            self.tree.insert((x, qid), (y, qid))
        else:
            self.tree.insert((y, qid), (x, qid))

    def delete(self, qid):
        x, y = self.verts.pop(qid)
        self.tree.delete((x, qid) if self.key_axis == 0 else (y, qid))

    def fold(self, **kw):
        return self.tree.fold(**kw)

    def first_where(self, test, lo=None, lo_open=False):
        node = self.tree.find_first(test, lo, lo_open)
        return None if node is None else node.key[1]

    def last_where(self, test, hi=None, hi_open=False):
        node = self.tree.find_last(test, hi, hi_open)
        return None if node is None else node.key[1]

    def check(self):
        return self.tree.check()


# ---------------------------------------------------------------------------
# leftmost covered point above a height


class PhiTree:
    """Points of S and vertices of SE quadrants in one tree keyed by y.

    Each subtree u keeps its smallest and largest key, its leftmost quadrant
    L(u) and a(u), the leftmost point of u covered by some quadrant of u.  When
    two subtrees meet, the points of the lower one are covered by quadrants of
    the upper one exactly when they lie right of the upper one's leftmost
    vertex, and the leftmost such point is a 3-sided query on the points.
    """

    def __init__(self):
        self.q3 = ThreeSidedRangeMin()
        self.tree = Treap(leaf=self._leaf, combine=self._combine)
        self.points: dict = {}
        self.verts: dict = {}

    @staticmethod
    def _leaf(key, val):
        if key[1] == 0:
            return (key, key, None, None, 1)
        return (key, key, val, None, 0)

    def _combine(self, A, B):
        al, bl = A[2], B[2]
        if al is None or (bl is not None and bl < al):
            lq = bl
        else:
            lq = al
        a, b = A[3], B[3]
        if a is None or (b is not None and b < a):
            a = b
        if bl is not None and A[4]:
            c = self.q3.query_keys(bl[0], A[0], A[1])
            if c is not None and (a is None or c < a):
                a = c
        return (A[0], B[1], lq, a, A[4] + B[4])

    def insert_point(self, pid, x, y):
        if pid in self.points:
            raise KeyError(pid)
        self.points[pid] = (x, y)
        key = (y, 0, pid)
        self.q3.insert(pid, x, key, (x, y, pid))
        self.tree.insert(key, None)

    def delete_point(self, pid):
        x, y = self.points.pop(pid)
        self.q3.delete(pid)
        self.tree.delete((y, 0, pid))

    def insert_vertex(self, qid, x, y):
        if qid in self.verts:
            raise KeyError(qid)
        self.verts[qid] = (x, y)
        self.tree.insert((y, 1, qid), (x, qid))

    def delete_vertex(self, qid):
        x, y = self.verts.pop(qid)
        self.tree.delete((y, 1, qid))

    def phi(self, ytilde):
        """(x, y, id) of the leftmost covered point with y > ytilde, or None."""
        agg = self.tree.fold(lo=(ytilde, POS_INF), lo_open=True)
        return None if agg is None else agg[3]

    def check(self):
        return self.tree.check()


def phi(t: PhiTree, ytilde):
    return t.phi(ytilde)


def three_sided_min(t: ThreeSidedRangeMin, x0, y1, y2):
    return t.three_sided_min(x0, y1, y2)


# ---------------------------------------------------------------------------
# reflected frames for the output-sensitive quadrant cover


def _le_x(ax):
    return lambda agg: agg[0] <= ax


class FrameIndex:
    """Quadrant and point structures seen through one reflection.

    In the frame, the quadrants of the frame's own direction play the SE role.
    All coordinates handed in and out are frame coordinates.
    """

    def __init__(self, name="SE"):
        self.name = name
        self.sx, self.sy = FRAME_SIGNS[name]
        self.se_x = QuadrantDirectoryTree(0, True)    # topmost SE left of x
        self.sw_x = QuadrantDirectoryTree(0, True)    # SW height
        self.sw_y = QuadrantDirectoryTree(1, True)    # rightmost SW above y
        self.ne_y = QuadrantDirectoryTree(1, False)   # NE membership and topmost
        self.nw_y = QuadrantDirectoryTree(1, True)    # NW membership and rightmost
        self.xkeys = SortedList()                     # x keys of SW and SE
        self.phi_tree = PhiTree()
        self.quads: dict = {}

    def to_frame(self, x, y):
        return (self.sx * x, self.sy * y)

    # updates take original coordinates
    def insert_point(self, pid, x, y):
        fx, fy = self.to_frame(x, y)
        self.phi_tree.insert_point(pid, fx, fy)

    def delete_point(self, pid):
        self.phi_tree.delete_point(pid)

    def insert_quadrant(self, qid, q: Quadrant):
        d = reflect(q.direction, self.sx, self.sy)
        x, y = self.to_frame(q.x, q.y)
        self.quads[qid] = (d, x, y)
        if d == "SE":
            self.se_x.insert(qid, x, y)
            self.xkeys.add((x, qid))
            self.phi_tree.insert_vertex(qid, x, y)
        elif d == "SW":
            self.sw_x.insert(qid, x, y)
            self.sw_y.insert(qid, x, y)
            self.xkeys.add((x, qid))
        elif d == "NE":
            self.ne_y.insert(qid, x, y)
        else:
            self.nw_y.insert(qid, x, y)

    def delete_quadrant(self, qid):
        d, x, y = self.quads.pop(qid)
        if d == "SE":
            self.se_x.delete(qid)
            self.xkeys.remove((x, qid))
            self.phi_tree.delete_vertex(qid)
        elif d == "SW":
            self.sw_x.delete(qid)
            self.sw_y.delete(qid)
            self.xkeys.remove((x, qid))
        elif d == "NE":
            self.ne_y.delete(qid)
        else:
            self.nw_y.delete(qid)

    # queries in frame coordinates
    def has_se(self):
        return len(self.se_x) > 0

    def ht_se(self, x):
        agg = self.se_x.fold(hi=(x, POS_INF))
        return NEG_INF if agg is None else agg[0]

    def ht_sw(self, x):
        agg = self.sw_x.fold(lo=(x,))
        return NEG_INF if agg is None else agg[0]

    def phi(self, ytilde):
        return self.phi_tree.phi(ytilde)

    def up_se(self, ax, ay):
        """Topmost SE quadrant containing (ax, ay)."""
        agg = self.se_x.fold(hi=(ax, POS_INF))
        if agg is None or agg[0] < ay:
            return None
        return agg[1]

    def right_sw(self, ax, ay):
        """Rightmost SW quadrant containing (ax, ay)."""
        agg = self.sw_y.fold(lo=(ay,))
        if agg is None or agg[0] < ax:
            return None
        return agg[1]

    def in_ne(self, ax, ay):
        agg = self.ne_y.fold(hi=(ay, POS_INF))
        return agg is not None and agg[0] <= ax

    def up_ne(self, ax, ay):
        """Topmost NE quadrant containing (ax, ay)."""
        return self.ne_y.last_where(_le_x(ax), hi=(ay, POS_INF))

    def right_nw(self, ax, ay):
        agg = self.nw_y.fold(hi=(ay, POS_INF))
        if agg is None or agg[0] < ax:
            return None
        return agg[1]

    def vertex(self, qid):
        _, x, y = self.quads[qid]
        return x, y


def compute_sigma(frame: FrameIndex):
    """End point (x, y) of the SW envelope's contact with the SE staircase.

    Returns None when the frame has no SE quadrant.  The height comparison
    flips exactly once along the merged x keys, so a binary search over the
    keys with a probe just right (or left) of the candidate pins it down.
    """
    if not frame.has_se():
        return None
    keys = frame.xkeys
    ht_sw, ht_se = frame.ht_sw, frame.ht_se

    def higher(x):
        return ht_sw(x) >= ht_se(x)

    def classify(i):
        p = keys[i][0]
        if higher(p):
            j = keys.bisect_left((p, POS_INF))
            probe = (p + keys[j][0]) / 2 if j < len(keys) else p + 1
            return -1 if higher(probe) else 0
        j = keys.bisect_left((p,))
        probe = (keys[j - 1][0] + p) / 2 if j > 0 else p - 1
        return 1 if not higher(probe) else 0

    lo, hi = 0, len(keys) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        c = classify(mid)
        OPS.count += 1
        if c == 0:
            xs = keys[mid][0]
            return (xs, min(ht_sw(xs), ht_se(xs)))
        if c < 0:
            lo = mid + 1
        else:
            hi = mid - 1
    raise AssertionError("height comparison is not monotone along the keys")


# ---------------------------------------------------------------------------
# grid-cell queries over quadrant vertices (original coordinates)

_MODES = ("left", "right", "top", "bottom")


class QuadrantVertexIndex:
    """Per direction: vertices keyed by x with the extreme y, and keyed by y with the extreme x.

    S* directions keep the max y, N* the min y; *E directions keep the min x,
    *W the max x.
    """

    def __init__(self):
        self.by_x = {d: QuadrantDirectoryTree(0, d[0] == "S") for d in DIRECTIONS}
        self.by_y = {d: QuadrantDirectoryTree(1, d[1] == "W") for d in DIRECTIONS}
        self.quads: dict = {}

    def __len__(self):
        return len(self.quads)

    def insert(self, qid, q: Quadrant):
        if qid in self.quads:
            raise KeyError(qid)
        self.quads[qid] = q
        self.by_x[q.direction].insert(qid, q.x, q.y)
        self.by_y[q.direction].insert(qid, q.x, q.y)

    def delete(self, qid):
        q = self.quads.pop(qid)
        self.by_x[q.direction].delete(qid)
        self.by_y[q.direction].delete(qid)
        return q

    def covering(self, x1, x2, y1, y2):
        """Id of a quadrant containing the box [x1, x2] x [y1, y2], or None.

        The same answer holds for the half-open box (x1, x2] x (y1, y2].
        """
        bx = self.by_x
        agg = bx["SE"].fold(hi=(x1, POS_INF))
        if agg is not None and agg[0] >= y2:
            return agg[1]
        agg = bx["SW"].fold(lo=(x2,))
        if agg is not None and agg[0] >= y2:
            return agg[1]
        agg = bx["NE"].fold(hi=(x1, POS_INF))
        if agg is not None and agg[0] <= y1:
            return agg[1]
        agg = bx["NW"].fold(lo=(x2,))
        if agg is not None and agg[0] <= y1:
            return agg[1]
        return None

    def stabbing(self, x, y):
        """Id of some quadrant containing the point, or None."""
        return self.covering(x, x, y, y)

    def special(self, cell, mode):
        """Extreme quadrant that meets the cell (x1, x2] x (y1, y2] in the given mode.

        A quadrant whose vertex lies outside the cell but which meets the cell
        without containing it cuts the cell with a single line; the mode names
        the side of the cell it keeps.  The extreme quadrant of a mode keeps
        the largest part, so it covers everything the others cover inside the
        cell.  Ties on the coordinate are broken by id in the same direction.
        """
        x1, x2, y1, y2 = cell
        bx, by = self.by_x, self.by_y
        if mode == "right":
            # SE: x in (x1, x2], y > y2; NE: x in (x1, x2], y <= y1; leftmost
            a = bx["SE"].first_where(lambda g: g[0] > y2, lo=(x1, POS_INF), lo_open=True)
            b = bx["NE"].first_where(lambda g: g[0] <= y1, lo=(x1, POS_INF), lo_open=True)
            cands = [q for q in (a, b) if q is not None and self.quads[q].x <= x2]
            return min(cands, key=lambda q: (self.quads[q].x, q), default=None)
        if mode == "left":
            # SW: x in (x1, x2), y > y2; NW: x in (x1, x2), y <= y1; rightmost
            a = bx["SW"].last_where(lambda g: g[0] > y2, hi=(x2,), hi_open=True)
            b = bx["NW"].last_where(lambda g: g[0] <= y1, hi=(x2,), hi_open=True)
            cands = [q for q in (a, b) if q is not None and self.quads[q].x > x1]
            return max(cands, key=lambda q: (self.quads[q].x, q), default=None)
        if mode == "bottom":
            # SE: x <= x1, y in (y1, y2); SW: x > x2, y in (y1, y2); topmost
            a = by["SE"].last_where(lambda g: g[0] <= x1, hi=(y2,), hi_open=True)
            b = by["SW"].last_where(lambda g: g[0] > x2, hi=(y2,), hi_open=True)
            cands = [q for q in (a, b) if q is not None and self.quads[q].y > y1]
            return max(cands, key=lambda q: (self.quads[q].y, q), default=None)
        if mode == "top":
            # NE: x <= x1, y in (y1, y2]; NW: x > x2, y in (y1, y2]; bottommost
            a = by["NE"].first_where(lambda g: g[0] <= x1, lo=(y1, POS_INF), lo_open=True)
            b = by["NW"].first_where(lambda g: g[0] > x2, lo=(y1, POS_INF), lo_open=True)
            cands = [q for q in (a, b) if q is not None and self.quads[q].y <= y2]
            return min(cands, key=lambda q: (self.quads[q].y, q), default=None)
        raise ValueError(f"unknown mode {mode!r}")


SpecialQuadrantFinder = QuadrantVertexIndex
RectCoverFinder = QuadrantVertexIndex


def special_quadrant(f: QuadrantVertexIndex, rect, mode):
    qid = f.special(rect, mode)
    return None if qid is None else f.quads[qid]


def cell_mode(q: Quadrant, cell):
    """How quadrant q meets the cell (x1, x2] x (y1, y2].

    Returns "outside", "contains", "inside" (vertex in the cell) or one of the
    four side modes.
    """
    x1, x2, y1, y2 = cell
    d, a, b = q
    in_x = x1 < a <= x2
    in_y = y1 < b <= y2
    if d[1] == "E":
        xcut, xnone, xall = in_x, a > x2, a <= x1
    else:
        xcut, xnone, xall = x1 < a < x2, a <= x1, a >= x2
    if d[0] == "S":
        ycut, ynone, yall = y1 < b < y2, b <= y1, b >= y2
    else:
        ycut, ynone, yall = in_y, b > y2, b <= y1
    if xnone or ynone:
        return "outside"
    if xall and yall:
        return "contains"
    if in_x and in_y:
        return "inside"
    if xcut:
        return "right" if d[1] == "E" else "left"
    return "bottom" if d[0] == "S" else "top"


class UncoveredCounter:
    """Number of points covered by no quadrant, for a fixed quadrant family."""

    def __init__(self, quadrants):
        self.index = QuadrantVertexIndex()
        for qid, q in quadrants.items():
            self.index.insert(qid, q)
        self.uncovered: set = set()
        self.points: dict = {}

    @property
    def count(self):
        return len(self.uncovered)

    def insert_point(self, pid, p):
        if pid in self.points:
            raise KeyError(pid)
        self.points[pid] = p
        if self.index.stabbing(p[0], p[1]) is None:
            self.uncovered.add(pid)

    def delete_point(self, pid):
        del self.points[pid]
        self.uncovered.discard(pid)

    def insert_range(self, *_):
        raise UnsupportedUpdate("the quadrant family is fixed")

    delete_range = insert_range

    def has_cover(self):
        return not self.uncovered


class QuadrantIndex:
    """Everything the output-sensitive quadrant cover reads: four frames plus emptiness over S."""

    def __init__(self):
        self.frames = {d: FrameIndex(d) for d in DIRECTIONS}
        self.empty = RangeEmptiness2D()
        self.points: dict = {}
        self.quads: dict = {}

    def insert_point(self, pid, p):
        if pid in self.points:
            raise KeyError(pid)
        self.points[pid] = p
        x, y = p
        for fr in self.frames.values():
            fr.insert_point(pid, x, y)
        self.empty.insert(pid, x, y)

    def delete_point(self, pid):
        p = self.points.pop(pid)
        for fr in self.frames.values():
            fr.delete_point(pid)
        self.empty.delete(pid)
        return p

    def insert_quadrant(self, qid, q: Quadrant):
        if qid in self.quads:
            raise KeyError(qid)
        self.quads[qid] = q
        for fr in self.frames.values():
            fr.insert_quadrant(qid, q)

    def delete_quadrant(self, qid):
        q = self.quads.pop(qid)
        for fr in self.frames.values():
            fr.delete_quadrant(qid)
        return q
