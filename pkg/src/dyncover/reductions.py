"""Unit-square and quadrant hitting-set problems wired onto quadrant set cover engines.

Unit-square set cover splits the plane into unit cells [k, k+1) x [m, m+1).
Inside one cell a unit square agrees with a quadrant, so every cell runs its
own quadrant set cover over its points and the clipped squares.  Hitting-set
problems are turned into set cover by point/range duality first.
"""

from __future__ import annotations

import math
from typing import Callable

from sortedcontainers import SortedDict

from .core import (DIRECTIONS, NO_COVER, DuplicateId, Engine, NoIntersection, Quadrant,
                   SolutionView, UnitSquare, UnknownId, UnsupportedUpdate)

OPPOSITE = {"SE": "NW", "NW": "SE", "SW": "NE", "NE": "SW"}

# factory(points, ranges) -> quadrant set cover engine over those elements
QuadFactory = Callable[[dict, dict], Engine]


def cell_of(p):
    return (math.floor(p[0]), math.floor(p[1]))


def cells_meeting(z: UnitSquare):
    """Unit cells the closed square meets (at most four)."""
    xs = range(math.floor(z.x), math.floor(z.x + 1) + 1)
    ys = range(math.floor(z.y), math.floor(z.y + 1) + 1)
    return [(i, j) for i in xs for j in ys]


def clip_square_to_quadrant(z: UnitSquare, cell) -> Quadrant:
    """A quadrant that agrees with the square on every point of the cell.

    A side-one square can constrain a side-one cell on at most one side per
    axis; the quadrant keeps the binding side of each axis.  When neither
    side binds the clip defaults to SE.
    """
    i, j = cell
    if not (z.x < i + 1 and z.x + 1 >= i and z.y < j + 1 and z.y + 1 >= j):
        raise NoIntersection(f"{z!r} misses cell {cell!r}")
    if z.x >= i:
        h, vx = "E", z.x
    else:
        h, vx = "W", z.x + 1
    if z.y <= j:
        v, vy = "S", z.y + 1
    else:
        v, vy = "N", z.y
    return Quadrant(v + h, vx, vy)


def square_centered_at(p) -> UnitSquare:
    return UnitSquare(p[0] - 0.5, p[1] - 0.5)


def dual_quadrant(p, direction) -> Quadrant:
    """Quadrant at p holding the vertices of every ``direction`` quadrant that contains p."""
    return Quadrant(OPPOSITE[direction], p[0], p[1])


class _Cell:
    __slots__ = ("points", "squares", "engine", "size", "failed")

    def __init__(self):
        self.points = set()
        self.squares = set()
        self.engine = None
        self.size = 0
        self.failed = False


class UnitGridDirectory(Engine):
    """Unit-square set cover as a disjoint union of per-cell quadrant set covers."""

    problem = "unitsq-sc"

    def __init__(self, factory: QuadFactory, points=None, ranges=None, dynamic_ranges=True):
        self.factory = factory
        self.dynamic_ranges = dynamic_ranges
        self.points: dict = {}
        self.squares: dict = {}
        self.cells = SortedDict()      # nonempty cells
        self.truly = SortedDict()      # cells holding a point
        self.m = 0
        self.s = 0
        seed_pts, seed_rng = {}, {}
        for pid, p in (points or {}).items():
            p = tuple(p)
            self.points[pid] = p
            seed_pts.setdefault(cell_of(p), {})[pid] = p
        for rid, z in (ranges or {}).items():
            z = self._check_square(z)
            self.squares[rid] = z
            for c in cells_meeting(z):
                seed_rng.setdefault(c, {})[rid] = clip_square_to_quadrant(z, c)
        for c in set(seed_pts) | set(seed_rng):
            cell = _Cell()
            cell.points.update(seed_pts.get(c, ()))
            cell.squares.update(seed_rng.get(c, ()))
            cell.engine = factory(seed_pts.get(c, {}), seed_rng.get(c, {}))
            self.cells[c] = cell
            self._refresh(c)

    @staticmethod
    def _check_square(z):
        if not isinstance(z, UnitSquare):
            raise UnsupportedUpdate(f"expected a unit square, got {z!r}")
        return z

    def _open(self, c):
        cell = self.cells.get(c)
        if cell is None:
            cell = _Cell()
            cell.engine = self.factory({}, {})
            self.cells[c] = cell
        return cell

    def _refresh(self, c):
        """Bring m, s and the cell trees in line with the cell's current state."""
        cell = self.cells[c]
        self.s -= cell.size
        self.m -= cell.failed
        cell.size, cell.failed = 0, False
        if not cell.points and not cell.squares:
            del self.cells[c]
            self.truly.pop(c, None)
            return
        if not cell.points:
            self.truly.pop(c, None)
            return
        self.truly[c] = cell
        v = cell.engine.solution()
        if v is NO_COVER:
            cell.failed = True
            self.m += 1
        else:
            cell.size = v.size()
            self.s += cell.size

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        p = tuple(coords)
        self.points[pid] = p
        c = cell_of(p)
        cell = self._open(c)
        cell.points.add(pid)
        cell.engine.insert_point(pid, p)
        self._refresh(c)

    def delete_point(self, pid):
        try:
            p = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        c = cell_of(p)
        cell = self.cells[c]
        cell.points.discard(pid)
        cell.engine.delete_point(pid)
        self._refresh(c)
        return p

    def insert_range(self, rid, rng):
        if not self.dynamic_ranges:
            raise UnsupportedUpdate("the square family is fixed after construction")
        if rid in self.squares:
            raise DuplicateId(rid)
        z = self._check_square(rng)
        self.squares[rid] = z
        for c in cells_meeting(z):
            cell = self._open(c)
            cell.squares.add(rid)
            cell.engine.insert_range(rid, clip_square_to_quadrant(z, c))
            self._refresh(c)

    def delete_range(self, rid):
        if not self.dynamic_ranges:
            raise UnsupportedUpdate("the square family is fixed after construction")
        try:
            z = self.squares.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        for c in cells_meeting(z):
            cell = self.cells[c]
            cell.squares.discard(rid)
            cell.engine.delete_range(rid)
            self._refresh(c)
        return z

    def check_counters(self):
        """Recount m and s from scratch; used by tests."""
        m = s = 0
        for cell in self.truly.values():
            v = cell.engine.solution()
            if v is NO_COVER:
                m += 1
            else:
                s += v.size()
        return m == self.m and s == self.s

    def solution(self):
        if self.m:
            return NO_COVER
        views = {c: cell.engine.solution() for c, cell in self.truly.items()}

        def resolve(eid):
            z = self.squares.get(eid)
            if z is None:
                return ()
            return [views[c] for c in cells_meeting(z) if c in views]

        return SolutionView(children=list(views.values()), resolve=resolve)


class UnitSquareHittingSet(Engine):
    """Unit-square hitting set through centre duality onto unit-square set cover.

    Each square becomes its centre, a point to be covered; each candidate
    point becomes the unit square centred at it.
    """

    problem = "unitsq-hs"

    def __init__(self, factory: QuadFactory, points=None, ranges=None, dynamic_points=True):
        self.dynamic_points = dynamic_points
        self.points: dict = {pid: tuple(p) for pid, p in (points or {}).items()}
        self.squares: dict = {}
        for rid, z in (ranges or {}).items():
            self.squares[rid] = UnitGridDirectory._check_square(z)
        self.inner = UnitGridDirectory(
            factory,
            {rid: z.center for rid, z in self.squares.items()},
            {pid: square_centered_at(p) for pid, p in self.points.items()},
            dynamic_ranges=dynamic_points,
        )

    def insert_point(self, pid, coords):
        if pid in self.points:
            raise DuplicateId(pid)
        p = tuple(coords)
        self.inner.insert_range(pid, square_centered_at(p))
        self.points[pid] = p

    def delete_point(self, pid):
        if pid not in self.points:
            raise UnknownId(pid)
        self.inner.delete_range(pid)
        return self.points.pop(pid)

    def insert_range(self, rid, rng):
        if rid in self.squares:
            raise DuplicateId(rid)
        z = UnitGridDirectory._check_square(rng)
        self.squares[rid] = z
        self.inner.insert_point(rid, z.center)

    def delete_range(self, rid):
        try:
            z = self.squares.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        self.inner.delete_point(rid)
        return z

    def solution(self):
        return self.inner.solution()


class QuadrantHittingSet(Engine):
    """Quadrant hitting set as four quadrant set covers, one per direction.

    For quadrants of one direction d, a point p lies in quadrant Q exactly when
    the vertex of Q lies in the opposite-direction quadrant at p.  So each
    class becomes a set cover of its vertices by the dual quadrants of the
    candidate points.
    """

    problem = "quadrant-hs"

    def __init__(self, factory: QuadFactory, points=None, ranges=None, dynamic_points=True):
        self.dynamic_points = dynamic_points
        self.points: dict = {pid: tuple(p) for pid, p in (points or {}).items()}
        self.quads: dict = {}
        for rid, q in (ranges or {}).items():
            self.quads[rid] = self._check_quadrant(q)
        self.classes = {}
        for d in DIRECTIONS:
            verts = {rid: q.vertex for rid, q in self.quads.items() if q.direction == d}
            duals = {pid: dual_quadrant(p, d) for pid, p in self.points.items()}
            self.classes[d] = factory(verts, duals)

    @staticmethod
    def _check_quadrant(q):
        if not isinstance(q, Quadrant):
            raise UnsupportedUpdate(f"expected a quadrant, got {q!r}")
        return q

    def insert_point(self, pid, coords):
        if not self.dynamic_points:
            raise UnsupportedUpdate("the candidate points are fixed after construction")
        if pid in self.points:
            raise DuplicateId(pid)
        p = tuple(coords)
        for d, eng in self.classes.items():
            eng.insert_range(pid, dual_quadrant(p, d))
        self.points[pid] = p

    def delete_point(self, pid):
        if not self.dynamic_points:
            raise UnsupportedUpdate("the candidate points are fixed after construction")
        if pid not in self.points:
            raise UnknownId(pid)
        for eng in self.classes.values():
            eng.delete_range(pid)
        return self.points.pop(pid)

    def insert_range(self, rid, rng):
        if rid in self.quads:
            raise DuplicateId(rid)
        q = self._check_quadrant(rng)
        self.quads[rid] = q
        self.classes[q.direction].insert_point(rid, q.vertex)

    def delete_range(self, rid):
        try:
            q = self.quads.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        self.classes[q.direction].delete_point(rid)
        return q

    def solution(self):
        views = []
        for eng in self.classes.values():
            v = eng.solution()
            if v is NO_COVER:
                return NO_COVER
            views.append(v)
        return SolutionView(children=views)


def unitsq_sc_engine(factory: QuadFactory, points=None, ranges=None, dynamic_ranges=True):
    return UnitGridDirectory(factory, points, ranges, dynamic_ranges)


def unitsq_hs_engine(factory: QuadFactory, points=None, ranges=None, dynamic_points=True):
    return UnitSquareHittingSet(factory, points, ranges, dynamic_points)


def quadrant_hs_engine(factory: QuadFactory, points=None, ranges=None, dynamic_points=True):
    return QuadrantHittingSet(factory, points, ranges, dynamic_points)
