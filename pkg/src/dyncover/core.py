"""Geometric primitives, problem instances, update operations and multiset solutions."""

from __future__ import annotations

import enum
from collections import Counter
from typing import Callable, Iterable, Iterator, NamedTuple, Union

NEG_INF = float("-inf")
POS_INF = float("inf")

DIRECTIONS = ("SE", "SW", "NE", "NW")


class IdError(KeyError):
    """Base class for element-identifier violations."""


class UnknownId(IdError):
    pass


class DuplicateId(IdError):
    pass


class UnsupportedUpdate(ValueError):
    pass


class NoIntersection(ValueError):
    pass


class InvalidRange(ValueError):
    pass


class MissingQuadrant(RuntimeError):
    """An index lookup came back empty for a point that must be covered."""


class TooLarge(ValueError):
    pass


class Outcome(enum.Enum):
    NO_COVER = "no-cover"
    BUDGET_EXCEEDED = "budget-exceeded"


NO_COVER = Outcome.NO_COVER
BUDGET_EXCEEDED = Outcome.BUDGET_EXCEEDED


class Interval(NamedTuple):
    left: float
    right: float

    def contains(self, p) -> bool:
        return self.left <= p <= self.right


class Quadrant(NamedTuple):
    direction: str
    x: float
    y: float

    def contains(self, p) -> bool:
        px, py = p
        d = self.direction
        if d == "SE":
            return px >= self.x and py <= self.y
        if d == "SW":
            return px <= self.x and py <= self.y
        if d == "NE":
            return px >= self.x and py >= self.y
        return px <= self.x and py >= self.y

    @property
    def vertex(self):
        return (self.x, self.y)


class UnitSquare(NamedTuple):
    """Closed axis-parallel square of side 1 anchored at its lower-left corner."""

    x: float
    y: float

    def contains(self, p) -> bool:
        px, py = p
        return self.x <= px <= self.x + 1 and self.y <= py <= self.y + 1

    @property
    def center(self):
        return (self.x + 0.5, self.y + 0.5)


Range = Union[Interval, Quadrant, UnitSquare]


def contains(rng: Range, p) -> bool:
    return rng.contains(p)


def make_quadrant(direction: str, x, y) -> Quadrant:
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown quadrant direction {direction!r}")
    return Quadrant(direction, x, y)


def make_interval(left, right) -> Interval:
    if left > right:
        raise InvalidRange(f"interval [{left}, {right}] has left > right")
    return Interval(left, right)


class InsertPoint(NamedTuple):
    id: int
    coords: object


class DeletePoint(NamedTuple):
    id: int


class InsertRange(NamedTuple):
    id: int
    range: Range


class DeleteRange(NamedTuple):
    id: int


UpdateOp = Union[InsertPoint, DeletePoint, InsertRange, DeleteRange]


class ProblemInstance:
    """Id-keyed points and ranges.

    Ids are never reused unless ``reuse_ids`` is set; that relaxation is only
    meant for sub-instances owned by a bootstrapping parent, which may hand the
    same special range back and forth.
    """

    def __init__(self, kind: str = "cover", reuse_ids: bool = False):
        self.kind = kind
        self.points: dict = {}
        self.ranges: dict = {}
        self.reuse_ids = reuse_ids
        self._retired: set = set()

    def __len__(self):
        return len(self.points) + len(self.ranges)

    def _check_fresh(self, eid):
        if eid in self.points or eid in self.ranges or eid in self._retired:
            raise DuplicateId(eid)

    def insert_point(self, pid, coords):
        self._check_fresh(pid)
        self.points[pid] = coords

    def delete_point(self, pid):
        try:
            coords = self.points.pop(pid)
        except KeyError:
            raise UnknownId(pid) from None
        if not self.reuse_ids:
            self._retired.add(pid)
        return coords

    def insert_range(self, rid, rng):
        self._check_fresh(rid)
        self.ranges[rid] = rng

    def delete_range(self, rid):
        try:
            rng = self.ranges.pop(rid)
        except KeyError:
            raise UnknownId(rid) from None
        if not self.reuse_ids:
            self._retired.add(rid)
        return rng

    def apply(self, op: UpdateOp):
        if isinstance(op, InsertPoint):
            self.insert_point(op.id, op.coords)
        elif isinstance(op, DeletePoint):
            self.delete_point(op.id)
        elif isinstance(op, InsertRange):
            self.insert_range(op.id, op.range)
        elif isinstance(op, DeleteRange):
            self.delete_range(op.id)
        else:
            raise TypeError(f"not an update op: {op!r}")

    def copy(self) -> "ProblemInstance":
        other = ProblemInstance(self.kind, self.reuse_ids)
        other.points = dict(self.points)
        other.ranges = dict(self.ranges)
        other._retired = set(self._retired)
        return other


def apply(instance: ProblemInstance, op: UpdateOp):
    instance.apply(op)


class SolutionView:
    """Read-only multiset of element ids, possibly composed of child views.

    ``resolve(eid)`` narrows a multiplicity lookup to the few children that can
    hold ``eid``; without it every child is asked.  ``shadow`` counts copies
    that live in children ``resolve`` does not return: they add to
    multiplicities but not to the size, which the children already include.
    """

    __slots__ = ("_explicit", "_children", "_resolve", "_shadow", "_total")

    def __init__(self, explicit=None, children: Iterable["SolutionView"] = (),
                 resolve: Callable | None = None, shadow: dict | None = None):
        if explicit is None:
            explicit = {}
        elif not isinstance(explicit, dict):
            explicit = Counter(explicit)
        self._explicit = explicit
        self._children = tuple(children)
        self._resolve = resolve
        self._shadow = shadow or {}
        self._total = sum(explicit.values()) + sum(c._total for c in self._children)

    def size(self) -> int:
        return self._total

    __len__ = size

    def multiplicity(self, eid) -> int:
        m = self._explicit.get(eid, 0) + self._shadow.get(eid, 0)
        kids = self._children if self._resolve is None else self._resolve(eid)
        for child in kids:
            m += child.multiplicity(eid)
        return m

    def report(self) -> Iterator:
        for eid, cnt in self._explicit.items():
            for _ in range(cnt):
                yield eid
        for child in self._children:
            yield from child.report()

    __iter__ = report

    def counts(self) -> Counter:
        return Counter(self.report())

    def __repr__(self):
        return f"SolutionView(size={self._total})"


EMPTY_VIEW = SolutionView()


def solution_disjoint_union(parts: Iterable[SolutionView]) -> SolutionView:
    return SolutionView(children=parts)


class Engine:
    """Common surface for every dynamic structure driven by traces."""

    problem = "abstract"

    def insert_point(self, pid, coords):
        raise NotImplementedError

    def delete_point(self, pid):
        raise NotImplementedError

    def insert_range(self, rid, rng):
        raise NotImplementedError

    def delete_range(self, rid):
        raise NotImplementedError

    def solution(self):
        """Current SolutionView, or NO_COVER when no feasible solution exists."""
        raise NotImplementedError

    def apply(self, op: UpdateOp):
        if isinstance(op, InsertPoint):
            self.insert_point(op.id, op.coords)
        elif isinstance(op, DeletePoint):
            self.delete_point(op.id)
        elif isinstance(op, InsertRange):
            self.insert_range(op.id, op.range)
        elif isinstance(op, DeleteRange):
            self.delete_range(op.id)
        else:
            raise TypeError(f"not an update op: {op!r}")
