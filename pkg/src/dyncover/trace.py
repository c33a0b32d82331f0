"""Text operation traces: parsing, serialisation and seeded generators.

One command per line, ``#`` starts a comment::

    P+ <id> <x> [<y>]
    P- <id>
    R+ <id> I <l> <r>
    R+ <id> QD <SE|SW|NE|NW> <x> <y>
    R+ <id> US <x> <y>
    R- <id>
    Q

An optional ``# problem: <name>`` comment names the problem the trace targets.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .core import (DIRECTIONS, DeletePoint, DeleteRange, DuplicateId, IdError, InsertPoint,
                   InsertRange, Interval, Quadrant, UnitSquare, UnknownId)

PROBLEMS = ("interval-sc", "interval-hs", "quadrant-sc", "quadrant-hs", "unitsq-sc", "unitsq-hs")
KINDS = ("uniform", "sliding-window", "adversarial-churn")


class Query:
    """Solution snapshot command."""

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, Query)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Query()"


QUERY = Query()


class ParseError(ValueError):
    def __init__(self, msg, line, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class TraceIdError(IdError):
    def __init__(self, err, line):
        super().__init__(f"line {line}: {type(err).__name__} {err.args[0]!r}")
        self.line = line
        self.cause = err


@dataclass
class OpTrace:
    problem: str | None = None
    dim: int | None = None
    commands: list = field(default_factory=list)

    def __len__(self):
        return len(self.commands)

    def updates(self):
        return [c for c in self.commands if not isinstance(c, Query)]


def _num(tok, line, col):
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", line, col) from None
    if not math.isfinite(v):
        raise ParseError(f"coordinate must be finite, got {tok!r}", line, col)
    return v


def _id(tok, line, col):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer id, got {tok!r}", line, col) from None
    if v < 0:
        raise ParseError(f"ids are non-negative, got {v}", line, col)
    return v


def _fields(text):
    """Yield (token, column) pairs of a line."""
    col = 0
    for tok in text.split():
        col = text.index(tok, col)
        yield tok, col + 1
        col += len(tok)


class _IdLedger:
    """Tracks live and retired ids so a trace never reuses or misses one."""

    def __init__(self):
        self.points: set = set()
        self.ranges: set = set()
        self.retired: set = set()

    def fresh(self, eid):
        if eid in self.points or eid in self.ranges or eid in self.retired:
            raise DuplicateId(eid)

    def add(self, live, eid):
        self.fresh(eid)
        live.add(eid)

    def drop(self, live, eid):
        if eid not in live:
            raise UnknownId(eid)
        live.remove(eid)
        self.retired.add(eid)


def parse_trace(text: str) -> OpTrace:
    trace = OpTrace()
    ids = _IdLedger()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            c = comment.strip()
            if c.startswith("problem:"):
                trace.problem = c.split(":", 1)[1].strip()
            continue
        toks = list(_fields(body))
        head = toks[0][0]
        try:
            cmd = _parse_command(head, toks, lineno, trace)
            if isinstance(cmd, InsertPoint):
                ids.add(ids.points, cmd.id)
            elif isinstance(cmd, DeletePoint):
                ids.drop(ids.points, cmd.id)
            elif isinstance(cmd, InsertRange):
                ids.add(ids.ranges, cmd.id)
            elif isinstance(cmd, DeleteRange):
                ids.drop(ids.ranges, cmd.id)
        except IdError as err:
            raise TraceIdError(err, lineno) from None
        trace.commands.append(cmd)
    return trace


def _arity(toks, n, line):
    if len(toks) != n:
        col = toks[min(len(toks), n) - 1][1]
        raise ParseError(f"{toks[0][0]} takes {n - 1} fields, got {len(toks) - 1}", line, col)


def _parse_command(head, toks, line, trace):
    if head == "Q":
        _arity(toks, 1, line)
        return QUERY
    if head in ("P-", "R-"):
        _arity(toks, 2, line)
        eid = _id(toks[1][0], line, toks[1][1])
        return DeletePoint(eid) if head == "P-" else DeleteRange(eid)
    if head == "P+":
        if len(toks) not in (3, 4):
            raise ParseError("P+ takes an id and one or two coordinates", line, toks[-1][1])
        eid = _id(toks[1][0], line, toks[1][1])
        coords = tuple(_num(t, line, c) for t, c in toks[2:])
        dim = len(coords)
        if trace.dim is None:
            trace.dim = dim
        elif trace.dim != dim:
            raise ParseError(f"{dim}D point in a {trace.dim}D trace", line, toks[2][1])
        return InsertPoint(eid, coords[0] if dim == 1 else coords)
    if head == "R+":
        if len(toks) < 3:
            raise ParseError("R+ needs an id and a range", line, toks[-1][1])
        eid = _id(toks[1][0], line, toks[1][1])
        kind, kcol = toks[2]
        if kind == "I":
            _arity(toks, 5, line)
            lo, hi = (_num(t, line, c) for t, c in toks[3:5])
            if lo > hi:
                raise ParseError(f"interval [{lo}, {hi}] has left > right", line, toks[3][1])
            return InsertRange(eid, Interval(lo, hi))
        if kind == "QD":
            _arity(toks, 6, line)
            d, dcol = toks[3]
            if d not in DIRECTIONS:
                raise ParseError(f"unknown quadrant direction {d!r}", line, dcol)
            x, y = (_num(t, line, c) for t, c in toks[4:6])
            return InsertRange(eid, Quadrant(d, x, y))
        if kind == "US":
            _arity(toks, 5, line)
            x, y = (_num(t, line, c) for t, c in toks[3:5])
            return InsertRange(eid, UnitSquare(x, y))
        raise ParseError(f"unknown range kind {kind!r}", line, kcol)
    raise ParseError(f"unknown command {head!r}", line, toks[0][1])


def _fmt(v):
    return repr(float(v))


def format_command(cmd) -> str:
    if isinstance(cmd, Query):
        return "Q"
    if isinstance(cmd, InsertPoint):
        c = cmd.coords
        coords = c if isinstance(c, tuple) else (c,)
        return " ".join(["P+", str(cmd.id)] + [_fmt(v) for v in coords])
    if isinstance(cmd, DeletePoint):
        return f"P- {cmd.id}"
    if isinstance(cmd, DeleteRange):
        return f"R- {cmd.id}"
    r = cmd.range
    if isinstance(r, Interval):
        return f"R+ {cmd.id} I {_fmt(r.left)} {_fmt(r.right)}"
    if isinstance(r, Quadrant):
        return f"R+ {cmd.id} QD {r.direction} {_fmt(r.x)} {_fmt(r.y)}"
    return f"R+ {cmd.id} US {_fmt(r.x)} {_fmt(r.y)}"


def serialize_trace(trace: OpTrace) -> str:
    lines = []
    if trace.problem:
        lines.append(f"# problem: {trace.problem}")
    lines.extend(format_command(c) for c in trace.commands)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators


class _Shapes:
    """Random points and ranges for one problem on a world sized for n elements."""

    def __init__(self, problem, n, rnd: random.Random):
        self.problem = problem
        self.rnd = rnd
        self.two_d = not problem.startswith("interval")
        if self.two_d:
            self.side = max(2.0, math.sqrt(n) * (1.5 if problem.startswith("unitsq") else 4))
        else:
            # dense enough that most snapshots are feasible, sparse enough for a large optimum
            self.side = float(max(n // 8, 4))

    def coord(self):
        # eighths keep unit-square arithmetic exact
        return self.rnd.randrange(int(self.side * 8)) / 8

    def point(self):
        if self.two_d:
            return (self.coord(), self.coord())
        return self.coord()

    def range(self):
        rnd = self.rnd
        if self.problem.startswith("interval"):
            span = rnd.randrange(8, 24) / 8
            lo = max(0.0, min(self.coord(), self.side - span))
            return Interval(lo, lo + span)
        if self.problem.startswith("unitsq"):
            return UnitSquare(self.coord(), self.coord())
        return Quadrant(rnd.choice(DIRECTIONS), self.coord(), self.coord())


class _Builder:
    def __init__(self, problem, shapes, partial):
        self.trace = OpTrace(problem, 2 if shapes.two_d else 1)
        self.shapes = shapes
        self.partial = partial
        self.next_id = 0
        self.points: dict = {}
        self.ranges: dict = {}
        # deletable ids: a swap-remove list for random picks, a lazy FIFO for the oldest
        self.pool: list = []
        self.pos: dict = {}
        self.fifo = deque()
        # hitting-set problems keep the candidate points fixed when partial
        self.dyn_points = not problem.endswith("-hs")

    def insert(self, is_point, shape=None):
        eid = self.next_id
        self.next_id += 1
        if is_point:
            p = self.shapes.point() if shape is None else shape
            self.points[eid] = p
            self.trace.commands.append(InsertPoint(eid, p))
        else:
            r = self.shapes.range() if shape is None else shape
            self.ranges[eid] = r
            self.trace.commands.append(InsertRange(eid, r))
        if not self.partial or is_point == self.dyn_points:
            self.pos[eid] = len(self.pool)
            self.pool.append(eid)
            self.fifo.append(eid)
        return eid

    def delete(self, eid):
        i = self.pos.pop(eid)
        last = self.pool.pop()
        if last != eid:
            self.pool[i] = last
            self.pos[last] = i
        if eid in self.points:
            del self.points[eid]
            self.trace.commands.append(DeletePoint(eid))
        else:
            del self.ranges[eid]
            self.trace.commands.append(DeleteRange(eid))

    def live(self):
        return len(self.points) + len(self.ranges)

    def pick_side(self):
        if self.partial:
            return self.dyn_points
        return self.shapes.rnd.random() < 0.5

    def delete_random(self):
        if not self.pool:
            return False
        self.delete(self.shapes.rnd.choice(self.pool))
        return True

    def delete_oldest(self):
        while self.fifo:
            eid = self.fifo.popleft()
            if eid in self.pos:
                self.delete(eid)
                return True
        return False


def generate(kind, problem, n, ops, seed=0, query_every=1, partial=False) -> OpTrace:
    """Seeded trace: n initial insertions, one query, then ``ops`` updates.

    ``partial`` keeps the ranges (set cover) or the points (hitting set) fixed
    after the initial block.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown generator {kind!r}")
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    rnd = random.Random(seed)
    shapes = _Shapes(problem, n, rnd)
    b = _Builder(problem, shapes, partial)
    for _ in range(n):
        b.insert(rnd.random() < 0.5)
    b.trace.commands.append(QUERY)
    lo, hi = n // 2, n + n // 2
    churn = _Churn(b) if kind == "adversarial-churn" else None
    for step in range(ops):
        if kind == "sliding-window":
            if step % 2 == 0:
                b.insert(b.pick_side())
            elif not b.delete_oldest():
                b.insert(b.pick_side())
        elif churn is not None and step % 2 == 0:
            churn.step()
        else:
            live = b.live()
            grow = rnd.random() < 0.5
            if live <= lo:
                grow = True
            elif live >= hi:
                grow = False
            if grow or not b.delete_random():
                b.insert(b.pick_side())
        if query_every and (step + 1) % query_every == 0:
            b.trace.commands.append(QUERY)
    return b.trace


class _Churn:
    """Toggles a range sitting on a partition boundary of the live elements.

    The boundaries are recomputed from equal-frequency cuts of the live
    coordinates, the same rule the bootstrapped engines use to partition.
    """

    def __init__(self, builder: _Builder):
        self.b = builder
        self.held = None

    def _cuts(self, axis):
        from .boot_interval import equal_frequency_cuts

        vals = []
        for p in self.b.points.values():
            vals.append(p[axis] if isinstance(p, tuple) else p)
        parts = max(2, int(math.sqrt(max(len(vals), 4))))
        return equal_frequency_cuts(vals, parts)

    def step(self):
        b = self.b
        rnd = b.shapes.rnd
        if self.held is not None:
            eid, self.held = self.held, None
            if eid in b.pos:
                b.delete(eid)
            return
        toggle_range = not (b.partial and b.dyn_points)
        if not toggle_range:
            b.insert(True)
            return
        cuts = self._cuts(0)
        if not cuts:
            b.insert(b.pick_side())
            return
        k = rnd.randrange(len(cuts))
        s = cuts[k]
        problem = b.trace.problem
        if problem.startswith("interval"):
            nxt = cuts[k + 1] if k + 1 < len(cuts) else s + 4
            shape = Interval(s, nxt)
        elif problem.startswith("unitsq"):
            shape = UnitSquare(math.floor(s * 8) / 8, b.shapes.coord())
        else:
            ys = self._cuts(1) or [b.shapes.coord()]
            shape = Quadrant(rnd.choice(DIRECTIONS), s, rnd.choice(ys))
        self.held = b.insert(False, shape)
