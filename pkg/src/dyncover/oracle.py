"""Slow but obviously correct reference computations used by the tests.

Nothing here shares code with the fast paths: the interval optimum works on
plain sorted lists, the enumerations test every subset, and the geometric
helpers scan every element.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .core import NEG_INF, NO_COVER, POS_INF, ProblemInstance, TooLarge


@dataclass(frozen=True)
class OracleBudget:
    max_ranges: int = 18
    max_elements: int = 100_000


DEFAULT_BUDGET = OracleBudget()


def _contains(rng, p):
    return rng.contains(p)


def is_feasible(instance: ProblemInstance) -> bool:
    """Every point lies in some range (cover) / every range holds some point (hitting)."""
    pts, rngs = instance.points.values(), instance.ranges.values()
    if instance.kind == "hitting":
        return all(any(_contains(r, p) for p in pts) for r in rngs)
    return all(any(_contains(r, p) for r in rngs) for p in pts)


def is_solution(instance: ProblemInstance, ids) -> bool:
    ids = set(ids)
    if instance.kind == "hitting":
        if not ids <= instance.points.keys():
            return False
        chosen = [instance.points[i] for i in ids]
        return all(any(_contains(r, p) for p in chosen) for r in instance.ranges.values())
    if not ids <= instance.ranges.keys():
        return False
    chosen = [instance.ranges[i] for i in ids]
    return all(any(_contains(r, p) for r in chosen) for p in instance.points.values())


def count_uncovered(points, ranges) -> int:
    return sum(1 for p in points if not any(_contains(r, p) for r in ranges))


def exact_opt_bruteforce(instance: ProblemInstance, budget: OracleBudget = DEFAULT_BUDGET):
    """Minimum solution size by enumerating subsets in order of size.

    Subsets of the same size that reach the same covered set are merged, so
    each layer is the set of distinct unions of k chosen elements.
    """
    hitting = instance.kind == "hitting"
    pts = list(instance.points.values())
    rngs = list(instance.ranges.values())
    # the chosen side is the family we pick from, the target side must be hit
    chosen, target = (pts, rngs) if hitting else (rngs, pts)
    if len(chosen) > budget.max_ranges:
        raise TooLarge(f"{len(chosen)} candidates exceed the enumeration limit {budget.max_ranges}")
    masks = []
    for c in chosen:
        m = 0
        for j, t in enumerate(target):
            if (_contains(t, c) if hitting else _contains(c, t)):
                m |= 1 << j
        masks.append(m)
    full = (1 << len(target)) - 1
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return NO_COVER
    if full == 0:
        return 0
    # a mask inside another never helps a minimum solution
    distinct = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    useful = []
    for m in distinct:
        if not any(m | u == u for u in useful):
            useful.append(m)
    # layer k holds every union reachable with k chosen elements
    layer = {0}
    for k in range(1, len(useful) + 1):
        nxt = set()
        for u in layer:
            for m in useful:
                v = u | m
                if v == full:
                    return k
                nxt.add(v)
        layer = nxt
    return NO_COVER


def exact_interval_opt(instance: ProblemInstance):
    """Exact optimum for 1D instances using sorted lists and linear scans."""
    pts = sorted(instance.points.values())
    ivs = sorted((r.left, r.right) for r in instance.ranges.values())
    if instance.kind == "hitting":
        count, last = 0, NEG_INF
        for l, r in sorted(ivs, key=lambda lr: lr[1]):
            if l <= last <= r:
                continue
            k = bisect_right(pts, r) - 1
            if k < 0 or pts[k] < l:
                return NO_COVER
            last = pts[k]
            count += 1
        return count
    # sweep intervals by left end, tracking the furthest right end seen so far
    count, i, j, n, m = 0, 0, 0, len(pts), len(ivs)
    reach = NEG_INF
    while i < n:
        p = pts[i]
        while j < m and ivs[j][0] <= p:
            reach = max(reach, ivs[j][1])
            j += 1
        if reach < p:
            return NO_COVER
        count += 1
        while i < n and pts[i] <= reach:
            i += 1
    return count


def interval_cover_ok(points, chosen) -> bool:
    """Every point lies in the union of the chosen intervals (merge then bisect)."""
    merged = []
    for l, r in sorted((iv.left, iv.right) for iv in chosen):
        if merged and l <= merged[-1][1]:
            if r > merged[-1][1]:
                merged[-1][1] = r
        else:
            merged.append([l, r])
    lefts = [m[0] for m in merged]
    for p in points:
        k = bisect_right(lefts, p) - 1
        if k < 0 or merged[k][1] < p:
            return False
    return True


def interval_hits_ok(points, intervals) -> bool:
    """Every interval holds one of the points."""
    pts = sorted(points)
    for iv in intervals:
        k = bisect_left(pts, iv.left)
        if k == len(pts) or pts[k] > iv.right:
            return False
    return True


def interval_feasible(instance: ProblemInstance) -> bool:
    if instance.kind == "hitting":
        return interval_hits_ok(instance.points.values(), instance.ranges.values())
    return interval_cover_ok(instance.points.values(), instance.ranges.values())


def interval_is_solution(instance: ProblemInstance, ids) -> bool:
    ids = set(ids)
    if instance.kind == "hitting":
        if not ids <= instance.points.keys():
            return False
        return interval_hits_ok([instance.points[i] for i in ids], instance.ranges.values())
    if not ids <= instance.ranges.keys():
        return False
    return interval_cover_ok(instance.points.values(), [instance.ranges[i] for i in ids])


# ---------------------------------------------------------------------------
# quadrant geometry by scanning


def height_scan(verts, x, direction):
    """Envelope height of SW (vertices right of x) or SE (vertices left of x) quadrants."""
    if direction == "SW":
        ys = [vy for vx, vy in verts if vx >= x]
    else:
        ys = [vy for vx, vy in verts if vx <= x]
    return max(ys, default=NEG_INF)


def sigma_scan(se_verts, sw_verts):
    """Contact end point of the SW envelope with the SE staircase, by walking vertices.

    Each SW vertex (sx, sy) right of the leftmost SE vertex contributes the
    point where the horizontal line y = sy (from the left) or the vertical
    line x = sx meets the SE staircase; the last such point wins.
    """
    if not se_verts:
        return None
    xmin = min(vx for vx, _ in se_verts)
    best = None
    for sx, sy in sw_verts:
        if sx < xmin:
            continue
        h = height_scan(se_verts, sx, "SE")
        if h <= sy:
            cand = (sx, h)
        else:
            xk = min(vx for vx, vy in se_verts if vy > sy)
            cand = (xk, sy)
        if best is None or cand > best:
            best = cand
    return best if best is not None else (xmin, NEG_INF)


def phi_scan(points, se_verts, ytilde):
    """Leftmost (x, y, id) point with y > ytilde inside some SE quadrant."""
    best = None
    for pid, (x, y) in points.items():
        if y <= ytilde:
            continue
        if any(x >= vx and y <= vy for vx, vy in se_verts):
            cand = (x, y, pid)
            if best is None or cand < best:
                best = cand
    return best


def three_sided_scan(pts, x0, y1, y2):
    """Lightest (x, y, id) in [x0, inf) x [y1, y2]; pts maps id -> (x, y)."""
    c = [(x, y, i) for i, (x, y) in pts.items() if x >= x0 and y1 <= y <= y2]
    return min(c, default=None)


def naive_engine(problem: str):
    """Recompute-from-scratch reference engine for the given problem name."""
    from .static_solvers import NaiveIntervalHittingSet, NaiveIntervalSetCover, NaiveQuadrantSetCover

    table = {
        "interval-sc": NaiveIntervalSetCover,
        "interval-hs": NaiveIntervalHittingSet,
        "quadrant-sc": NaiveQuadrantSetCover,
    }
    try:
        return table[problem]()
    except KeyError:
        raise ValueError(f"no naive engine for {problem!r}") from None


def in_union(p, ranges):
    return any(_contains(r, p) for r in ranges)


__all__ = [
    "OracleBudget", "is_feasible", "is_solution", "count_uncovered",
    "exact_opt_bruteforce", "exact_interval_opt", "interval_cover_ok", "interval_hits_ok",
    "interval_feasible", "interval_is_solution", "height_scan", "sigma_scan",
    "phi_scan", "three_sided_scan", "naive_engine", "in_union", "POS_INF",
]
