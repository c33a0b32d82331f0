"""Dynamic 3-sided range-minimum over weighted planar points.

A query asks for the lightest point in ``[x0, inf) x [klo, khi]`` where the
second axis is compared through arbitrary sortable keys.  The weight of a point
must order points by x first (ties broken by the rest of the weight), which is
the only way the quadrant machinery uses it: "lightest" means "leftmost".

Insertions go through the logarithmic method: buckets of doubling size, each a
static merge-sort tree over key order whose nodes list their points by weight.
Deletions set a tombstone, implemented as a next-live pointer per tree row with
path compression, and everything is rebuilt once tombstones outnumber half the
live points.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

from . import kernels
from .core import InvalidRange, POS_INF
from .instrument import OPS


class _Bucket:
    __slots__ = ("ks", "wkeys", "ykeys", "xvals", "handles", "n", "size", "rows", "xs", "pos",
                 "nxt", "ndead", "alive")

    def __init__(self, items):
        # items: list of (wkey, ykey, handle, x); rank = position in weight order
        items.sort(key=lambda it: it[0])
        n = len(items)
        size = 1
        while size < n:
            size <<= 1
        self.n = n
        self.size = size
        self.wkeys = [it[0] for it in items]
        self.ykeys = [it[1] for it in items]
        self.xvals = [it[3] for it in items]
        self.handles = [it[2] for it in items]
        self.alive = [True] * n
        order = sorted(range(n), key=lambda r: items[r][1])
        self.ks = [items[r][1] for r in order]
        xval = [it[3] for it in items] + [POS_INF] * (size - n)
        row = order + list(range(n, size))
        rows, width = [row], 1
        while width < size:
            width <<= 1
            prev = rows[-1]
            nxt_row = []
            for s in range(0, size, width):
                nxt_row.extend(sorted(prev[s:s + width]))
            rows.append(nxt_row)
        self.rows = rows
        self.xs = [[xval[r] for r in rw] for rw in rows]
        self.pos = []
        self.nxt = []
        for rw in rows:
            p = [0] * size
            for i, r in enumerate(rw):
                p[r] = i
            self.pos.append(p)
            link = list(range(size + 1))
            for r in range(n, size):
                link[p[r]] = p[r] + 1
            self.nxt.append(link)
        self.ndead = 0
        OPS.count += size * len(rows)

    def kill(self, rank):
        self.alive[rank] = False
        self.ndead += 1
        for p, link in zip(self.pos, self.nxt):
            i = p[rank]
            link[i] = i + 1
        OPS.count += len(self.pos)

    def live_items(self):
        return [(self.wkeys[r], self.ykeys[r], self.handles[r], self.xvals[r])
                for r in range(self.n) if self.alive[r]]

    def best(self, x0, x_open, i, j):
        """Smallest live rank with x >= x0 (or > x0) among key positions [i, j)."""
        return kernels.bucket_best(self.xs, self.rows, self.nxt, x0, x_open, i, j)


class ThreeSidedRangeMin:
    def __init__(self):
        self._levels: list = []
        self._loc: dict = {}
        self._dead = 0

    def __len__(self):
        return len(self._loc)

    def _place(self, bucket, level):
        while len(self._levels) <= level:
            self._levels.append(None)
        self._levels[level] = bucket
        for rank, h in enumerate(bucket.handles):
            self._loc[h] = (bucket, rank)

    def insert(self, handle, x, ykey, wkey=None):
        if handle in self._loc:
            raise KeyError(handle)
        if wkey is None:
            wkey = (x, ykey)
        carry = [(wkey, ykey, handle, x)]
        k = 0
        levels = self._levels
        while k < len(levels) and levels[k] is not None:
            old = levels[k]
            carry.extend(old.live_items())
            self._dead -= old.ndead
            levels[k] = None
            k += 1
        while (1 << k) < len(carry):
            k += 1
        if k < len(levels) and levels[k] is not None:
            old = levels[k]
            carry.extend(old.live_items())
            self._dead -= old.ndead
            levels[k] = None
            k = max(k + 1, (len(carry) - 1).bit_length())
        self._place(_Bucket(carry), k)

    def delete(self, handle):
        bucket, rank = self._loc.pop(handle)
        bucket.kill(rank)
        self._dead += 1
        live = len(self._loc)
        if self._dead > max(8, live // 2):
            self.rebuild()

    def rebuild(self):
        items = []
        for b in self._levels:
            if b is not None:
                items.extend(b.live_items())
        self._levels = []
        self._loc = {}
        self._dead = 0
        if items:
            self._place(_Bucket(items), (len(items) - 1).bit_length())

    def query_keys(self, x0, klo, khi, x_open=False):
        """Lightest weight key among points with x >= x0 and klo <= key <= khi."""
        best = None
        for b in self._levels:
            if b is None or b.ndead == b.n:
                continue
            ks = b.ks
            i = bisect_left(ks, klo)
            j = bisect_right(ks, khi)
            if i >= j:
                continue
            r = b.best(x0, x_open, i, j)
            if r >= 0:
                w = b.wkeys[r]
                if best is None or w < best:
                    best = w
        return best

    def three_sided_min(self, x0, y1, y2):
        """Lightest point in [x0, inf) x [y1, y2] for points keyed by (y, ...)."""
        if y1 > y2:
            raise InvalidRange(f"y1={y1} > y2={y2}")
        return self.query_keys(x0, (y1,), (y2, POS_INF))

    def handles(self):
        return list(self._loc)


class RangeEmptiness2D:
    """Orthogonal emptiness over a dynamic planar point set."""

    def __init__(self):
        self._q = ThreeSidedRangeMin()

    def __len__(self):
        return len(self._q)

    def insert(self, pid, x, y):
        self._q.insert(pid, x, (y, pid), (x, y, pid))

    def delete(self, pid):
        self._q.delete(pid)

    def any_in(self, xlo, xhi, ylo, yhi, xlo_open=False, xhi_open=False,
               ylo_open=False, yhi_open=False):
        """Some point inside the box (bounds may be infinite, sides open or closed)."""
        klo = (ylo, POS_INF) if ylo_open else (ylo,)
        khi = (yhi,) if yhi_open else (yhi, POS_INF)
        if klo > khi:
            return False
        w = self._q.query_keys(xlo, klo, khi, x_open=xlo_open)
        if w is None:
            return False
        x = w[0]
        return x < xhi if xhi_open else x <= xhi

    def is_empty(self, *args, **kw):
        return not self.any_in(*args, **kw)
