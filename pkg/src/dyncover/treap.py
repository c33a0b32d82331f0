"""Treap with lazily maintained subtree aggregates.

Each node carries a ``base`` summary computed once from its own (key, value)
and an ``agg`` summary of its whole subtree.  Updates only flag the touched
path as dirty; the next query recomputes exactly the dirty nodes.  A clean
node always has a clean subtree, so a refresh never walks clean parts.

``combine(a, b)`` must be associative and is always called with every key of
``a`` smaller than every key of ``b``; ``None`` acts as the identity.
"""

from __future__ import annotations

import random
import sys

from .instrument import OPS

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class _Node:
    __slots__ = ("key", "val", "prio", "left", "right", "base", "agg", "dirty")

    def __init__(self, key, val, prio, base):
        self.key = key
        self.val = val
        self.prio = prio
        self.left = None
        self.right = None
        self.base = base
        self.agg = base
        self.dirty = False


class Treap:
    def __init__(self, leaf=None, combine=None, seed=0x5EED):
        self._leaf = leaf
        self._combine = combine
        self.root = None
        self._n = 0
        self._rand = random.Random(seed).random

    def __len__(self):
        return self._n

    def __bool__(self):
        return self._n > 0

    # ---- updates -------------------------------------------------------

    def _make(self, key, val):
        base = self._leaf(key, val) if self._leaf is not None else None
        return _Node(key, val, self._rand(), base)

    def insert(self, key, val=None):
        self.root = self._ins(self.root, self._make(key, val))
        self._n += 1

    def _ins(self, t, node):
        if t is None:
            return node
        OPS.count += 1
        if node.prio > t.prio:
            node.left, node.right = self._split(t, node.key)
            node.dirty = True
            return node
        if node.key < t.key:
            t.left = self._ins(t.left, node)
        elif t.key < node.key:
            t.right = self._ins(t.right, node)
        else:
            raise KeyError(node.key)
        t.dirty = True
        return t

    def _split(self, t, key):
        if t is None:
            return None, None
        OPS.count += 1
        if t.key < key:
            left, right = self._split(t.right, key)
            t.right = left
            t.dirty = True
            return t, right
        if key < t.key:
            left, right = self._split(t.left, key)
            t.left = right
            t.dirty = True
            return left, t
        raise KeyError(key)

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        OPS.count += 1
        if a.prio > b.prio:
            a.right = self._merge(a.right, b)
            a.dirty = True
            return a
        b.left = self._merge(a, b.left)
        b.dirty = True
        return b

    def delete(self, key):
        """Remove ``key`` and return its value; KeyError if absent."""
        self._removed = None
        self.root = self._del(self.root, key)
        self._n -= 1
        node, self._removed = self._removed, None
        return node.val

    def _del(self, t, key):
        if t is None:
            raise KeyError(key)
        OPS.count += 1
        if key < t.key:
            t.left = self._del(t.left, key)
        elif t.key < key:
            t.right = self._del(t.right, key)
        else:
            self._removed = t
            return self._merge(t.left, t.right)
        t.dirty = True
        return t

    def build(self, items):
        """Replace the contents with ``items`` (pairs sorted by strictly increasing key)."""
        stack = []
        for key, val in items:
            node = self._make(key, val)
            node.dirty = True
            last = None
            while stack and stack[-1].prio < node.prio:
                last = stack.pop()
            node.left = last
            if stack:
                stack[-1].right = node
            stack.append(node)
        self.root = stack[0] if stack else None
        self._n = len(items) if hasattr(items, "__len__") else self._count(self.root)
        OPS.count += self._n

    def _count(self, t):
        return 0 if t is None else 1 + self._count(t.left) + self._count(t.right)

    # ---- aggregates ----------------------------------------------------

    def _join(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return self._combine(a, b)

    def _refresh(self, t):
        OPS.count += 1
        left, right = t.left, t.right
        if left is not None and left.dirty:
            self._refresh(left)
        if right is not None and right.dirty:
            self._refresh(right)
        agg = t.base
        if left is not None:
            agg = self._join(left.agg, agg)
        if right is not None:
            agg = self._join(agg, right.agg)
        t.agg = agg
        t.dirty = False

    def ensure(self):
        root = self.root
        if root is not None and root.dirty and self._leaf is not None:
            self._refresh(root)

    def total(self):
        self.ensure()
        return None if self.root is None else self.root.agg

    def fold(self, lo=None, hi=None, lo_open=False, hi_open=False):
        """Aggregate over keys inside the given bounds (``None`` = unbounded)."""
        self.ensure()
        join = self._join
        t = self.root
        while t is not None:
            OPS.count += 1
            k = t.key
            if lo is not None and (k <= lo if lo_open else k < lo):
                t = t.right
            elif hi is not None and (k >= hi if hi_open else k > hi):
                t = t.left
            else:
                break
        if t is None:
            return None
        acc_l = None
        x = t.left
        while x is not None:
            OPS.count += 1
            k = x.key
            if lo is not None and (k <= lo if lo_open else k < lo):
                x = x.right
            else:
                part = x.base
                if x.right is not None:
                    part = join(part, x.right.agg)
                acc_l = join(part, acc_l)
                x = x.left
        acc_r = None
        x = t.right
        while x is not None:
            OPS.count += 1
            k = x.key
            if hi is not None and (k >= hi if hi_open else k > hi):
                x = x.left
            else:
                part = x.base
                if x.left is not None:
                    part = join(x.left.agg, part)
                acc_r = join(acc_r, part)
                x = x.right
        return join(join(acc_l, t.base), acc_r)

    def find_first(self, test, lo=None, lo_open=False):
        """Leftmost node with key past ``lo`` whose base passes ``test``.

        ``test`` must be exact on aggregates: it accepts a subtree summary iff
        some node of that subtree passes.
        """
        self.ensure()
        return self._ff(self.root, test, lo, lo_open)

    def _ff(self, t, test, lo, lo_open):
        while t is not None:
            OPS.count += 1
            k = t.key
            if lo is not None and (k <= lo if lo_open else k < lo):
                t = t.right
                continue
            left = t.left
            if left is not None and left.agg is not None and test(left.agg):
                found = self._ff(left, test, lo, lo_open)
                if found is not None:
                    return found
            if t.base is not None and test(t.base):
                return t
            t = t.right
            lo = None
        return None

    def find_last(self, test, hi=None, hi_open=False):
        """Rightmost node with key before ``hi`` whose base passes ``test``."""
        self.ensure()
        return self._fl(self.root, test, hi, hi_open)

    def _fl(self, t, test, hi, hi_open):
        while t is not None:
            OPS.count += 1
            k = t.key
            if hi is not None and (k >= hi if hi_open else k > hi):
                t = t.left
                continue
            right = t.right
            if right is not None and right.agg is not None and test(right.agg):
                found = self._fl(right, test, hi, hi_open)
                if found is not None:
                    return found
            if t.base is not None and test(t.base):
                return t
            t = t.left
            hi = None
        return None

    # ---- plain ordered-set queries -------------------------------------

    def get(self, key, default=None):
        t = self.root
        while t is not None:
            if key < t.key:
                t = t.left
            elif t.key < key:
                t = t.right
            else:
                return t.val
        return default

    def __contains__(self, key):
        t = self.root
        while t is not None:
            if key < t.key:
                t = t.left
            elif t.key < key:
                t = t.right
            else:
                return True
        return False

    def successor(self, key, strict=True):
        """Node with the smallest key > key (>= if not strict)."""
        t, best = self.root, None
        while t is not None:
            OPS.count += 1
            if t.key > key or (not strict and t.key == key):
                best = t
                t = t.left
            else:
                t = t.right
        return best

    def predecessor(self, key, strict=True):
        t, best = self.root, None
        while t is not None:
            OPS.count += 1
            if t.key < key or (not strict and t.key == key):
                best = t
                t = t.right
            else:
                t = t.left
        return best

    def first(self):
        t = self.root
        if t is None:
            return None
        while t.left is not None:
            t = t.left
        return t

    def last(self):
        t = self.root
        if t is None:
            return None
        while t.right is not None:
            t = t.right
        return t

    def items(self):
        stack, t = [], self.root
        while stack or t is not None:
            while t is not None:
                stack.append(t)
                t = t.left
            t = stack.pop()
            yield t.key, t.val
            t = t.right

    def keys(self):
        return [k for k, _ in self.items()]

    # ---- self-checks used by the test-suite ----------------------------

    def check(self):
        """Assert BST order, heap order and that every aggregate matches a recomputation."""
        self.ensure()

        def walk(t, lo, hi):
            if t is None:
                return None
            assert lo is None or lo < t.key
            assert hi is None or t.key < hi
            for child in (t.left, t.right):
                assert child is None or child.prio <= t.prio
            assert not t.dirty
            a = walk(t.left, lo, t.key)
            b = walk(t.right, t.key, hi)
            if self._leaf is None:
                return None
            assert t.base == self._leaf(t.key, t.val)
            agg = self._join(self._join(a, t.base), b)
            assert agg == t.agg, (agg, t.agg)
            return agg

        walk(self.root, None, None)
        assert self._count(self.root) == self._n
        return True
