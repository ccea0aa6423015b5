"""Circular hull of a sliding window of polygon vertices.

The window holds consecutive vertices ``v[lo..hi]`` of a convex polygon and
supports appending at the high end and dropping the low end.  Insertions
are the order-respecting hull update (a new point must precede or follow
every stored point along the boundary); dropping is done by undoing
insertions, with the stack reordered so the oldest element can be undone
next.  Each element is re-inserted O(log n) times in the worst case.
"""
from __future__ import annotations

import math

_TOL = 1e-12
_sqrt = math.sqrt


def center_left(ax, ay, bx, by, r):
    dx = bx - ax
    dy = by - ay
    d2 = dx * dx + dy * dy
    h2 = r * r - 0.25 * d2
    if h2 < 0.0:
        if h2 > -1e-12 * r * r:
            h2 = 0.0
        else:
            return None
    if d2 == 0.0:
        return None
    k = _sqrt(h2 / d2)
    return (0.5 * (ax + bx) - k * dy, 0.5 * (ay + by) + k * dx)


class HullDied(RuntimeError):
    """Raised when an insertion would make the window not r-coverable."""


class UndoHull:
    """Array-backed hull deque with exact undo of insertions."""

    def __init__(self, r, capacity):
        self.r = r
        self.lim = r * r * (1 + _TOL) ** 2
        size = 2 * capacity + 16
        self.px = [0.0] * size
        self.py = [0.0] * size
        self.ids = [0] * size
        self.head = self.tail = size // 2
        self.inserts = 0
        self.pops = 0
        self.restores = 0  # elements pushed back by undo

    def __len__(self):
        return self.tail - self.head

    def _inside(self, c, x, y):
        if c is None:
            return False
        dx = c[0] - x
        dy = c[1] - y
        return dx * dx + dy * dy <= self.lim

    def _recenter(self):
        m = self.tail - self.head
        size = len(self.px)
        if m * 2 + 16 > size // 2:
            grow = size
            self.px.extend([0.0] * grow)
            self.py.extend([0.0] * grow)
            self.ids.extend([0] * grow)
            size += grow
        start = (size - m) // 2
        h = self.head
        self.px[start:start + m] = self.px[h:h + m]
        self.py[start:start + m] = self.py[h:h + m]
        self.ids[start:start + m] = self.ids[h:h + m]
        self.head, self.tail = start, start + m

    def insert(self, x, y, vid, left):
        """Insert a point before (``left``) or after every stored point.

        Returns an undo record.  Raises :class:`HullDied` (leaving the
        structure unchanged) if the points stop being r-coverable.
        """
        self.inserts += 1
        px, py, ids = self.px, self.py, self.ids
        r = self.r
        m = self.tail - self.head
        if m >= 2:
            h, t = self.head, self.tail - 1
            if self._inside(center_left(px[t], py[t], px[h], py[h], r), x, y):
                return (None, (), ())
        elif m == 1:
            h = self.head
            dx, dy = px[h] - x, py[h] - y
            if dx * dx + dy * dy > 4 * self.lim:
                raise HullDied
            if dx == 0.0 and dy == 0.0:
                return (None, (), ())
        back = []
        front = []
        if m >= 2:
            while self.tail - self.head >= 2:
                t = self.tail - 1
                c = center_left(px[t - 1], py[t - 1], x, y, r)
                if not self._inside(c, px[t], py[t]):
                    break
                back.append((px[t], py[t], ids[t]))
                self.tail = t
            while self.tail - self.head >= 2:
                h = self.head
                c = center_left(x, y, px[h + 1], py[h + 1], r)
                if not self._inside(c, px[h], py[h]):
                    break
                front.append((px[h], py[h], ids[h]))
                self.head = h + 1
            ok = True
            if self.tail - self.head == 1:
                h = self.head
                dx, dy = px[h] - x, py[h] - y
                ok = dx * dx + dy * dy <= 4 * self.lim
            else:
                h, t = self.head, self.tail - 1
                cb = center_left(px[t], py[t], x, y, r)
                cf = center_left(x, y, px[h], py[h], r)
                ok = (cb is not None and cf is not None
                      and self._inside(cb, px[t - 1], py[t - 1]) and self._inside(cb, px[h], py[h])
                      and self._inside(cf, px[h + 1], py[h + 1]) and self._inside(cf, px[t], py[t]))
            if not ok:
                self._restore(front, back)
                raise HullDied
        self.pops += len(back) + len(front)
        if left:
            if self.head == 0:
                self._recenter()
            self.head -= 1
            k = self.head
        else:
            if self.tail == len(px):
                self._recenter()
            k = self.tail
            self.tail += 1
        px[k] = x
        py[k] = y
        ids[k] = vid
        return ('L' if left else 'R', front, back)

    def _restore(self, front, back):
        px, py, ids = self.px, self.py, self.ids
        for x, y, v in reversed(front):
            self.head -= 1
            k = self.head
            px[k], py[k], ids[k] = x, y, v
        for x, y, v in reversed(back):
            k = self.tail
            px[k], py[k], ids[k] = x, y, v
            self.tail += 1

    def undo(self, rec):
        side, front, back = rec
        if side == 'L':
            self.head += 1
        elif side == 'R':
            self.tail -= 1
        self.restores += len(front) + len(back)
        self._restore(front, back)


class WindowHull:
    """Queue of consecutive polygon vertices with their circular hull."""

    def __init__(self, r, capacity):
        self.hull = UndoHull(r, capacity)
        self.ops = []  # [is_front_tag, vid, x, y, record]
        self.n_front = 0
        self.reinserts = 0

    def _do(self, tag, vid, x, y):
        rec = self.hull.insert(x, y, vid, tag)
        self.ops.append((tag, vid, x, y, rec))
        if tag:
            self.n_front += 1

    def _undo_top(self):
        tag, vid, x, y, rec = self.ops.pop()
        self.hull.undo(rec)
        if tag:
            self.n_front -= 1
        return tag, vid, x, y

    def push_back(self, vid, x, y):
        self._do(False, vid, x, y)

    def pop_front(self):
        ops = self.ops
        if not ops:
            raise IndexError("pop from an empty window")
        if not ops[-1][0]:
            if self.n_front == 0:
                items = [self._undo_top() for _ in range(len(ops))]
                # items run newest to oldest; re-insert newest first so the
                # oldest ends on top
                for _, vid, x, y in items:
                    self._do(True, vid, x, y)
                self.reinserts += len(items)
            else:
                fronts, backs = [], []
                while ops and (not fronts or len(fronts) != len(backs)) and self.n_front > 0:
                    item = self._undo_top()
                    (fronts if item[0] else backs).append(item)
                for _, vid, x, y in reversed(backs):
                    self._do(False, vid, x, y)
                for _, vid, x, y in reversed(fronts):
                    self._do(True, vid, x, y)
                self.reinserts += len(fronts) + len(backs)
        self._undo_top()
