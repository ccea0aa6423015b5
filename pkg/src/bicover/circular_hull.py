"""Radius-r circular hulls of points in convex position.

The circular hull of a point set S is the intersection of every radius-r
disk containing S; it is nonempty exactly when S fits in one such disk.
Its boundary is a cyclic sequence of radius-r arcs through hull vertices.
Dually, the intersection of the radius-r disks centred at the points of S
is bounded by arcs centred at the hull vertices, and its corners are the
centres of the hull's supporting disks.

Points are inserted in counterclockwise boundary order of a convex
polygon, so every insertion touches the hull only next to the cyclic gap
where the new point lands: a deque with pops at both ends.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass

from .geom import BoundaryPoint, ConvexPolygon, Disk, Point, center_left

_TOL = 1e-12


class NonpositiveRadius(ValueError):
    pass


class EmptyHull(ValueError):
    pass


class NotAHullVertex(KeyError):
    pass


class OrderViolation(ValueError):
    pass


class Status(enum.Enum):
    NONEMPTY = "nonempty"
    BECAME_EMPTY = "became_empty"


def _d(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


class CircularHull:
    """Semi-dynamic circular hull for insertions in boundary order.

    ``pops`` counts hull vertices discarded over the lifetime of the
    structure; each inserted point is discarded at most once, so
    ``pops <= inserted``.  ``pop_log[k]`` lists the vertices removed by the
    ``k``-th insertion.
    """

    def __init__(self, r: float, validate_order: bool = False):
        if not r > 0:
            raise NonpositiveRadius(f"radius must be positive, got {r!r}")
        self.r = float(r)
        self.verts: deque = deque()
        self.empty = False
        self.inserted = 0
        self.pops = 0
        self.pop_log: list = []
        self.validate_order = validate_order
        self._last = None

    def __len__(self):
        return len(self.verts)

    @property
    def state(self):
        return Status.BECAME_EMPTY if self.empty else Status.NONEMPTY

    def _in(self, c, p):
        return c is not None and _d(c, p) <= self.r * (1 + _TOL)

    def insert(self, p) -> Status:
        p = Point(float(p[0]), float(p[1]))
        self.inserted += 1
        popped: list = []
        self.pop_log.append(popped)
        if self.empty:
            return Status.BECAME_EMPTY
        h = self.verts
        r = self.r
        if self.validate_order and len(h) >= 2:
            _check_order(h, p)
        if not h:
            h.append(p)
            return Status.NONEMPTY
        if len(h) == 1:
            if _d(h[0], p) > 2 * r * (1 + _TOL):
                return self._die()
            if p != h[0]:
                h.append(p)
            return Status.NONEMPTY
        # p inside the closing arc's supporting disk: hull unchanged
        if self._in(center_left(h[-1], h[0], r), p):
            return Status.NONEMPTY
        while len(h) >= 2 and self._in(center_left(h[-2], p, r), h[-1]):
            popped.append(h.pop())
        while len(h) >= 2 and self._in(center_left(p, h[1], r), h[0]):
            popped.append(h.popleft())
        self.pops += len(popped)
        if len(h) == 1:
            if _d(h[0], p) > 2 * r * (1 + _TOL):
                return self._die()
            h.append(p)
            return Status.NONEMPTY
        cb = center_left(h[-1], p, r)
        cf = center_left(p, h[0], r)
        if (cb is None or cf is None
                or not self._in(cb, h[-2]) or not self._in(cb, h[0])
                or not self._in(cf, h[1]) or not self._in(cf, h[-1])):
            return self._die()
        h.append(p)
        return Status.NONEMPTY

    def _die(self):
        self.empty = True
        return Status.BECAME_EMPTY

    # queries ---------------------------------------------------------------
    def _require(self):
        if self.empty or not self.verts:
            raise EmptyHull("hull is empty")

    def vertices(self):
        return list(self.verts)

    def _index(self, v):
        for i, w in enumerate(self.verts):
            if w == v:
                return i
        raise NotAHullVertex(v)

    def neighbors(self, v):
        """``(ccw(v), cw(v))`` on the hull boundary."""
        self._require()
        i = self._index(v)
        h = self.verts
        return h[(i + 1) % len(h)], h[i - 1]

    def supporting_disk(self, v) -> Disk:
        """Disk of radius r whose boundary carries the arc from ``v`` to ``ccw(v)``."""
        self._require()
        ccw, _ = self.neighbors(v)
        if ccw == v:
            return Disk(v, self.r)
        c = center_left(v, ccw, self.r)
        if c is None:
            raise EmptyHull("consecutive hull vertices farther than 2r")
        return Disk(c, self.r)

    def corners(self):
        """Centres of the supporting disks, in hull order (corner i between vertex i and i+1)."""
        self._require()
        h = list(self.verts)
        if len(h) == 1:
            return []
        return [center_left(h[i], h[(i + 1) % len(h)], self.r) for i in range(len(h))]

    def dual_intersection(self) -> "DiskIntersection":
        self._require()
        h = list(self.verts)
        if len(h) == 1:
            return DiskIntersection(self.r, [(h[0], None, None)])
        cs = self.corners()
        arcs = [(h[i], cs[i - 1], cs[i]) for i in range(len(h))]
        return DiskIntersection(self.r, arcs)

    def contains(self, q, eps=1e-9) -> bool:
        """Whether ``q`` lies in the hull region (inside every supporting disk)."""
        self._require()
        h = list(self.verts)
        if len(h) == 1:
            return _d(h[0], q) <= eps * self.r
        return all(_d(c, q) <= self.r * (1 + eps) for c in self.corners())


def _check_order(h, p):
    # p must not fall strictly inside the angular range already spanned
    a, b = h[-1], h[0]
    cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cr > 1e-12 * max(_d(a, b), 1.0) ** 2:
        raise OrderViolation(f"{p} does not follow the inserted points counterclockwise")


def build_hull(points, r, **kw) -> CircularHull:
    h = CircularHull(r, **kw)
    for p in points:
        h.insert(p)
    return h


@dataclass(frozen=True)
class DiskIntersection:
    """Intersection of radius-r disks, as arcs ``(center, start, end)`` in CCW order.

    A single arc with ``start is None`` denotes a full disk.
    """

    r: float
    arcs: list

    @property
    def corners(self):
        return [a[2] for a in self.arcs if a[2] is not None]

    def contains(self, q, eps=1e-9) -> bool:
        return all(_d(c, q) <= self.r * (1 + eps) for c, _, _ in self.arcs)

    def is_empty(self):
        return not self.arcs


@dataclass(frozen=True)
class EdgeEvent:
    location: BoundaryPoint
    kind: str
    departing_vertex: Point
    supporting_disk: Disk


def hull_edge_events(hull: CircularHull, a, b, edge_index: int):
    """Points on segment ``ab`` where the hull neighbour of a moving point changes.

    The neighbour of a point x on the edge switches exactly when x crosses
    the boundary of a supporting disk, i.e. a circle of radius r centred at
    a corner of the dual intersection.
    """
    from .geom import circle_segment_intersections

    out = []
    h = list(hull.verts)
    if len(h) < 2:
        return out
    cs = hull.corners()
    for i, c in enumerate(cs):
        if c is None:
            continue
        d = Disk(c, hull.r)
        for t, _ in circle_segment_intersections(d, a, b):
            if 0.0 < t < 1.0:
                out.append(EdgeEvent(BoundaryPoint(edge_index, t), "neighbor_change",
                                     h[(i + 1) % len(h)], d))
    out.sort(key=lambda e: e.location.t)
    return out


def _side_neighbor(points, x, r, front):
    """Hull neighbour of x towards the fixed points, or None if x is hidden.

    ``front`` means x precedes the points counterclockwise.
    """
    h = build_hull([x] + points if front else points + [x], r)
    if h.empty:
        return "empty"
    vs = h.vertices()
    if x not in vs:
        return None
    ccw, cw = h.neighbors(x)
    return ccw if front else cw


def edge_events(P: ConvexPolygon, start_vertex_index: int, edge: int, r: float,
                direction: str = "cw"):
    """Event points on ``edge`` for a point moving along it.

    For ``direction="cw"`` the fixed points are the vertices from
    ``start_vertex_index`` clockwise down to the far endpoint of ``edge``
    (the endpoint farther counterclockwise), modelling x sliding clockwise
    along the edge in front of the chain from x to the anchor.  ``"ccw"``
    is the mirror image: vertices counterclockwise from the anchor up to
    the near endpoint, with x behind them.

    Candidates are the crossings of supporting circles with the edge; an
    event is kept where the hull neighbour of x on the chain side changes
    (including x becoming or ceasing to be a hull vertex) while x and the
    chain stay r-coverable.  Events are
    sorted by edge parameter.
    """
    n = P.n
    if direction == "cw":
        pts = []
        k = start_vertex_index
        stop = (edge + 1) % n
        while True:
            pts.append(P.vertex(k))
            if k % n == stop:
                break
            k -= 1
        pts.reverse()
        front = True
    elif direction == "ccw":
        pts = []
        k = start_vertex_index
        while True:
            pts.append(P.vertex(k))
            if k % n == edge % n:
                break
            k += 1
        front = False
    else:
        raise ValueError(f"unknown direction {direction!r}")
    hull = build_hull(pts, r)
    if hull.empty:
        return []
    a, b = P.vertex(edge), P.vertex(edge + 1)
    out = []
    eta = 1e-9
    for ev in hull_edge_events(hull, a, b, edge % n):
        t = ev.location.t
        # at an endpoint x coincides with a vertex; nothing moves there
        if t < eta or t > 1.0 - eta:
            continue
        lo, hi = max(t - eta, 0.0), min(t + eta, 1.0)
        pa = (a[0] + lo * (b[0] - a[0]), a[1] + lo * (b[1] - a[1]))
        pb = (a[0] + hi * (b[0] - a[0]), a[1] + hi * (b[1] - a[1]))
        before = _side_neighbor(pts, Point(*pa), r, front)
        after = _side_neighbor(pts, Point(*pb), r, front)
        if "empty" in (before, after):
            # x leaving the coverable range is not a neighbour change
            continue
        if before != after:
            # the vertex that stops being the neighbour in the direction of travel
            gone = after if direction == "cw" else before
            out.append(EdgeEvent(ev.location, "neighbor_change",
                                 gone if isinstance(gone, Point) else None, ev.supporting_disk))
    return out
