"""Planar primitives, the convex polygon model and boundary parameterization.

Points on the polygon boundary are addressed two ways: as a
:class:`BoundaryPoint` (edge index plus a fraction along that edge) and as
an arc-length coordinate ``s`` measured counterclockwise from the first
vertex.  Arc lengths may be *lifted* (unrolled past the perimeter) so that
circular comparisons become ordinary inequalities.
"""
from __future__ import annotations

import bisect
import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

#: Relative tolerance for all degeneracy tests (scaled by polygon diameter).
EPS_GEOM = 1e-9


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class TooFewVertices(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class DegenerateEdge(GeometryError):
    pass


class CocircularQuadruple(GeometryError):
    pass


class Collinear(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise ValueError(f"invalid disk radius {self.radius!r}")

    def contains(self, p, eps=0.0):
        c = self.center
        return math.hypot(p[0] - c[0], p[1] - c[1]) <= self.radius + eps


class BoundaryPoint(NamedTuple):
    edge: int
    t: float


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def circumcircle3(a, b, c) -> Disk:
    """Disk whose boundary passes through ``a``, ``b`` and ``c``."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(dist(a, b), dist(b, c), dist(a, c), 1e-300)
    if abs(d) <= EPS_GEOM * scale * scale:
        raise Collinear(f"points {a}, {b}, {c} are collinear")
    # shift to a for accuracy
    bx, by, cx, cy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Disk(Point(ax + ux, ay + uy), math.hypot(ux, uy))


def center_left(a, b, r):
    """Center of the radius-``r`` circle through ``a`` and ``b`` lying left of a->b.

    Returns ``None`` when ``|ab| > 2r``.
    """
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    d2 = dx * dx + dy * dy
    h2 = r * r - 0.25 * d2
    if h2 < 0.0:
        if h2 > -1e-12 * r * r:
            h2 = 0.0
        else:
            return None
    d = math.sqrt(d2)
    if d == 0.0:
        return None
    k = math.sqrt(h2) / d
    return Point(0.5 * (a[0] + b[0]) - k * dy, 0.5 * (a[1] + b[1]) + k * dx)


def circle_segment_intersections(d: Disk, a, b, eps=EPS_GEOM):
    """Intersections of the circle ``∂d`` with segment ``ab``.

    Returns a list of ``(t, Point)`` with ``t`` in [0, 1] ascending.  A
    grazing contact (within ``eps`` relative to the radius) is reported once.
    """
    ex, ey = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - d.center[0], a[1] - d.center[1]
    A = ex * ex + ey * ey
    if A == 0.0:
        raise DegenerateEdge("segment has zero length")
    B = 2.0 * (fx * ex + fy * ey)
    C = fx * fx + fy * fy - d.radius * d.radius
    disc = B * B - 4.0 * A * C
    # tangency tolerance: distance from center to line within eps*radius of r
    dline = abs(fx * ey - fy * ex) / math.sqrt(A)
    if abs(dline - d.radius) <= eps * max(d.radius, 1e-300):
        ts = [-B / (2.0 * A)]
    elif disc < 0.0:
        return []
    else:
        sq = math.sqrt(disc)
        ts = [(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)]
    out = []
    for t in ts:
        if -1e-12 <= t <= 1.0 + 1e-12:
            t = min(max(t, 0.0), 1.0)
            out.append((t, Point(a[0] + t * ex, a[1] + t * ey)))
    return out


def cocircularity(pts: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """Scale-free in-circle measure for each index quadruple in ``combos``.

    The in-circle determinant is divided by the product of three spans and
    the largest of them, so the value reads as a relative tolerance.
    """
    p = pts[combos]  # (m, 4, 2)
    q = p - p[:, 3:4, :]
    w = (q ** 2).sum(axis=2)
    det = (q[:, 0, 0] * (q[:, 1, 1] * w[:, 2] - w[:, 1] * q[:, 2, 1])
           - q[:, 0, 1] * (q[:, 1, 0] * w[:, 2] - w[:, 1] * q[:, 2, 0])
           + w[:, 0] * (q[:, 1, 0] * q[:, 2, 1] - q[:, 1, 1] * q[:, 2, 0]))
    spans = np.sqrt(w[:, :3])
    return np.abs(det) / np.maximum(spans.prod(axis=1) * spans.max(axis=1), 1e-300)


def window_quadruples(n: int) -> np.ndarray:
    return (np.arange(n)[:, None] + np.arange(4)[None, :]) % n


@functools.lru_cache(maxsize=8)
def _all_quadruples(n: int) -> np.ndarray:
    combos = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), 4)),
                         dtype=np.intp).reshape(-1, 4)
    combos.flags.writeable = False
    return combos


def _cocircular_quadruples(pts: np.ndarray, tol: float, exhaustive: bool):
    """Return the first nearly cocircular quadruple of indices, or None."""
    n = len(pts)
    if exhaustive:
        combos = _all_quadruples(n)
    else:
        combos = window_quadruples(n)
    if len(combos) == 0:
        return None
    bad = np.nonzero(cocircularity(pts, combos) <= tol)[0]
    if len(bad):
        return tuple(int(i) for i in combos[bad[0]])
    return None


#: Above this many vertices only cyclically consecutive quadruples are checked.
EXHAUSTIVE_COCIRCULAR_LIMIT = 64


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon with vertices in counterclockwise order.

    Construct through :func:`validate_polygon`.
    """

    vertices: tuple
    edge_lengths: tuple = field(repr=False)
    cumulative: tuple = field(repr=False)  # cumulative[i] = arc length at vertex i; len n+1
    diameter: float = field(repr=False)

    @property
    def n(self):
        return len(self.vertices)

    @property
    def perimeter(self):
        return self.cumulative[-1]

    @property
    def eps(self):
        """Absolute geometric tolerance for this polygon."""
        return EPS_GEOM * self.diameter

    def vertex(self, i):
        return self.vertices[i % len(self.vertices)]

    def vertex_s(self, i):
        """Lifted arc-length coordinate of vertex ``i`` (any integer)."""
        q, k = divmod(i, len(self.vertices))
        return self.cumulative[k] + q * self.perimeter

    def point_at(self, s):
        """Point at lifted arc length ``s``."""
        return realize(self, from_lifted(self, s))

    def key(self):
        return tuple((float(p.x), float(p.y)) for p in self.vertices)

    def mirrored(self):
        """Reflection x -> -x with the vertex order fixed up to stay CCW.

        Vertex ``k`` of the mirror is the reflection of vertex ``-k`` of self,
        so arc length ``s`` on self corresponds to ``(L - s) mod L`` on the
        mirror.
        """
        n = self.n
        pts = [Point(-self.vertices[(-k) % n].x, self.vertices[(-k) % n].y) for k in range(n)]
        return _build(pts)


def _build(pts):
    n = len(pts)
    lengths = tuple(dist(pts[i], pts[(i + 1) % n]) for i in range(n))
    cum = [0.0]
    for ell in lengths:
        cum.append(cum[-1] + ell)
    return ConvexPolygon(tuple(pts), lengths, tuple(cum), convex_diameter(pts))


def convex_diameter(pts) -> float:
    """Diameter of a convex CCW vertex sequence by rotating calipers."""
    n = len(pts)
    if n < 3:
        return max((dist(a, b) for a in pts for b in pts), default=0.0)
    best = 0.0
    j = 1
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        while abs(cross(a, b, pts[(j + 1) % n])) > abs(cross(a, b, pts[j])):
            j = (j + 1) % n
        best = max(best, dist(a, pts[j]), dist(b, pts[j]))
    return best


def validate_polygon(points: Sequence, *, allow_cocircular: bool = False) -> ConvexPolygon:
    """Validate ``points`` as a strictly convex CCW polygon.

    Raises :class:`TooFewVertices`, :class:`NotConvex`, :class:`DegenerateEdge`
    or :class:`CocircularQuadruple`.  Clockwise input is rejected rather
    than reversed.  ``allow_cocircular`` skips the general-position check
    (squares and rectangles fail it by construction).
    """
    pts = []
    for p in points:
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError(f"non-finite coordinate in {p!r}")
        pts.append(Point(x, y))
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    arr = np.asarray(pts)
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    scale = float(np.hypot(*(hi - lo)))
    if scale == 0.0:
        raise DegenerateEdge("all vertices coincide")
    lengths = np.hypot(*(np.roll(arr, -1, axis=0) - arr).T)
    short = np.nonzero(lengths < EPS_GEOM * scale)[0]
    if len(short):
        raise DegenerateEdge(f"edge {int(short[0])} has near-zero length")
    nxt = np.roll(arr, -1, axis=0)
    prv = np.roll(arr, 1, axis=0)
    area2 = float(np.sum(arr[:, 0] * nxt[:, 1] - arr[:, 1] * nxt[:, 0]))
    if area2 <= 0:
        raise NotConvex("vertices are not in counterclockwise order")
    u = arr - prv
    w = nxt - arr
    turns = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
    # sine of the turn angle, so the test does not depend on edge lengths
    sines = turns / (np.hypot(u[:, 0], u[:, 1]) * np.hypot(w[:, 0], w[:, 1]))
    bad = np.nonzero(sines <= EPS_GEOM)[0]
    if len(bad):
        raise NotConvex(f"turn at vertex {int(bad[0])} is not strictly convex")
    # a locally convex CCW polygon can still wind more than once
    turn = float(np.sum(np.arctan2(turns, u[:, 0] * w[:, 0] + u[:, 1] * w[:, 1])))
    if abs(turn - 2 * math.pi) > 1e-6:
        raise NotConvex("polygon winds more than once")
    if not allow_cocircular and n >= 4:
        quad = _cocircular_quadruples(arr, EPS_GEOM, n <= EXHAUSTIVE_COCIRCULAR_LIMIT)
        if quad is not None:
            raise CocircularQuadruple(f"vertices {quad} are cocircular")
    return _build(pts)


def realize(P: ConvexPolygon, b: BoundaryPoint) -> Point:
    a = P.vertices[b.edge]
    c = P.vertices[(b.edge + 1) % P.n]
    return Point(a[0] + b.t * (c[0] - a[0]), a[1] + b.t * (c[1] - a[1]))


def to_lifted(P: ConvexPolygon, b: BoundaryPoint) -> float:
    return P.cumulative[b.edge] + b.t * P.edge_lengths[b.edge]


def from_lifted(P: ConvexPolygon, s: float) -> BoundaryPoint:
    L = P.perimeter
    s = math.fmod(s, L)
    if s < 0:
        s += L
    i = bisect.bisect_right(P.cumulative, s) - 1
    i = min(max(i, 0), P.n - 1)
    t = (s - P.cumulative[i]) / P.edge_lengths[i]
    if t >= 1.0:
        i, t = (i + 1) % P.n, 0.0
    return BoundaryPoint(i, max(t, 0.0))


def circular_compare(L: float, anchor: float, a: float, b: float) -> int:
    """Compare ``a`` and ``b`` in counterclockwise order as seen from ``anchor``.

    Returns -1, 0 or 1.
    """
    da = (a - anchor) % L
    db = (b - anchor) % L
    return (da > db) - (da < db)


@dataclass(frozen=True)
class Chain:
    """Counterclockwise boundary chain from ``start`` to ``end``.

    ``full`` marks the chain that goes once around the polygon when the
    two endpoints coincide; otherwise coinciding endpoints mean a single
    point.
    """

    start: BoundaryPoint
    end: BoundaryPoint
    full: bool = False

    def span(self, P: ConvexPolygon) -> float:
        s0 = to_lifted(P, self.start)
        s1 = to_lifted(P, self.end)
        d = (s1 - s0) % P.perimeter
        if d == 0.0 and self.full:
            return P.perimeter
        return d

    def points(self, P: ConvexPolygon) -> list:
        """Distinct chain vertices: start, interior polygon vertices, end."""
        s0 = to_lifted(P, self.start)
        return chain_points(P, s0, s0 + self.span(P))


def chain_points(P: ConvexPolygon, s0: float, s1: float) -> list:
    """Vertices of the chain between lifted coordinates ``s0 <= s1``."""
    n = P.n
    L = P.perimeter
    start = P.point_at(s0)
    out = [start]
    b = from_lifted(P, s0)
    if s1 - s0 >= L:
        for k in range(b.edge + 1, b.edge + 1 + n):
            v = P.vertex(k)
            if v != start:
                out.append(v)
        return out
    base = round((s0 - to_lifted(P, b)) / L) * L
    k = b.edge + 1
    while base + P.vertex_s(k) < s1:
        out.append(P.vertex(k))
        k += 1
    if s1 > s0:
        end = P.point_at(s1)
        if end != out[-1]:
            out.append(end)
    return out
