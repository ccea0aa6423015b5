"""Minimum enclosing disk of point sets and boundary chains.

Randomized incremental construction (Welzl's algorithm in the iterative
form popularised by Nayuki).  The shuffle is seeded from the input
coordinates so repeated calls on the same data take the same path.
"""
from __future__ import annotations

import hashlib
import math
import random
import struct
from dataclasses import dataclass

import numpy as np

from .geom import EPS_GEOM, Chain, ConvexPolygon, Disk, Point, chain_points

_REL = 1e-14


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class MecResult:
    disk: Disk
    support: tuple

    @property
    def radius(self):
        return self.disk.radius

    @property
    def center(self):
        return self.disk.center


def _seed(pts):
    h = hashlib.blake2b(digest_size=8)
    for x, y in pts:
        h.update(struct.pack("<dd", x, y))
    return int.from_bytes(h.digest(), "little")


def _inside(c, p):
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + _REL) + 1e-300


def _diametral(a, b):
    cx = 0.5 * (a[0] + b[0])
    cy = 0.5 * (a[1] + b[1])
    return (cx, cy, max(math.hypot(a[0] - cx, a[1] - cy), math.hypot(b[0] - cx, b[1] - cy)), (a, b))


def _circum(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    ra = math.hypot(x - a[0], y - a[1])
    rb = math.hypot(x - b[0], y - b[1])
    rc = math.hypot(x - c[0], y - c[1])
    return (x, y, max(ra, rb, rc), (a, b, c))


def _cross(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _with_two(pts, p, q):
    circ = _diametral(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in pts:
        if _inside(circ, r):
            continue
        cr = _cross(px, py, qx, qy, r[0], r[1])
        c = _circum(p, q, r)
        if c is None:
            continue
        cc = _cross(px, py, qx, qy, c[0], c[1])
        if cr > 0.0 and (left is None or cc > _cross(px, py, qx, qy, left[0], left[1])):
            left = c
        elif cr < 0.0 and (right is None or cc < _cross(px, py, qx, qy, right[0], right[1])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _with_one(pts, p):
    c = (p[0], p[1], 0.0, (p,))
    for i, q in enumerate(pts):
        if not _inside(c, q):
            if c[2] == 0.0:
                c = _diametral(p, q)
            else:
                c = _with_two(pts[: i + 1], p, q)
    return c


_VECTOR_MIN = 200


def _circle_np(c):
    return c[0], c[1], c[2]


def _outside_np(arr, c):
    d = np.hypot(arr[:, 0] - c[0], arr[:, 1] - c[1])
    return d > c[2] * (1 + _REL) + 1e-300


def _first_outside_np(arr, lo, hi, c):
    """Index of the first point in ``arr[lo:hi]`` outside ``c``, scanning in growing blocks."""
    step = 64
    while lo < hi:
        top = min(hi, lo + step)
        idx = np.flatnonzero(_outside_np(arr[lo:top], c))
        if len(idx):
            return lo + int(idx[0])
        lo = top
        step *= 2
    return -1


def _with_two_np(sub, p, q):
    circ = _diametral(p, q)
    pts = sub[_outside_np(sub, circ)]
    if len(pts) == 0:
        return circ
    px, py = p
    qx, qy = q
    cr = (qx - px) * (pts[:, 1] - py) - (qy - py) * (pts[:, 0] - px)
    best = {}
    for side, mask in ((1, cr > 0.0), (-1, cr < 0.0)):
        cand = pts[mask]
        if len(cand) == 0:
            continue
        ox, oy = 0.5 * (px + qx), 0.5 * (py + qy)
        ax, ay = px - ox, py - oy
        bx, by = qx - ox, qy - oy
        cx, cy = cand[:, 0] - ox, cand[:, 1] - oy
        d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
        ok = d != 0.0
        if not ok.any():
            continue
        cand, cx, cy, d = cand[ok], cx[ok], cy[ok], d[ok]
        a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
        ux = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
        uy = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
        cc = (qx - px) * (uy - py) - (qy - py) * (ux - px)
        k = int(np.argmax(cc)) if side > 0 else int(np.argmin(cc))
        best[side] = _circum(p, q, (float(cand[k, 0]), float(cand[k, 1])))
    left, right = best.get(1), best.get(-1)
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _with_one_np(arr, j):
    p = (float(arr[j, 0]), float(arr[j, 1]))
    c = (p[0], p[1], 0.0, (p,))
    k = 0
    while True:
        k = _first_outside_np(arr, k, j, c)
        if k < 0:
            return c
        q = (float(arr[k, 0]), float(arr[k, 1]))
        c = _diametral(p, q) if c[2] == 0.0 else _with_two_np(arr[:k], p, q)
        k += 1


def _mec_np(pts):
    arr = np.asarray(pts, dtype=float)
    c = (pts[0][0], pts[0][1], 0.0, (pts[0],))
    i = 1
    while True:
        i = _first_outside_np(arr, i, len(arr), c)
        if i < 0:
            return c
        c = _with_one_np(arr, i)
        i += 1


def mec(points) -> MecResult:
    """Smallest disk containing ``points``."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise EmptyInput("mec of an empty point set")
    pts = list(dict.fromkeys(pts))
    random.Random(_seed(pts)).shuffle(pts)
    if len(pts) >= _VECTOR_MIN:
        c = _mec_np(pts)
    else:
        c = None
        for i, p in enumerate(pts):
            if c is None or not _inside(c, p):
                c = _with_one(pts[: i + 1], p)
    support = tuple(Point(*s) for s in c[3])
    return MecResult(Disk(Point(c[0], c[1]), c[2]), support)


def mec_radius(points) -> float:
    return mec(points).radius


def tau(P: ConvexPolygon, c: Chain) -> float:
    """Smallest radius covering the chain ``c``."""
    return mec(c.points(P)).radius


def tau_lifted(P: ConvexPolygon, s0: float, s1: float) -> float:
    """Smallest radius covering the chain between lifted coordinates ``s0 <= s1``."""
    return mec(chain_points(P, s0, s1)).radius


def is_chain_coverable(P: ConvexPolygon, c: Chain, r: float) -> bool:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return tau(P, c) <= r * (1 + EPS_GEOM)
