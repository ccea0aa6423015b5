"""Minimum two-disk radius by bisection over the decision procedure."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .decision import DecisionResult, decide
from .geom import EPS_GEOM, BoundaryPoint, ConvexPolygon, Disk, circle_segment_intersections
from .mec import mec


class RadiusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SolveResult:
    """Certified bracket: no cover at ``r_low``, the returned disks at ``r_high``."""

    r_low: float
    r_high: float
    disks: tuple
    splits: tuple
    iterations: int = 0

    @property
    def radius(self):
        return self.r_high


def upper_bound(P: ConvexPolygon) -> float:
    return mec(P.vertices).radius


def solve(P: ConvexPolygon, tol: float = 1e-9, max_iter: int = 200) -> SolveResult:
    """Bisect on r until ``r_high - r_low <= tol * r_high``.

    The bracket starts at ``[0, mec radius]``; 0 counts as infeasible
    without a probe.  The witness comes from the last feasible probe.
    """
    if not (0 < tol <= 0.1):
        raise ValueError(f"tol must lie in (0, 0.1], got {tol!r}")
    hi = upper_bound(P)
    lo = 0.0
    best: DecisionResult = decide(P, hi)
    it = 0
    while hi - lo > tol * hi and it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        res = decide(P, mid)
        if res.answer:
            hi, best = mid, res
        else:
            lo = mid
        it += 1
    w = best.witness
    return SolveResult(lo, hi, (w.D1, w.D2), (w.x, w.split2), it)


def _inside_either(p, d1, d2, eps):
    return d1.contains(p, eps) or d2.contains(p, eps)


def verify_cover(P: ConvexPolygon, d1: Disk, d2: Disk, eps: float = None) -> bool:
    """Whether the union of two equal disks contains the boundary of P.

    Each edge is cut at its crossings with both circles; a piece is inside
    a disk when its endpoints and midpoint are, by convexity.
    """
    r = max(d1.radius, d2.radius)
    if abs(d1.radius - d2.radius) > EPS_GEOM * max(r, 1e-300):
        raise RadiusMismatch(f"disk radii differ: {d1.radius!r} vs {d2.radius!r}")
    if eps is None:
        eps = EPS_GEOM * P.diameter
    n = P.n
    for i in range(n):
        a, b = P.vertex(i), P.vertex(i + 1)
        ts = {0.0, 1.0}
        for d in (d1, d2):
            ts.update(t for t, _ in circle_segment_intersections(d, a, b))
        ts = sorted(ts)
        pts = [(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])) for t in ts]
        for p in pts:
            if not _inside_either(p, d1, d2, eps):
                return False
        for k in range(len(ts) - 1):
            p, q = pts[k], pts[k + 1]
            m = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
            # a piece lies in one disk only if the same disk holds all three points
            if not any(d.contains(p, eps) and d.contains(q, eps) and d.contains(m, eps)
                       for d in (d1, d2)):
                return False
    return True
