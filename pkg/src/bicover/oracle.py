"""Slow, independent reference computations used to check the fast path.

Everything here is built from :func:`bicover.mec.mec` on explicit chain
vertex sets, with no circular hulls and no coverage functions, so
agreement with :mod:`bicover.decision` is meaningful.
"""
from __future__ import annotations

import functools
import hashlib
import math
import struct
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .geom import (EPS_GEOM, BoundaryPoint, ConvexPolygon, GeometryError, cocircularity,
                   from_lifted, to_lifted, validate_polygon, window_quadruples)
from .mec import mec, tau_lifted


@dataclass(frozen=True)
class OracleConfig:
    x_samples: int = 1024
    refine_rounds: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.x_samples < 8:
            raise ValueError("x_samples must be at least 8")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be nonnegative")

    def to_dict(self):
        return asdict(self)


def polygon_hash(P: ConvexPolygon) -> str:
    h = hashlib.sha256()
    for x, y in P.vertices:
        h.update(struct.pack("<dd", x, y))
    return h.hexdigest()[:16]


# tau -----------------------------------------------------------------------

def _pair_lifted(P, sx, sy):
    """(tau(x, y), tau(y, x)) for lifted ``sx <= sy <= sx + L``."""
    L = P.perimeter
    return tau_lifted(P, sx, sy), tau_lifted(P, sy, sx + L)


def tau_pair(P: ConvexPolygon, x: BoundaryPoint, y: BoundaryPoint):
    sx = to_lifted(P, x)
    sy = to_lifted(P, y)
    if sy < sx:
        sy += P.perimeter
    if sy == sx:
        raise ValueError("tau_pair needs two distinct points")
    return _pair_lifted(P, sx, sy)


def _split_bracket(P, sx, tol):
    """Bracket the y where tau(x, y) - tau(y, x) changes sign.

    Returns ``(lo, hi)`` with the difference <= 0 at ``lo`` and >= 0 at
    ``hi``; the first factor is nondecreasing and the second nonincreasing
    in y, so the sign changes once.
    """
    L = P.perimeter
    n = P.n

    def phi(sy):
        a, b = _pair_lifted(P, sx, sy)
        return a - b

    b0 = from_lifted(P, sx)
    base = sx - to_lifted(P, b0)
    # vertices strictly after x, up to one lap
    ks = [k for k in range(b0.edge + 1, b0.edge + 1 + n) if base + P.vertex_s(k) < sx + L]
    lo, hi = sx, sx + L
    i, j = 0, len(ks) - 1
    while i <= j:
        mid = (i + j) // 2
        s = base + P.vertex_s(ks[mid])
        if phi(s) <= 0.0:
            lo = s
            i = mid + 1
        else:
            hi = s
            j = mid - 1
    flo, fhi = phi(lo), phi(hi)
    if flo > 0.0 or fhi < 0.0:
        return lo, hi
    if flo == 0.0 or fhi == 0.0 or hi - lo <= tol:
        return lo, hi
    root = brentq(phi, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)
    # tighten to a certified bracket around the root
    a, b = max(lo, root - tol), min(hi, root + tol)
    if phi(a) > 0.0:
        a = lo
    if phi(b) < 0.0:
        b = hi
    return a, b


def _best_split_value(P, sx, tol):
    L = P.perimeter
    lo, hi = _split_bracket(P, sx, tol)
    vals = []
    for s in (lo, hi):
        if sx < s < sx + L:
            a, b = _pair_lifted(P, sx, s)
            vals.append(max(a, b))
    if not vals:
        return math.inf, lo
    return min(vals), lo if len(vals) == 1 or vals[0] <= vals[-1] else hi


def h_point(P: ConvexPolygon, p: BoundaryPoint) -> BoundaryPoint:
    """Farthest y counterclockwise from p with tau(p, y) <= tau(y, p)."""
    sx = to_lifted(P, p)
    lo, _ = _split_bracket(P, sx, 1e-12 * P.perimeter)
    return from_lifted(P, lo)


def h_point_lifted(P: ConvexPolygon, sx: float) -> float:
    lo, _ = _split_bracket(P, sx, 1e-12 * P.perimeter)
    return lo


def rstar_bruteforce(P: ConvexPolygon, cfg: OracleConfig = OracleConfig()) -> float:
    """Optimal two-disk radius by searching over boundary splits.

    For each sampled x the best partner y is where tau(x, y) and tau(y, x)
    cross; the result is the minimum over x after local grid refinement
    around the best sample.
    """
    L = P.perimeter
    tol = 1e-12 * L
    m = cfg.x_samples
    phase = (cfg.seed % 1000003) / 1000003.0
    xs = [(i + phase) * L / m for i in range(m)]
    vals = [_best_split_value(P, s, tol)[0] for s in xs]
    best = min(range(m), key=vals.__getitem__)
    best_s, best_v = xs[best], vals[best]
    width = L / m
    per_round = 16
    for _ in range(cfg.refine_rounds):
        grid = np.linspace(best_s - width, best_s + width, 2 * per_round + 1)
        for s in grid:
            v = _best_split_value(P, float(s), tol)[0]
            if v < best_v:
                best_v, best_s = v, float(s)
        width /= per_round
    return best_v


# slow decision ---------------------------------------------------------------

def _reach(P, s, r, sign, tol):
    """Farthest lifted arc length reachable from s by a coverable chain.

    ``sign`` is +1 for counterclockwise and -1 for clockwise.  Returns the
    conservative end of the final bracket (certified coverable).
    """
    L = P.perimeter

    def ok(d):
        a, b = (s, s + d) if sign > 0 else (s - d, s)
        return mec(_chain(P, a, b)).radius <= r

    step = L / 64
    lo = 0.0
    while lo < L:
        nxt = min(lo + step, L)
        if not ok(nxt):
            hi = nxt
            break
        lo = nxt
        step *= 2
    else:
        return s + sign * L
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return s + sign * lo


def _chain(P, a, b):
    from .geom import chain_points
    return chain_points(P, a, b)


def decide_bruteforce(P: ConvexPolygon, r: float, cfg: OracleConfig = OracleConfig(x_samples=256)) -> bool:
    """Sampled two-disk test: never a false yes, may miss a thin feasible band."""
    if r <= 0:
        raise ValueError("radius must be positive")
    if mec(P.vertices).radius <= r:
        return True
    L = P.perimeter
    tol = 1e-10 * L
    m = cfg.x_samples
    for i in range(m):
        s = i * L / m
        f = _reach(P, s, r, +1, tol)
        g = _reach(P, s, r, -1, tol)
        if f - g >= L:
            return True
    return False


# instance generation -----------------------------------------------------

def _jittered_ellipse(n, rng):
    a = 1.0
    b = float(rng.uniform(0.35, 1.0))
    rot = float(rng.uniform(0.0, 2 * math.pi))
    phase = float(rng.uniform(0.0, 2 * math.pi))
    th = phase + 2 * math.pi * (np.arange(n) + rng.uniform(0.15, 0.85, n)) / n
    pts = np.column_stack([a * np.cos(th), b * np.sin(th)])
    if n >= 4:
        prv, nxt = np.roll(pts, 1, axis=0), np.roll(pts, -1, axis=0)
        chord = nxt - prv
        sag = np.abs(chord[:, 0] * (pts[:, 1] - prv[:, 1]) - chord[:, 1] * (pts[:, 0] - prv[:, 0]))
        sag /= np.hypot(chord[:, 0], chord[:, 1])
        # a point may move a quarter of the smallest nearby sagitta, which
        # keeps every turn strictly convex
        room = np.min([np.roll(sag, k) for k in range(-2, 3)], axis=0)
        radial = pts / np.hypot(pts[:, 0], pts[:, 1])[:, None]
        amp = 0.25 * room
        u = rng.uniform(-1.0, 1.0, n)
        base = pts
        quads = window_quadruples(n)
        for _ in range(50):
            pts = base + radial * (amp * u)[:, None]
            bad = quads[cocircularity(pts, quads) <= 100 * EPS_GEOM]
            if len(bad) == 0:
                break
            # redraw the jitter of the offending windows only
            idx = np.unique(bad)
            u[idx] = rng.uniform(-1.0, 1.0, len(idx))
    c, s = math.cos(rot), math.sin(rot)
    return pts @ np.array([[c, s], [-s, c]])


@functools.lru_cache(maxsize=512)
def random_convex_polygon(n: int, seed: int) -> ConvexPolygon:
    """Deterministic random convex n-gon near an ellipse.

    Retries with a derived seed until the polygon passes validation.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    for attempt in range(100):
        rng = np.random.default_rng([n, seed, attempt])
        pts = _jittered_ellipse(n, rng)
        try:
            return validate_polygon([(float(x), float(y)) for x, y in pts])
        except GeometryError:
            continue
    raise RuntimeError(f"could not generate a valid polygon for n={n}, seed={seed}")
