"""Two-disk decision for a convex polygon at a fixed radius.

For a boundary point x, f(x) is the farthest point counterclockwise such
that the chain from x to f(x) fits in a radius-r disk; g(x) is the same
clockwise.  Both are tracked in lifted arc length, F(s) in [s, s+L] and
G(s) in [s-L, s], and two disks suffice exactly when F(s) - G(s) >= L for
some s.

F is built by one sweep of x around the boundary.  The vertices strictly
between x and f(x) live in a :class:`~bicover._window.WindowHull`; f(x) is
where the image edge leaves the r-neighbourhood of the dual disk
intersection of x plus those vertices.  Which feature of that region the
edge leaves through decides the piece type:

* the arc around x itself: ``|x - f| = 2r``                      (T2)
* a corner next to x: circle through x and a vertex v            (T1)
* an arc around a vertex u: ``|u - f| = 2r``, f constant          (T3)
* any other corner: a fixed supporting disk, f constant          (T4)

Between events the feature is fixed, so each piece carries a closed form.
G comes from the same sweep on the mirrored polygon.
"""
from __future__ import annotations

import bisect
import enum
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._window import HullDied, WindowHull, center_left as _cl
from .geom import BoundaryPoint, ConvexPolygon, Disk, Point, chain_points, from_lifted
from .mec import mec

_sqrt = math.sqrt


class InvalidRadius(ValueError):
    pass


class RadiusTooSmall(InvalidRadius):
    pass


class OneDiskSuffices(ValueError):
    """The operation needs a polygon that one radius-r disk does not cover."""


class SelfAuditError(AssertionError):
    """The debug self-audit found a piece that disagrees with a fresh evaluation."""


class PieceType(enum.Enum):
    T1 = "T1"  # circle through x and a fixed vertex
    T2 = "T2"  # x and f(x) antipodal
    T3 = "T3"  # f(x) antipodal to a fixed vertex, constant
    T4 = "T4"  # fixed supporting disk, constant


# evaluator kinds
_K_T2, _K_CCW, _K_CW, _K_CONST = 0, 1, 2, 3


@dataclass(frozen=True)
class Piece:
    """One closed-form stretch of a coverage function.

    ``x_interval`` is in lifted arc length and lies within edge
    ``x_edge``; ``image_edge`` is the lifted index of the edge holding the
    image.  Evaluation is :meth:`value`.
    """

    x_interval: tuple
    x_edge: int
    image_edge: int
    type: PieceType
    determinators: tuple
    kind: int = field(repr=False)
    data: tuple = field(repr=False)

    def value(self, s: float) -> float:
        return _eval(self.kind, self.data, s)


def _root(ax, ay, ex, ey, cx, cy, rho):
    """Larger t with |a + t e - c| = rho, or None."""
    fx, fy = ax - cx, ay - cy
    beta = fx * ex + fy * ey
    disc = beta * beta - (fx * fx + fy * fy - rho * rho)
    if disc < 0.0:
        if disc > -1e-10 * rho * rho:
            disc = 0.0
        else:
            return None
    return -beta + _sqrt(disc)


def _eval(kind, d, s):
    # d = (sx0, X0x, X0y, exx, exy, sb, Ax, Ay, ex, ey, length, r, extra...)
    if kind == _K_CONST:
        return d[5] + d[12]
    u = s - d[0]
    xx = d[1] + u * d[3]
    xy = d[2] + u * d[4]
    r = d[11]
    if kind == _K_T2:
        t = _root(d[6], d[7], d[8], d[9], xx, xy, 2 * r)
    else:
        if kind == _K_CCW:
            c = _cl(xx, xy, d[12], d[13], r)
        else:
            c = _cl(d[12], d[13], xx, xy, r)
        t = None if c is None else _root(d[6], d[7], d[8], d[9], c[0], c[1], r)
    if t is None:
        t = 0.0
    return d[5] + min(max(t, 0.0), d[10])


@dataclass
class CoverageFunction:
    """Piecewise closed form of F (direction ``"ccw"``) or G (``"cw"``).

    Breakpoints are lifted arc lengths on the polygon's own
    parameterization and tile ``[0, L)``.
    """

    direction: str
    L: float
    r: float
    breakpoints: list
    pieces: list
    mirror_pieces: list = field(default=None, repr=False)

    def __len__(self):
        return len(self.pieces)

    def __call__(self, s: float) -> float:
        L = self.L
        q = math.floor(s / L)
        s0 = s - q * L
        if self.direction == "ccw":
            return _lookup(self.pieces, self.breakpoints, s0) + q * L
        # G(s) = s - (F'(s') - s') with s' = L - s on the mirror
        sp = L - s0
        qq = 0.0
        if sp >= L:
            sp -= L
            qq = L
        fp = _lookup(self.mirror_pieces, self._mbreaks, sp)
        return s0 - (fp - sp) + q * L

    def piece_at(self, s: float) -> Piece:
        s0 = s % self.L
        i = max(bisect.bisect_right(self.breakpoints, s0) - 1, 0)
        return self.pieces[min(i, len(self.pieces) - 1)]

    @property
    def _mbreaks(self):
        return [p.x_interval[0] for p in self.mirror_pieces]


def _lookup(pieces, starts, s):
    i = bisect.bisect_right(starts, s) - 1
    i = min(max(i, 0), len(pieces) - 1)
    return pieces[i].value(s)


@dataclass(frozen=True)
class Witness:
    x: BoundaryPoint
    split2: BoundaryPoint
    D1: Disk
    D2: Disk


@dataclass(frozen=True)
class DecisionResult:
    answer: bool
    witness: Witness = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def label(self):
        return "yes" if self.answer else "no"


# ---------------------------------------------------------------------------
# one disk

def one_disk_check(P: ConvexPolygon, r: float):
    """The minimum enclosing disk of P if its radius is at most r, else None."""
    if not r > 0:
        raise InvalidRadius(f"radius must be positive, got {r!r}")
    d = mec(P.vertices).disk
    return d if d.radius <= r else None


# ---------------------------------------------------------------------------
# the sweep

class _Sweep:
    """Builds the pieces of F for polygon P at radius r."""

    def __init__(self, P: ConvexPolygon, r: float):
        self.P = P
        self.r = r
        n = self.n = P.n
        self.L = P.perimeter
        self.vx = [v[0] for v in P.vertices]
        self.vy = [v[1] for v in P.vertices]
        self.cum = list(P.cumulative)
        self.lens = list(P.edge_lengths)
        self.dirs = [((self.vx[(i + 1) % n] - self.vx[i]) / self.lens[i],
                      (self.vy[(i + 1) % n] - self.vy[i]) / self.lens[i]) for i in range(n)]
        # exact comparisons keep the state consistent with the event roots
        self.lim = r * r
        self.win = WindowHull(r, 4 * n + 16)
        self.hint_back = None
        self.hint_front = None
        self.hint_feat = None
        self.tiny = 1e-13 * self.L

    # lifted vertex helpers
    def vs(self, k):
        q, i = divmod(k, self.n)
        return self.cum[i] + q * self.L

    def vp(self, k):
        i = k % self.n
        return self.vx[i], self.vy[i]

    # -- state of x against the window ------------------------------------
    def _x_state(self, x, y):
        """Hull positions [k0, k1] kept when x is added in front, and whether x is a vertex."""
        h = self.win.hull
        px, py = h.px, h.py
        hd, m = h.head, h.tail - h.head
        r, lim = self.r, self.lim
        if m == 0:
            return 0, -1, True
        if m == 1:
            return 0, 0, not (px[hd] == x and py[hd] == y)
        c = _cl(px[hd + m - 1], py[hd + m - 1], px[hd], py[hd], r)
        if c is not None and (c[0] - x) ** 2 + (c[1] - y) ** 2 <= lim:
            return 0, m - 1, False

        def hid_back(k):
            c = _cl(px[hd + k - 1], py[hd + k - 1], x, y, r)
            return c is not None and (c[0] - px[hd + k]) ** 2 + (c[1] - py[hd + k]) ** 2 <= lim

        def hid_front(k):
            c = _cl(x, y, px[hd + k + 1], py[hd + k + 1], r)
            return c is not None and (c[0] - px[hd + k]) ** 2 + (c[1] - py[hd + k]) ** 2 <= lim

        k1 = self._pos(self.hint_back, m - 1)
        if k1 >= 1 and hid_back(k1):
            while k1 >= 1 and hid_back(k1):
                k1 -= 1
        else:
            while k1 + 1 <= m - 1 and not hid_back(k1 + 1):
                k1 += 1
        k0 = self._pos(self.hint_front, 0)
        k0 = min(k0, k1)
        if k0 < k1 and hid_front(k0):
            while k0 < k1 and hid_front(k0):
                k0 += 1
        else:
            while k0 >= 1 and not hid_front(k0 - 1):
                k0 -= 1
        return k0, k1, True

    def _pos(self, vid, default):
        h = self.win.hull
        if vid is None:
            return default
        i = bisect.bisect_left(h.ids, vid, h.head, h.tail) - h.head
        return min(max(i, 0), h.tail - h.head - 1)

    # -- the exit query --------------------------------------------------------
    def _wview(self, st, x, y):
        """Accessor for the vertices of the hull of x plus the window."""
        k0, k1, xv = st
        h = self.win.hull
        px, py, ids = h.px, h.py, h.ids
        base = h.head + k0 - (1 if xv else 0)
        mW = k1 - k0 + 1 + (1 if xv else 0)

        def W(j):
            j %= mW
            if xv and j == 0:
                return x, y, None
            k = base + j
            return px[k], py[k], ids[k]

        return W, mW

    def _feature_geom(self, W, mW, f):
        """(center, rho, Z1, Z2) of feature f on the boundary of the r-neighbourhood."""
        r = self.r
        j = f >> 1
        if f & 1:
            ax, ay, _ = W(j)
            bx, by, _ = W(j + 1)
            c = _cl(ax, ay, bx, by, r)
            if c is None:
                return None
            return c, r, (2 * c[0] - ax, 2 * c[1] - ay), (2 * c[0] - bx, 2 * c[1] - by)
        ux, uy, _ = W(j)
        px_, py_, _ = W(j - 1)
        qx, qy, _ = W(j + 1)
        cp = _cl(px_, py_, ux, uy, r)
        cn = _cl(ux, uy, qx, qy, r)
        if cp is None or cn is None:
            return None
        return (ux, uy), 2 * r, (2 * cp[0] - ux, 2 * cp[1] - uy), (2 * cn[0] - ux, 2 * cn[1] - uy)

    def _try_feature(self, g, A, e, loose=False):
        c, rho, Z1, Z2 = g
        t = _root(A[0], A[1], e[0], e[1], c[0], c[1], rho)
        if t is None:
            return None
        zx = A[0] + t * e[0] - c[0]
        zy = A[1] + t * e[1] - c[1]
        ax, ay = Z1[0] - c[0], Z1[1] - c[1]
        bx, by = Z2[0] - c[0], Z2[1] - c[1]
        tol = -1e-9 * rho * rho if loose else 0.0
        if ax * zy - ay * zx >= tol and zx * by - zy * bx >= tol:
            return t
        return None

    def _exit(self, st, x, y, b):
        """Exit feature index and parameter t of the image line of edge b."""
        W, mW = self._wview(st, x, y)
        bi = b % self.n
        A = (self.vx[bi], self.vy[bi])
        e = self.dirs[bi]
        if mW == 1:
            ux, uy, _ = W(0)
            t = _root(A[0], A[1], e[0], e[1], ux, uy, 2 * self.r)
            return 0, (0.0 if t is None else t), W, mW
        f = self._feat_pos(W, mW, st)
        nf = 2 * mW
        seen = 0
        while seen <= nf + 2:
            g = self._feature_geom(W, mW, f)
            if g is not None:
                t = self._try_feature(g, A, e)
                if t is not None:
                    self.hint_feat = (f & 1, W(f >> 1)[2])
                    return f, t, W, mW
                _, _, Z1, Z2 = g
                d1 = e[0] * (Z1[1] - A[1]) - e[1] * (Z1[0] - A[0])
                d2 = e[0] * (Z2[1] - A[1]) - e[1] * (Z2[0] - A[0])
                if d2 < 0.0:
                    f = (f + 1) % nf
                elif d1 > 0.0:
                    f = (f - 1) % nf
                else:
                    break
            else:
                break
            seen += 1
        # fallback: scan every feature, strictly first
        best = None
        for loose in (False, True):
            for f in range(nf):
                g = self._feature_geom(W, mW, f)
                if g is None:
                    continue
                t = self._try_feature(g, A, e, loose)
                if t is not None and (best is None or t > best[1]):
                    best = (f, t)
            if best is not None:
                break
        if best is None:
            raise RuntimeError("image line misses the coverable region")
        self.hint_feat = (best[0] & 1, W(best[0] >> 1)[2])
        return best[0], best[1], W, mW

    def _feat_pos(self, W, mW, st):
        hint = self.hint_feat
        if hint is None:
            return 2 * (mW - 1)
        kind, vid = hint
        if vid is None:
            j = 0 if st[2] else mW - 1
        else:
            k0 = st[0]
            h = self.win.hull
            i = bisect.bisect_left(h.ids, vid, h.head, h.tail) - h.head
            j = i - k0 + (1 if st[2] else 0)
            j = min(max(j, 0), mW - 1)
        return 2 * j + (1 if kind else 0)

    # -- the sweep ---------------------------------------------------------------
    def _state(self, s, a):
        """Evaluate at lifted s on edge a, advancing the window end as needed."""
        ai = a % self.n
        u = s - self.vs(a)
        ex, ey = self.dirs[ai]
        x = self.vx[ai] + u * ex
        y = self.vy[ai] + u * ey
        while True:
            st = self._x_state(x, y)
            f, t, W, mW = self._exit(st, x, y, self.b)
            if t < self.lens[self.b % self.n] - self.tiny:
                break
            if self.b + 1 - a >= self.n:
                raise OneDiskSuffices("chain wraps around the polygon; P is r-coverable")
            bx, by = self.vp(self.b + 1)
            try:
                self.win.push_back(self.b + 1, bx, by)
            except HullDied:
                break
            self.b += 1
        h = self.win.hull
        if h.tail > h.head:
            self.hint_front = h.ids[h.head + st[0]] if st[1] >= st[0] else None
            self.hint_back = h.ids[h.head + st[1]] if st[1] >= 0 else None
        return (x, y), st, f, min(max(t, 0.0), self.lens[self.b % self.n]), W, mW

    def run(self):
        n, L, r = self.n, self.L, self.r
        pieces = []
        self.b = 0
        s = 0.0
        a = 0
        delta = 1e-11 * L
        while a < n:
            se = self.vs(a + 1)
            if s >= se - delta:
                s = se
                self.win.pop_front()
                a += 1
                continue
            sp = min(s + delta, 0.5 * (s + se))
            xy, st, f, t, W, mW = self._state(sp, a)
            kind, dets, data, events = self._classify(a, sp, xy, st, f, t, W, mW)
            s_next = se
            for ev in events:
                if sp < ev < s_next:
                    s_next = ev
            s_next = self._numeric_events(kind, data, a, sp, s_next, W, mW, st)
            s_next = self._confirm(a, sp, s_next, st, (f & 1, W(f >> 1)[2]), delta)
            self._emit(pieces, s, s_next, a, kind, dets, data)
            s = s_next
        return pieces

    def _signature(self, a, s):
        ai = a % self.n
        u = s - self.vs(a)
        ex, ey = self.dirs[ai]
        x = self.vx[ai] + u * ex
        y = self.vy[ai] + u * ey
        st = self._x_state(x, y)
        f, t, W, _ = self._exit(st, x, y, self.b)
        return st, (f & 1, W(f >> 1)[2]), t

    def _confirm(self, a, sp, s_next, st, feat, delta):
        """Cut the piece short if the state changes before ``s_next``.

        A safety net for events missed by sampling; bisects to the first
        change, assuming there is only one.
        """
        hi = s_next - delta
        if hi <= sp:
            return s_next
        limit = self.lens[self.b % self.n] - self.tiny
        st2, feat2, t2 = self._signature(a, hi)
        if st2 == st and feat2 == feat and t2 < limit:
            return s_next
        lo = sp
        while hi - lo > delta:
            mid = 0.5 * (lo + hi)
            st2, feat2, t2 = self._signature(a, mid)
            if st2 == st and feat2 == feat and t2 < limit:
                lo = mid
            else:
                hi = mid
        return hi

    def _emit(self, pieces, s0, s1, a, kind, dets, data):
        ptype = {_K_T2: PieceType.T2, _K_CCW: PieceType.T1, _K_CW: PieceType.T1}.get(kind)
        if ptype is None:
            ptype = PieceType.T3 if len(dets) == 1 else PieceType.T4
        if pieces:
            last = pieces[-1]
            if (last.x_edge == a and last.image_edge == self.b and last.kind == kind
                    and last.determinators == dets and last.data == data):
                pieces[-1] = Piece((last.x_interval[0], s1), a, self.b, ptype, dets, kind, data)
                return
        pieces.append(Piece((s0, s1), a, self.b, ptype, dets, kind, data))

    def _classify(self, a, sp, xy, st, f, t, W, mW):
        n, r = self.n, self.r
        ai, bi = a % n, self.b % n
        ex, ey = self.dirs[ai]
        A = (self.vx[bi], self.vy[bi])
        e = self.dirs[bi]
        head = (self.vs(a), self.vx[ai], self.vy[ai], ex, ey, self.vs(self.b), A[0], A[1],
                e[0], e[1], self.lens[bi], r)
        xv = st[2]
        j = f >> 1
        events = []
        z = self.vp(self.b + 1)
        q = self._quad_roots
        if f & 1:
            (ux, uy, uid), (wx, wy, wid) = W(j), W(j + 1)
            if xv and j == 0:
                kind, dets = _K_CCW, (wid % n,)
                data = head + (wx, wy)
                c = _cl(wx, wy, z[0], z[1], r)
                if c is not None:
                    events += q(a, c, r)
                events += self._j_quad(a, A, e, wx, wy)
            elif xv and j == mW - 1:
                kind, dets = _K_CW, (uid % n,)
                data = head + (ux, uy)
                c = _cl(ux, uy, z[0], z[1], r)
                if c is not None:
                    events += q(a, c, r)
                events += self._j_quad(a, A, e, ux, uy)
            else:
                kind, dets = _K_CONST, tuple(sorted((uid % n, wid % n)))
                data = head + (t,)
        else:
            ux, uy, uid = W(j)
            if xv and j == 0:
                kind, dets = _K_T2, ()
                data = head
                events += q(a, z, 2 * r)
            else:
                kind, dets = _K_CONST, (uid % n,)
                data = head + (t,)
                if xv and (j == 1 or j == mW - 1):
                    events += self._j_quad(a, A, e, ux, uy)
        # changes of the hull of x plus the window
        h = self.win.hull
        m = h.tail - h.head
        if m >= 2:
            px, py, hd = h.px, h.py, h.head
            k0, k1 = st[0], st[1]
            cand = [(m - 1, 0)]
            if xv:
                cand += [(k0 - 1, k0), (k0, k0 + 1), (k1 - 1, k1), (k1, k1 + 1)]
            for i, k in set(cand):
                if 0 <= i < m and 0 <= k < m and i != k:
                    c = _cl(px[hd + i], py[hd + i], px[hd + k], py[hd + k], r)
                    if c is not None:
                        events += q(a, c, r)
        elif m == 1 and xv:
            events += q(a, (h.px[h.head], h.py[h.head]), 2 * r)
        return kind, dets, data, events

    def _quad_roots(self, a, c, rho):
        """Lifted s on edge a where |x(s) - c| = rho."""
        ai = a % self.n
        ex, ey = self.dirs[ai]
        fx = self.vx[ai] - c[0]
        fy = self.vy[ai] - c[1]
        beta = fx * ex + fy * ey
        disc = beta * beta - (fx * fx + fy * fy - rho * rho)
        if disc < 0.0:
            return []
        sq = _sqrt(disc)
        s0 = self.vs(a)
        return [s0 - beta - sq, s0 - beta + sq]

    def _j_quad(self, a, A, e, ux, uy):
        """Where x meets the circle with diameter from u to its antipodal image point."""
        t3 = _root(A[0], A[1], e[0], e[1], ux, uy, 2 * self.r)
        if t3 is None:
            return []
        zx, zy = A[0] + t3 * e[0], A[1] + t3 * e[1]
        return self._quad_roots(a, (0.5 * (ux + zx), 0.5 * (uy + zy)), self.r)

    def _numeric_events(self, kind, data, a, sp, s_hi, W, mW, st):
        """First switch between the antipodal piece and a neighbouring T1 piece."""
        if not st[2] or mW < 2 or kind == _K_CONST:
            return s_hi
        r = self.r
        Ax, Ay, ex, ey = data[6], data[7], data[8], data[9]
        sx0, X0x, X0y, dx, dy = data[0], data[1], data[2], data[3], data[4]
        nbrs = []
        if kind in (_K_T2, _K_CCW):
            nbrs.append(W(1))
        if kind in (_K_T2, _K_CW):
            nbrs.append(W(mW - 1))

        def phi(s, ux, uy):
            u = s - sx0
            xx, xy = X0x + u * dx, X0y + u * dy
            t2 = _root(Ax, Ay, ex, ey, xx, xy, 2 * r)
            if t2 is None:
                return 1.0
            mx = 0.5 * (xx + Ax + t2 * ex)
            my = 0.5 * (xy + Ay + t2 * ey)
            return (ux - mx) ** 2 + (uy - my) ** 2 - r * r

        best = s_hi
        for ux, uy, _ in nbrs:
            grid = [sp + (best - sp) * k / 8 for k in range(9)]
            vals = [phi(g, ux, uy) for g in grid]
            for k in range(8):
                if vals[k] == 0.0 and k > 0:
                    best = min(best, grid[k])
                    break
                if (vals[k] < 0.0) != (vals[k + 1] < 0.0):
                    root = brentq(phi, grid[k], grid[k + 1], args=(ux, uy), xtol=1e-15 * self.L)
                    if sp < root < best:
                        best = root
                    break
        return best


def build_coverage(P: ConvexPolygon, r: float, direction: str = "ccw") -> CoverageFunction:
    """Piecewise closed form of F (``"ccw"``) or G (``"cw"``) at radius r."""
    if not r > 0:
        raise InvalidRadius(f"radius must be positive, got {r!r}")
    if one_disk_check(P, r) is not None:
        raise OneDiskSuffices("P is covered by one disk of radius r")
    if direction == "ccw":
        pieces = _Sweep(P, r).run()
        return CoverageFunction("ccw", P.perimeter, r, [p.x_interval[0] for p in pieces], pieces)
    if direction == "cw":
        M = P.mirrored()
        mp = _Sweep(M, r).run()
        L = P.perimeter
        bps = sorted({(L - p.x_interval[1]) % L for p in mp} | {0.0})
        return CoverageFunction("cw", L, r, bps, [], mirror_pieces=mp)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# fresh evaluation

def _exit_of_hull(verts, r, A, e, x_index):
    """Largest t with A + t e in the r-neighbourhood of the hull region.

    ``verts`` are the hull vertices in order; ``x_index`` marks the moving
    point among them (or None).  Returns (t, kind, dets, disk center).
    """
    m = len(verts)
    best = None
    for loose in (False, True):
        for j in range(m):
            u = verts[j]
            if m == 1:
                t = _root(A[0], A[1], e[0], e[1], u[0], u[1], 2 * r)
                if t is not None:
                    best = (t, "arc", j)
                break
            p, q = verts[j - 1], verts[(j + 1) % m]
            cp = _cl(p[0], p[1], u[0], u[1], r)
            cn = _cl(u[0], u[1], q[0], q[1], r)
            feats = []
            if cp is not None and cn is not None:
                feats.append(("arc", j, u, 2 * r, (2 * cp[0] - u[0], 2 * cp[1] - u[1]),
                              (2 * cn[0] - u[0], 2 * cn[1] - u[1])))
            if cn is not None:
                feats.append(("corner", j, cn, r, (2 * cn[0] - u[0], 2 * cn[1] - u[1]),
                              (2 * cn[0] - q[0], 2 * cn[1] - q[1])))
            for kind, jj, c, rho, Z1, Z2 in feats:
                t = _root(A[0], A[1], e[0], e[1], c[0], c[1], rho)
                if t is None:
                    continue
                zx, zy = A[0] + t * e[0] - c[0], A[1] + t * e[1] - c[1]
                ax, ay = Z1[0] - c[0], Z1[1] - c[1]
                bx, by = Z2[0] - c[0], Z2[1] - c[1]
                tol = -1e-9 * rho * rho if loose else 0.0
                if ax * zy - ay * zx >= tol and zx * by - zy * bx >= tol:
                    if best is None or t > best[0]:
                        best = (t, kind, jj)
        if best is not None:
            break
    if best is None:
        raise RuntimeError("edge line misses the coverable region")
    t, kind, j = best
    z = (A[0] + t * e[0], A[1] + t * e[1])
    if kind == "arc":
        u = verts[j]
        ctr = (0.5 * (u[0] + z[0]), 0.5 * (u[1] + z[1]))
        if j == x_index:
            return t, PieceType.T2, (), ctr
        return t, PieceType.T3, (j,), ctr
    k = (j + 1) % m
    ctr = _cl(verts[j][0], verts[j][1], verts[k][0], verts[k][1], r)
    if x_index in (j, k):
        return t, PieceType.T1, ((k if j == x_index else j),), ctr
    return t, PieceType.T4, (j, k), ctr


def _farthest_lifted(P: ConvexPolygon, s: float, r: float):
    """Fresh O(n) evaluation of F at lifted s: (F, PieceType, dets, center)."""
    from .circular_hull import CircularHull, Status

    n, L = P.n, P.perimeter
    b0 = from_lifted(P, s)
    base = s - (P.cumulative[b0.edge] + b0.t * P.edge_lengths[b0.edge])
    x = P.point_at(s)
    hull = CircularHull(r)
    hull.insert(x)
    labels = {}
    k = b0.edge + 1
    last = hull.vertices()
    while True:
        if k > b0.edge + n:
            raise OneDiskSuffices("P is covered by one disk of radius r")
        v = P.vertex(k)
        if hull.insert(v) is Status.BECAME_EMPTY:
            break
        last = hull.vertices()
        labels[Point(*v)] = k % n
        k += 1
    # the image lies on edge k-1 -> k
    ei = (k - 1) % n
    A = P.vertex(ei)
    B = P.vertex(ei + 1)
    ln = P.edge_lengths[ei]
    e = ((B[0] - A[0]) / ln, (B[1] - A[1]) / ln)
    xi = None
    for i, w in enumerate(last):
        if w == x:
            xi = i
    t, ptype, dets, ctr = _exit_of_hull(last, r, A, e, xi)
    t = min(max(t, 0.0), ln)
    sb = base + P.vertex_s(k - 1) if k - 1 > b0.edge else s - b0.t * P.edge_lengths[b0.edge]
    if k - 1 == b0.edge:
        t = max(t, b0.t * ln)
    dets = tuple(sorted(labels.get(Point(*last[j]), -1) for j in dets))
    return sb + t, ptype, dets, ctr


def farthest_coverable(P: ConvexPolygon, x: BoundaryPoint, r: float, direction: str = "ccw"):
    """f_r(x) (``"ccw"``) or g_r(x) (``"cw"``) by a fresh hull build.

    Returns ``(endpoint, disk, type)`` where ``disk`` has radius r and
    covers the chain between x and the endpoint.
    """
    if not r > 0:
        raise RadiusTooSmall(f"radius must be positive, got {r!r}")
    from .geom import to_lifted

    s = to_lifted(P, x)
    if direction == "ccw":
        fs, ptype, _, ctr = _farthest_lifted(P, s, r)
        return from_lifted(P, fs), Disk(Point(*ctr), r), ptype
    if direction == "cw":
        L = P.perimeter
        M = P.mirrored()
        fs, ptype, _, ctr = _farthest_lifted(M, (L - s) % L, r)
        return from_lifted(P, L - fs), Disk(Point(-ctr[0], ctr[1]), r), ptype
    raise ValueError(f"unknown direction {direction!r}")


def anchor_points(P: ConvexPolygon, r: float):
    """x0 = first vertex and three successive farthest-coverable images."""
    xs = [BoundaryPoint(0, 0.0)]
    for _ in range(3):
        xs.append(farthest_coverable(P, xs[-1], r)[0])
    return tuple(xs)


def _audit(P, cov: CoverageFunction):
    """Compare every piece midpoint with a fresh evaluation."""
    L = P.perimeter
    Q = P if cov.direction == "ccw" else P.mirrored()
    pieces = cov.pieces if cov.direction == "ccw" else cov.mirror_pieces
    for p in pieces:
        a, b = p.x_interval
        mid = 0.5 * (a + b)
        want = _farthest_lifted(Q, mid, cov.r)[0]
        got = p.value(mid)
        if abs(want - got) > 1e-7 * L:
            raise SelfAuditError(f"piece {p} gives {got!r} at {mid!r}, fresh value {want!r}")


# ---------------------------------------------------------------------------
# decision

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo, hi, tol, iters=60):
    a, b = lo, hi
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = fn(c), fn(d)
    best = (fc, c) if fc >= fd else (fd, d)
    for _ in range(iters):
        if b - a <= tol or best[0] >= 0.0:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = fn(c)
            if fc > best[0]:
                best = (fc, c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = fn(d)
            if fd > best[0]:
                best = (fd, d)
    return best


def _search(F: CoverageFunction, G: CoverageFunction, stats):
    """First lifted s in [0, L) with F(s) - G(s) >= L, or None."""
    L = F.L
    fp = F.pieces
    mp = G.mirror_pieces
    # mirror piece j covers s in [L - b', L - a']; walk them in increasing s
    gq = [(L - p.x_interval[1], L - p.x_interval[0], p) for p in reversed(mp)]
    i = j = 0
    s = 0.0
    tol = 1e-12 * L
    examined = 0
    while i < len(fp) and j < len(gq):
        pf = fp[i]
        g0, g1, pg = gq[j]
        q = min(pf.x_interval[1], g1, L)
        if q > s:
            vf, vg = pf.value, pg.value

            def phi(u, vf=vf, vg=vg):
                return vf(u) + vg(L - u) - 2 * L

            # both sides are nondecreasing in their own argument
            if vf(q) + vg(L - s) - 2 * L >= 0.0:
                examined += 1
                for u in (s, q):
                    if phi(u) >= 0.0:
                        stats["intervals_searched"] = examined
                        return u
                val, u = _golden_max(phi, s, q, tol)
                if val >= 0.0:
                    stats["intervals_searched"] = examined
                    return u
        s = max(s, q)
        if pf.x_interval[1] <= q:
            i += 1
        if g1 <= q:
            j += 1
    stats["intervals_searched"] = examined
    return None


def _witness(P, F, G, s, r):
    L = P.perimeter
    fs, gs = F(s), G(s)
    split = 0.5 * (gs + L + fs)
    split = min(max(split, s), s + L)
    d1 = mec(chain_points(P, s, split)).disk
    d2 = mec(chain_points(P, split, s + L)).disk
    return Witness(from_lifted(P, s), from_lifted(P, split),
                   Disk(d1.center, r), Disk(d2.center, r))


def decide(P: ConvexPolygon, r: float) -> DecisionResult:
    """Whether two disks of radius r cover P, with a witness on yes."""
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r > 0):
        raise InvalidRadius(f"radius must be a positive finite number, got {r!r}")
    r = float(r)
    d = one_disk_check(P, r)
    if d is not None:
        w = Witness(BoundaryPoint(0, 0.0), BoundaryPoint(0, 0.0), Disk(d.center, r), Disk(d.center, r))
        return DecisionResult(True, w, {"one_disk": True})
    fsweep = _Sweep(P, r)
    fpieces = fsweep.run()
    gsweep = _Sweep(P.mirrored(), r)
    gpieces = gsweep.run()
    L = P.perimeter
    F = CoverageFunction("ccw", L, r, [p.x_interval[0] for p in fpieces], fpieces)
    G = CoverageFunction("cw", L, r, sorted({(L - p.x_interval[1]) % L for p in gpieces} | {0.0}),
                         [], mirror_pieces=gpieces)
    hulls = (fsweep.win, gsweep.win)
    stats = {
        "one_disk": False,
        "pieces_f": len(fpieces),
        "pieces_g": len(gpieces),
        # stack pushes are fresh insertions plus elements restored by undo
        "hull_pushes": sum(h.hull.inserts + h.hull.restores for h in hulls),
        "hull_pops": sum(h.hull.pops for h in hulls),
        "reinserts": sum(h.reinserts for h in hulls),
    }
    if os.environ.get("BICOVER_DEBUG") == "1":
        _audit(P, F)
        _audit(P, G)
    s = _search(F, G, stats)
    if s is None:
        return DecisionResult(False, None, stats)
    return DecisionResult(True, _witness(P, F, G, s, r), stats)
