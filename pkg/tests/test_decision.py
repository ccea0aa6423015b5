import math
import random

import numpy as np
import pytest

from bicover.decision import (InvalidRadius, OneDiskSuffices, PieceType, RadiusTooSmall, anchor_points,
                              build_coverage, decide, farthest_coverable, one_disk_check)
from bicover.geom import BoundaryPoint, from_lifted, realize, to_lifted, validate_polygon
from bicover.mec import tau_lifted
from bicover.optimizer import verify_cover
from bicover.oracle import random_convex_polygon

from conftest import load_acceptance


def bisect_reach(P, s, r, sign=+1, iters=200):
    """Largest d with the chain from s to s + sign*d r-coverable (d < L)."""
    L = P.perimeter
    lo, hi = 0.0, L

    def ok(d):
        a, b = (s, s + d) if sign > 0 else (s - d, s)
        return tau_lifted(P, a, b) <= r

    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * L:
            break
    return lo


def transform(P, angle, scale, shift, allow=False):
    c, s = math.cos(angle), math.sin(angle)
    pts = [(scale * (c * x - s * y) + shift[0], scale * (s * x + c * y) + shift[1]) for x, y in P.vertices]
    return validate_polygon(pts, allow_cocircular=allow)


# one disk ---------------------------------------------------------------

def test_one_disk_check_examples(square):
    d = one_disk_check(square, 0.8)
    assert d.center == pytest.approx((0.5, 0.5))
    assert one_disk_check(square, 0.7) is None
    tri = validate_polygon([(0, 0), (1, 0), (0.5, 0.9)])
    d = one_disk_check(tri, 10.0)
    assert d.radius < 10 and all(math.dist(d.center, p) <= d.radius + 1e-12 for p in tri.vertices)


# farthest coverable -------------------------------------------------------

def test_farthest_coverable_square_vertex(square):
    end, disk, ptype = farthest_coverable(square, BoundaryPoint(0, 0.0), 0.6)
    assert end.edge == 1
    want = bisect_reach(square, 0.0, 0.6) - 1.0
    assert end.t == pytest.approx(want, abs=1e-12)
    # right angle at (1,0): the hypotenuse is a diameter
    assert end.t == pytest.approx(math.sqrt(4 * 0.36 - 1), abs=1e-12)
    assert ptype is PieceType.T2
    assert disk.radius == 0.6
    for p in [(0, 0), (1, 0), realize(square, end)]:
        assert math.dist(disk.center, p) <= 0.6 + 1e-12


def test_farthest_coverable_clockwise(square):
    end, disk, _ = farthest_coverable(square, BoundaryPoint(0, 0.0), 0.6, "cw")
    # mirror image of the ccw case, past the corner (0,1)
    assert realize(square, end) == pytest.approx((math.sqrt(0.44), 1.0), abs=1e-12)
    for p in [(0, 0), (0, 1), realize(square, end)]:
        assert math.dist(disk.center, p) <= 0.6 + 1e-12


def test_farthest_coverable_matches_bisection_random():
    rng = random.Random(3)
    for seed in range(1, 6):
        P = random_convex_polygon(rng.choice([6, 10, 16]), seed)
        r = 0.6 * one_radius(P)
        L = P.perimeter
        for _ in range(10):
            s = rng.uniform(0, L)
            for sign, direction in ((+1, "ccw"), (-1, "cw")):
                end, disk, _ = farthest_coverable(P, from_lifted(P, s), r, direction)
                reach = (to_lifted(P, end) - s) * sign % L
                assert reach == pytest.approx(bisect_reach(P, s, r, sign), abs=1e-9 * L)


def one_radius(P):
    from bicover.mec import mec
    return mec(P.vertices).radius


def test_farthest_before_full_loop():
    P = random_convex_polygon(12, 4)
    r = one_radius(P) * (1 - 1e-6)
    L = P.perimeter
    for k in range(P.n):
        end, _, _ = farthest_coverable(P, BoundaryPoint(k, 0.0), r)
        d = (to_lifted(P, end) - P.vertex_s(k)) % L
        assert 0 < d < L


def test_within_edge_chain():
    P = validate_polygon([(0, 0), (10, 0), (10, 0.5), (0, 0.5)], allow_cocircular=True)
    end, disk, _ = farthest_coverable(P, BoundaryPoint(0, 0.3), 0.1)
    assert end.edge == 0
    assert (end.t - 0.3) * 10 == pytest.approx(0.2, abs=1e-12)


def test_farthest_rejects_bad_radius(square):
    with pytest.raises(RadiusTooSmall):
        farthest_coverable(square, BoundaryPoint(0, 0.0), 0.0)
    assert issubclass(RadiusTooSmall, InvalidRadius)


# anchors --------------------------------------------------------------------

def test_anchor_chains_cover_square(square):
    xs = anchor_points(square, 0.6)
    L = square.perimeter
    s = [to_lifted(square, x) for x in xs]
    total = sum((b - a) % L for a, b in zip(s, s[1:]))
    assert total >= L
    assert xs[0] == BoundaryPoint(0, 0.0)


def test_anchor_equivariance():
    P = random_convex_polygon(9, 12)
    Q = transform(P, 1.1, 2.5, (3.0, -1.0))
    r = 0.7 * one_radius(P)
    c, s = math.cos(1.1), math.sin(1.1)
    for a, b in zip(anchor_points(P, r), anchor_points(Q, 2.5 * r)):
        x, y = realize(P, a)
        assert realize(Q, b) == pytest.approx((2.5 * (c * x - s * y) + 3.0, 2.5 * (s * x + c * y) - 1.0), abs=1e-9)


def test_anchor_hexagon_symmetry():
    pts = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    P = validate_polygon(pts, allow_cocircular=True)
    shifted = validate_polygon(pts[2:] + pts[:2], allow_cocircular=True)
    # same point set, start moved two vertices: anchors rotate by 120 degrees
    c, s = math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)
    for a, b in zip(anchor_points(P, 0.6), anchor_points(shifted, 0.6)):
        x, y = realize(P, a)
        assert realize(shifted, b) == pytest.approx((c * x - s * y, s * x + c * y), abs=1e-9)


# coverage functions ---------------------------------------------------------------

@pytest.fixture(scope="module")
def cov_case():
    P = random_convex_polygon(32, 7)
    rec = next(r for r in load_acceptance() if r["n"] == 32 and r["seed"] == 7)
    r = 1.05 * rec["rstar"]
    return P, r, build_coverage(P, r, "ccw"), build_coverage(P, r, "cw")


def test_coverage_pointwise_against_fresh(cov_case):
    P, r, F, G = cov_case
    L = P.perimeter
    rng = np.random.default_rng(0)
    for s in rng.uniform(0, L, 200):
        s = float(s)
        f = to_lifted(P, farthest_coverable(P, from_lifted(P, s), r)[0])
        assert (F(s) - f + 0.5 * L) % L - 0.5 * L == pytest.approx(0, abs=1e-9 * L)
        g = to_lifted(P, farthest_coverable(P, from_lifted(P, s), r, "cw")[0])
        assert (G(s) - g + 0.5 * L) % L - 0.5 * L == pytest.approx(0, abs=1e-9 * L)


def test_coverage_ranges_and_period(cov_case):
    P, r, F, G = cov_case
    L = P.perimeter
    for s in np.linspace(0, L, 97, endpoint=False):
        assert s <= F(s) <= s + L
        assert s - L <= G(s) <= s
        assert F(s + L) == pytest.approx(F(s) + L, abs=1e-9 * L)
        assert G(s + L) == pytest.approx(G(s) + L, abs=1e-9 * L)


def test_coverage_monotone(cov_case):
    P, r, F, G = cov_case
    L = P.perimeter
    for fn, pieces in ((F, F.pieces), (G, G.mirror_pieces)):
        samples = []
        for p in pieces:
            a, b = p.x_interval
            samples.extend(np.linspace(a, b, 12))
        samples = sorted(set(float(x) % L for x in samples))
        vals = [fn(x) for x in samples]
        assert all(v2 >= v1 - 1e-9 * L for v1, v2 in zip(vals, vals[1:]))


def test_coverage_piece_budget():
    for rec in load_acceptance()[::9]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        r = 1.05 * rec["rstar"]
        if one_disk_check(P, r) is not None:
            continue
        for direction in ("ccw", "cw"):
            assert len(build_coverage(P, r, direction)) <= 20 * P.n


def test_coverage_tiles_period(cov_case):
    P, r, F, G = cov_case
    assert F.breakpoints[0] == 0.0
    ends = [p.x_interval for p in F.pieces]
    assert all(a[1] == pytest.approx(b[0]) for a, b in zip(ends, ends[1:]))
    assert ends[-1][1] == pytest.approx(P.perimeter)


def test_build_coverage_one_disk(square):
    with pytest.raises(OneDiskSuffices):
        build_coverage(square, 0.8)


# decide --------------------------------------------------------------------------

def test_decide_square_examples(square):
    yes = decide(square, 0.60)
    assert yes.answer and verify_cover(square, yes.witness.D1, yes.witness.D2)
    assert not decide(square, 0.50).answer
    one = decide(square, 0.75)
    assert one.answer and one.stats["one_disk"]
    assert one.witness.D1 == one.witness.D2
    assert one.witness.D1.radius == 0.75


@pytest.mark.parametrize("bad", [0, -1.0, float("nan"), float("inf")])
def test_decide_invalid_radius(square, bad):
    with pytest.raises(InvalidRadius):
        decide(square, bad)


def test_radius_ladder_monotone():
    for rec in load_acceptance()[3::17]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        rs = np.linspace(0.9, 1.1, 20) * rec["rstar"]
        answers = []
        for r in rs:
            res = decide(P, float(r))
            answers.append(res.answer)
            if res.answer:
                assert verify_cover(P, res.witness.D1, res.witness.D2)
        assert answers == sorted(answers)


def test_decide_equivariance():
    for rec in load_acceptance()[5::23]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        Q = transform(P, 2.3, 0.37, (-4.0, 9.0))
        for f in (0.97, 0.995, 1.005, 1.03):
            r = f * rec["rstar"]
            assert decide(P, r).answer == decide(Q, 0.37 * r).answer == (f > 1)


def test_hull_pops_bounded(cov_case):
    P, r, _, _ = cov_case
    st = decide(P, r).stats
    assert st["hull_pops"] <= st["hull_pushes"]


def test_debug_audit(monkeypatch):
    monkeypatch.setenv("BICOVER_DEBUG", "1")
    for rec in load_acceptance()[::25]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        decide(P, 1.02 * rec["rstar"])
        decide(P, 0.98 * rec["rstar"])
