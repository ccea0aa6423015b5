import math

import pytest

from bicover.decision import decide
from bicover.geom import Disk, Point, validate_polygon
from bicover.mec import mec
from bicover.optimizer import RadiusMismatch, solve, upper_bound, verify_cover
from bicover.oracle import random_convex_polygon

from conftest import load_acceptance


def test_solve_square(square):
    res = solve(square, 1e-6)
    assert res.r_high == pytest.approx(math.sqrt(5) / 4, abs=1e-6)
    assert res.r_high - res.r_low <= 1e-6 * res.r_high
    assert res.radius == res.r_high
    assert verify_cover(square, *res.disks)


def test_solve_rectangle(rect14):
    res = solve(rect14, 1e-6)
    assert res.r_high == pytest.approx(math.sqrt(5) / 2, abs=2e-6)
    assert verify_cover(rect14, *res.disks)


def test_solve_bracket_certified():
    P = random_convex_polygon(16, 3)
    res = solve(P, 1e-7)
    assert not decide(P, res.r_low).answer
    assert decide(P, res.r_high).answer
    assert res.r_high <= upper_bound(P)
    assert all(d.radius == pytest.approx(res.r_high, rel=1e-15) for d in res.disks)
    # no cover survives shrinking below the infeasible end
    small = res.r_low / 1.001
    assert not verify_cover(P, *(Disk(d.center, small) for d in res.disks))


def test_solve_matches_golden_sample():
    for rec in load_acceptance()[::20]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        assert solve(P, 1e-9).r_high == pytest.approx(rec["rstar"], rel=1e-3)


@pytest.mark.parametrize("c", [0.5, 3.0])
def test_solve_scaling(c):
    P = random_convex_polygon(10, 8)
    Q = validate_polygon([(c * x, c * y) for x, y in P.vertices])
    tol = 1e-8
    a, b = solve(P, tol).r_high, solve(Q, tol).r_high
    assert b == pytest.approx(c * a, rel=2 * tol)


def test_solve_rejects_bad_tolerance(square):
    for tol in (0.0, 0.2, -1e-3):
        with pytest.raises(ValueError):
            solve(square, tol)


def test_verify_cover_examples(square):
    c1, c2 = Point(0.5, 0.25), Point(0.5, 0.75)
    assert verify_cover(square, Disk(c1, 0.57), Disk(c2, 0.57))
    assert not verify_cover(square, Disk(c1, 0.5), Disk(c2, 0.5))
    m = mec(square.vertices).disk
    assert verify_cover(square, m, m)
    with pytest.raises(RadiusMismatch):
        verify_cover(square, Disk(c1, 0.57), Disk(c2, 0.6))


def test_verify_cover_detects_gap_inside_edge():
    # both corners of the bottom edge covered, its middle not
    P = validate_polygon([(0, 0), (4, 0), (4, 0.1), (0, 0.1)], allow_cocircular=True)
    d1, d2 = Disk(Point(0.5, 0.05), 1.0), Disk(Point(3.5, 0.05), 1.0)
    assert not verify_cover(P, d1, d2)
    d1, d2 = Disk(Point(1.0, 0.05), 1.01), Disk(Point(3.0, 0.05), 1.01)
    assert verify_cover(P, d1, d2)


def test_upper_bound_examples(square, triangle):
    assert upper_bound(square) == pytest.approx(math.sqrt(2) / 2)
    assert upper_bound(triangle) == pytest.approx(1 / math.sqrt(3))
    thin = validate_polygon([(0, 0), (5, 0), (5, 1e-3), (0, 1e-3)], allow_cocircular=True)
    assert upper_bound(thin) == pytest.approx(2.5, rel=1e-6)
