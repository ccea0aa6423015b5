import math

import numpy as np
import pytest

from bicover.geom import BoundaryPoint, realize, to_lifted, validate_polygon
from bicover.mec import mec
from bicover.optimizer import upper_bound
from bicover.oracle import (OracleConfig, decide_bruteforce, h_point, h_point_lifted, polygon_hash,
                            random_convex_polygon, rstar_bruteforce, tau_pair)

from conftest import load_acceptance


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(x_samples=4)
    with pytest.raises(ValueError):
        OracleConfig(refine_rounds=-1)


def test_tau_pair_square_diagonal(square):
    a, b = tau_pair(square, BoundaryPoint(0, 0.0), BoundaryPoint(2, 0.0))
    assert a == pytest.approx(math.sqrt(2) / 2)
    assert b == pytest.approx(math.sqrt(2) / 2)


def test_tau_pair_adjacent_points(square):
    x, y = BoundaryPoint(0, 0.4), BoundaryPoint(0, 0.6)
    a, b = tau_pair(square, x, y)
    assert a == pytest.approx(0.1)
    # the rest of the boundary holds all four corners
    assert b == pytest.approx(math.sqrt(2) / 2)
    assert tau_pair(square, y, x) == pytest.approx((b, a))


def test_tau_pair_rejects_equal_points(square):
    with pytest.raises(ValueError):
        tau_pair(square, BoundaryPoint(1, 0.5), BoundaryPoint(1, 0.5))


def test_h_point_square(square):
    h = h_point(square, BoundaryPoint(0, 0.0))
    assert realize(square, h) == pytest.approx((1.0, 1.0), abs=1e-9)


def test_h_point_regular_hexagon():
    pts = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    P = validate_polygon(pts, allow_cocircular=True)
    for k in range(6):
        h = realize(P, h_point(P, BoundaryPoint(k, 0.0)))
        assert h == pytest.approx(pts[(k + 3) % 6], abs=1e-9)


def test_h_point_split_property():
    for seed in (1, 2, 3):
        P = random_convex_polygon(12, seed)
        L = P.perimeter
        for s in np.linspace(0, L, 7, endpoint=False):
            h = h_point_lifted(P, float(s))
            a, b = tau_pair_lifted(P, float(s), h)
            assert a <= b + 1e-9
            a2, b2 = tau_pair_lifted(P, float(s), h + 1e-3 * L)
            assert a2 > b2


def tau_pair_lifted(P, sx, sy):
    from bicover.mec import tau_lifted
    return tau_lifted(P, sx, sy), tau_lifted(P, sy, sx + P.perimeter)


def test_h_point_monotone():
    P = random_convex_polygon(20, 5)
    L = P.perimeter
    prev = None
    for s in np.linspace(0, L, 50, endpoint=False):
        h = h_point_lifted(P, float(s))
        if prev is not None:
            assert h >= prev - 1e-9 * L
        prev = h


def test_rstar_named_shapes(named, square, rect14, triangle):
    # reduced settings here; the frozen values were made at the full ones
    cfg = OracleConfig(x_samples=64, refine_rounds=3)
    assert rstar_bruteforce(square, cfg) == pytest.approx(math.sqrt(5) / 4, rel=1e-5)
    assert rstar_bruteforce(rect14, cfg) == pytest.approx(math.sqrt(5) / 2, rel=1e-5)
    assert rstar_bruteforce(triangle, cfg) == pytest.approx(named["triangle"]["rstar"], rel=1e-4)
    assert named["square"]["rstar"] == pytest.approx(0.559017, abs=1e-6)
    assert named["rect_1x4"]["rstar"] == pytest.approx(1.118034, abs=1e-6)


def test_rstar_below_upper_bound():
    for rec in load_acceptance()[::10]:
        P = random_convex_polygon(rec["n"], rec["seed"])
        assert rec["rstar"] <= upper_bound(P) * (1 + 1e-12)


def test_golden_hashes_match_generator():
    for rec in load_acceptance()[::7]:
        assert polygon_hash(random_convex_polygon(rec["n"], rec["seed"])) == rec["polygon_hash"]


def test_decide_bruteforce_square(square):
    assert decide_bruteforce(square, 0.58) is True
    assert decide_bruteforce(square, 0.54) is False
    assert decide_bruteforce(square, 0.75) is True  # above the mec radius
    with pytest.raises(ValueError):
        decide_bruteforce(square, 0.0)


def test_generator_deterministic():
    a = random_convex_polygon(4, 7)
    b = random_convex_polygon(4, 7)
    assert a.vertices == b.vertices
    assert random_convex_polygon(3, 11).n == 3
    assert random_convex_polygon(4, 8).vertices != a.vertices
    with pytest.raises(ValueError):
        random_convex_polygon(2, 1)


def test_generator_always_valid():
    for seed in range(1, 101):
        P = random_convex_polygon(64, seed)
        assert P.n == 64
        validate_polygon(P.vertices)
