import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from bicover.geom import (BoundaryPoint, Chain, CocircularQuadruple, Collinear, DegenerateEdge,
                          Disk, NotConvex, Point, TooFewVertices, chain_points,
                          circle_segment_intersections, circular_compare, circumcircle3,
                          from_lifted, realize, to_lifted, validate_polygon)
from bicover.oracle import random_convex_polygon


def test_unit_square_perimeter(square):
    assert square.n == 4
    assert square.perimeter == pytest.approx(4.0)


def test_square_is_cocircular_without_flag():
    with pytest.raises(CocircularQuadruple):
        validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_collinear_triple_not_convex():
    with pytest.raises(NotConvex):
        validate_polygon([(0, 0), (1, 1), (2, 2), (0, 3)])


def test_points_on_circle_rejected():
    pts = [(math.cos(a), math.sin(a)) for a in (0.1, 1.7, 3.0, 4.4)]
    with pytest.raises(CocircularQuadruple):
        validate_polygon(pts)


def test_clockwise_rejected():
    with pytest.raises(NotConvex):
        validate_polygon([(0, 0), (0, 1), (1, 0.2)])


def test_too_few_and_degenerate():
    with pytest.raises(TooFewVertices):
        validate_polygon([(0, 0), (1, 0)])
    with pytest.raises(DegenerateEdge):
        validate_polygon([(0, 0), (1, 0), (1, 0), (0, 1)])


def test_realize(square):
    assert realize(square, BoundaryPoint(0, 0.5)) == pytest.approx((0.5, 0.0))
    assert realize(square, BoundaryPoint(2, 0.0)) == pytest.approx((1.0, 1.0))
    assert realize(square, BoundaryPoint(3, 0.25)) == pytest.approx((0.0, 0.75))


def test_lifted_examples(square):
    assert to_lifted(square, BoundaryPoint(1, 0.0)) == pytest.approx(1.0)
    b = from_lifted(square, 3.5)
    assert b.edge == 3 and b.t == pytest.approx(0.5)
    # vertices are canonicalised to the edge that starts there
    assert from_lifted(square, 2.0) == BoundaryPoint(2, 0.0)
    assert from_lifted(square, 4.0) == BoundaryPoint(0, 0.0)


def test_lifted_round_trip():
    P = random_convex_polygon(12, 3)
    rng = random.Random(5)
    L = P.perimeter
    for _ in range(1000):
        s = rng.uniform(0, L)
        back = to_lifted(P, from_lifted(P, s))
        assert abs(back - s) <= 1e-12 * L
        b = BoundaryPoint(rng.randrange(P.n), rng.random())
        q = realize(P, from_lifted(P, to_lifted(P, b)))
        assert math.dist(q, realize(P, b)) <= 1e-12 * L


def test_circumcircle3():
    d = circumcircle3((0, 0), (2, 0), (0, 2))
    assert d.center == pytest.approx((1, 1)) and d.radius == pytest.approx(math.sqrt(2))
    d = circumcircle3((-1, 0), (1, 0), (0, 1))
    assert d.center == pytest.approx((0, 0), abs=1e-15) and d.radius == pytest.approx(1)
    with pytest.raises(Collinear):
        circumcircle3((0, 0), (1, 0), (2, 0))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=3, max_size=3))
def test_circumcircle3_passes_through_inputs(pts):
    try:
        d = circumcircle3(*pts)
    except Collinear:
        return
    for p in pts:
        assert abs(math.dist(p, d.center) - d.radius) <= 1e-9 * d.radius


def test_circle_segment_examples():
    out = circle_segment_intersections(Disk(Point(0, 0), 1), (-2, 0), (2, 0))
    assert [t for t, _ in out] == pytest.approx([0.25, 0.75])
    assert out[0][1] == pytest.approx((-1, 0))
    assert circle_segment_intersections(Disk(Point(0, 2), 1), (-2, 0), (2, 0)) == []
    out = circle_segment_intersections(Disk(Point(0, 1), 1), (-2, 0), (2, 0))
    assert len(out) == 1 and out[0][1] == pytest.approx((0, 0))


def test_circular_compare_examples():
    assert circular_compare(4, 3.5, 0.5, 3.9) == 1
    assert circular_compare(4, 0, 1, 2) == -1
    assert circular_compare(4, 1.3, 2.2, 2.2) == 0


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 3.999), st.lists(st.floats(0, 3.999), min_size=3, max_size=3, unique=True))
def test_circular_compare_total_order(anchor, pts):
    a, b, c = pts
    cmp = lambda u, v: circular_compare(4.0, anchor, u, v)  # noqa: E731
    assert cmp(a, b) == -cmp(b, a)
    if cmp(a, b) < 0 and cmp(b, c) < 0:
        assert cmp(a, c) < 0


def test_chain_points(square):
    c = Chain(BoundaryPoint(0, 0.0), BoundaryPoint(2, 0.0))
    assert c.points(square) == [(0, 0), (1, 0), (1, 1)]
    full = Chain(BoundaryPoint(0, 0.5), BoundaryPoint(0, 0.5), full=True)
    assert len(full.points(square)) == 5
    assert chain_points(square, 0.25, 0.75) == [(0.25, 0), (0.75, 0)]


def test_mirror_reverses_orientation(square):
    M = random_convex_polygon(9, 2).mirrored()
    assert M.n == 9
    P = random_convex_polygon(9, 2)
    L = P.perimeter
    for s in (0.1, 1.0, 2.5):
        p = P.point_at(s)
        q = M.point_at((L - s) % L)
        assert q == pytest.approx((-p[0], p[1]))
