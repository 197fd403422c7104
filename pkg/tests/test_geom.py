import math
import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from pierce2d.errors import CollinearInput, EmptyInput
from pierce2d.geom import (
    DEFAULT_TOL,
    Direction,
    Disk,
    Line,
    Point,
    Tolerance,
    circumcircle,
    contains_point,
    convex_hull,
    line_intersect,
    min_enclosing_disk,
    orient,
)

P = Point
HALF_PI = math.pi / 2.0


class TestOrient:
    def test_ccw(self):
        assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1

    def test_collinear(self):
        assert orient(P(0, 0), P(1, 0), P(2, 0)) == 0

    def test_cw(self):
        assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1

    def test_near_collinear_within_tolerance(self):
        assert orient(P(0, 0), P(1, 0), P(2, 1e-12)) == 0

    def test_tiny_but_clear_sign_uses_exact_path(self):
        # magnitudes so small the float filter alone cannot decide
        s = 1e-160
        assert orient(P(0, 0), P(s, 0), P(0, s)) == 1

    @given(st.lists(st.floats(-100, 100), min_size=6, max_size=6))
    def test_antisymmetric_under_swaps(self, xs):
        p, q, r = P(xs[0], xs[1]), P(xs[2], xs[3]), P(xs[4], xs[5])
        assert orient(p, q, r) == -orient(q, p, r) == -orient(p, r, q)


class TestLineIntersect:
    def test_axes(self):
        got = line_intersect(Line(Direction(0.0), 0.0),
                             Line(Direction(HALF_PI), 0.0))
        assert got.dist(P(0, 0)) < 1e-12

    def test_parallel(self):
        assert line_intersect(Line(Direction(0.0), 1.0),
                              Line(Direction(0.0), 2.0)) is None

    def test_diagonal(self):
        a = Line(Direction(math.pi / 4.0), 1.0 / math.sqrt(2.0))  # x + y = 1
        b = Line(Direction(3.0 * math.pi / 4.0), 0.0)             # x - y = 0
        got = line_intersect(a, b)
        assert got.dist(P(0.5, 0.5)) < 1e-12

    def test_point_on_both_lines(self):
        rng = random.Random(4)
        for _ in range(200):
            a = Line(Direction(rng.uniform(0, math.pi)), rng.uniform(-2, 2))
            b = Line(Direction(rng.uniform(0, math.pi)), rng.uniform(-2, 2))
            p = line_intersect(a, b)
            if p is None:
                continue
            assert abs(a.signed_dist(p)) < 1e-6
            assert abs(b.signed_dist(p)) < 1e-6

    def test_canonical_form_identifies_opposite_normals(self):
        a = Line(Direction(0.3), 1.25)
        b = Line(Direction(0.3 + math.pi), -1.25)
        assert a.same_line(b)


class TestCircumcircle:
    def test_right_triangle(self):
        d = circumcircle(P(0, 0), P(1, 0), P(0, 1))
        assert d.center.dist(P(0.5, 0.5)) < 1e-12
        assert abs(d.radius - math.sqrt(2.0) / 2.0) < 1e-12

    def test_unit_circle(self):
        d = circumcircle(P(-1, 0), P(1, 0), P(0, 1))
        assert d.center.dist(P(0, 0)) < 1e-12
        assert abs(d.radius - 1.0) < 1e-12

    def test_collinear_raises(self):
        with pytest.raises(CollinearInput):
            circumcircle(P(0, 0), P(1, 0), P(2, 0))

    def test_all_three_points_on_boundary(self):
        rng = random.Random(9)
        for _ in range(200):
            pts = [P(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
            if orient(*pts) == 0:
                continue
            d = circumcircle(*pts)
            for p in pts:
                assert abs(d.center.dist(p) - d.radius) < 1e-9 * max(1.0, d.radius)


def _brute_med(points):
    best = None
    for a, b in combinations(points, 2):
        c = P((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
        d = Disk(c, max(c.dist(a), c.dist(b)))
        if all(d.center.dist(p) <= d.radius * (1 + 1e-9) + 1e-12 for p in points):
            if best is None or d.radius < best.radius:
                best = d
    for a, b, c in combinations(points, 3):
        if orient(a, b, c) == 0:
            continue
        d = circumcircle(a, b, c)
        if all(d.center.dist(p) <= d.radius * (1 + 1e-9) + 1e-12 for p in points):
            if best is None or d.radius < best.radius:
                best = d
    if best is None:
        best = Disk(points[0], 0.0)
    return best


class TestMinEnclosingDisk:
    def test_single_point(self):
        d = min_enclosing_disk([P(0, 0)])
        assert d.center == P(0, 0) and d.radius == 0.0

    def test_two_points(self):
        d = min_enclosing_disk([P(0, 0), P(2, 0)])
        assert d.center.dist(P(1, 0)) < 1e-12 and abs(d.radius - 1.0) < 1e-12

    def test_diameter_pair_dominates(self):
        d = min_enclosing_disk([P(0, 0), P(2, 0), P(1, 0.2)])
        assert abs(d.radius - 1.0) < 1e-9
        assert d.center.dist(P(1, 0)) < 1e-9

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            min_enclosing_disk([])

    def test_matches_brute_force_on_seeded_sets(self):
        rng = random.Random(1234)
        for trial in range(1000):
            k = rng.randint(1, 12)
            pts = [P(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(k)]
            fast = min_enclosing_disk(pts)
            brute = _brute_med(pts)
            scale = max(1.0, brute.radius)
            assert abs(fast.radius - brute.radius) <= 1e-9 * scale, trial
            for p in pts:
                assert fast.center.dist(p) <= fast.radius * (1 + 1e-9) + 1e-9

    def test_monotone_under_adding_points(self):
        rng = random.Random(77)
        pts = [P(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(8)]
        r_prev = 0.0
        for k in range(1, 9):
            r = min_enclosing_disk(pts[:k]).radius
            assert r >= r_prev - 1e-12
            r_prev = r

    def test_deterministic(self):
        rng = random.Random(5)
        pts = [P(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(30)]
        a = min_enclosing_disk(pts)
        b = min_enclosing_disk(pts)
        assert a == b


class TestContainsPoint:
    def test_disk_inside(self):
        assert contains_point(Disk(P(0, 0), 1.0), P(0, 0))

    def test_disk_boundary_tolerance(self):
        assert contains_point(Disk(P(0, 0), 1.0), P(1 + 1e-12, 0))

    def test_disk_outside(self):
        assert not contains_point(Disk(P(0, 0), 1.0), P(1.1, 0))


class TestTolerance:
    def test_defaults(self):
        assert DEFAULT_TOL.eps_geom == 1e-9
        assert DEFAULT_TOL.eps_cover == 1e-7

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            Tolerance(1e-6, 1e-9)
        with pytest.raises(ValueError):
            Tolerance(0.0, 1e-7)


class TestConvexHull:
    def test_square_with_interior(self):
        pts = [P(0, 0), P(1, 0), P(1, 1), P(0, 1), P(0.5, 0.5)]
        hull = convex_hull(pts)
        assert len(hull) == 4

    def test_collinear_midpoints_removed(self):
        pts = [P(0, 0), P(1, 0), P(2, 0), P(1, 1)]
        hull = convex_hull(pts)
        assert len(hull) == 3
