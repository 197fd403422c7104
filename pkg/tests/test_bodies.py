import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from pierce2d.bodies import (
    ConvexPolygon,
    DiskBody,
    PolygonBody,
    ReuleauxBody,
    SupportSampledBody,
    TransformedBody,
    TranslateSet,
    difference_body,
    minkowski_sum,
    normalize_inner_outer,
    polygons_intersect,
    reflected_body,
    support,
    support_grid,
    translates_intersect,
)
from pierce2d.errors import NotConstantWidth, NotNearDisk, ValidationError
from pierce2d.geom import Direction, Point, convex_hull
from pierce2d.instances import random_convex_polygon

P = Point
TWO_PI = 2.0 * math.pi


def unit_square():
    return ConvexPolygon([P(0, 0), P(1, 0), P(1, 1), P(0, 1)])


def rect(x0, y0, x1, y1):
    return ConvexPolygon([P(x0, y0), P(x1, y0), P(x1, y1), P(x0, y1)])


class TestConvexPolygon:
    def test_rejects_clockwise(self):
        with pytest.raises(ValidationError):
            ConvexPolygon([P(0, 0), P(0, 1), P(1, 0)])

    def test_rejects_collinear_run(self):
        with pytest.raises(ValidationError):
            ConvexPolygon([P(0, 0), P(1, 0), P(2, 0), P(0, 1)])

    def test_area_centroid(self):
        sq = unit_square()
        assert abs(sq.area() - 1.0) < 1e-12
        assert sq.centroid().dist(P(0.5, 0.5)) < 1e-12

    def test_contains(self):
        sq = unit_square()
        assert sq.contains_point(P(0.5, 0.5))
        assert sq.contains_point(P(1.0 + 1e-12, 0.5))
        assert not sq.contains_point(P(1.1, 0.5))

    def test_clip_halfplane(self):
        sq = unit_square()
        got = sq.clip_halfplane(P(1.0, 0.0), 0.5)
        assert got is not None
        assert abs(got.area() - 0.5) < 1e-12
        assert sq.clip_halfplane(P(1.0, 0.0), -0.5) is None


class TestSupport:
    def test_unit_disk_any_angle(self):
        b = DiskBody(1.0)
        for t in [0.0, 1.0, 2.5, 4.0]:
            assert abs(support(b, Direction(t)) - 1.0) < 1e-12

    def test_square_east(self):
        assert abs(unit_square().support(Direction(0.0)) - 1.0) < 1e-12

    def test_square_diagonal_projection(self):
        sq = unit_square()
        lo = -sq.support(Direction(math.pi / 4.0 + math.pi))
        hi = sq.support(Direction(math.pi / 4.0))
        assert abs(lo - 0.0) < 1e-12
        assert abs(hi - math.sqrt(2.0)) < 1e-12

    def test_reuleaux_constant_width_identity(self):
        b = ReuleauxBody(3, 1.0)
        rng = random.Random(0)
        for _ in range(100):
            t = rng.uniform(0.0, TWO_PI)
            w = b.support(Direction(t)) + b.support(Direction(t + math.pi))
            assert abs(w - 1.0) < 1e-12

    def test_reuleaux_pentagon_width(self):
        b = ReuleauxBody(5, 1.0)
        for k in range(50):
            t = TWO_PI * k / 50.0
            w = b.support(Direction(t)) + b.support(Direction(t + math.pi))
            assert abs(w - 1.0) < 1e-12

    def test_support_grid_matches_scalar(self):
        rng = random.Random(3)
        bodies = [DiskBody(0.7, P(0.2, -0.1)),
                  ReuleauxBody(3, 1.0),
                  PolygonBody(random_convex_polygon(rng, 6, 1.0)),
                  TranslateSet(ReuleauxBody(5, 1.0), P(0.3, 0.4))]
        angles = [rng.uniform(0, TWO_PI) for _ in range(64)]
        for b in bodies:
            grid = support_grid(b, angles)
            for a, g in zip(angles, grid):
                assert abs(b.support(Direction(a)) - g) < 1e-12

    def test_transformed_body_support_and_containment(self):
        inner = ReuleauxBody(3, 1.0)
        tb = TransformedBody(inner, rotation=0.7, scale=2.0, center=P(0.1, 0.2))
        poly = tb.as_polygon(128)
        rng = random.Random(8)
        for _ in range(50):
            t = rng.uniform(0, TWO_PI)
            assert abs(tb.support(Direction(t)) - poly.support(Direction(t))) < 2e-3
        for v in poly.vertices:
            assert tb.contains_point(v, 1e-6)


class TestMinkowski:
    def test_square_doubles(self):
        got = minkowski_sum(unit_square(), unit_square())
        assert abs(got.area() - 4.0) < 1e-9
        xs = sorted({round(v.x, 9) for v in got.vertices})
        assert xs == [0.0, 2.0]

    def test_identity_like_tiny_summand(self):
        # a zero-size summand is not a valid polygon; a near-zero one must
        # leave the square essentially unchanged
        tiny = ConvexPolygon([P(0, 0), P(1e-7, 0), P(0, 1e-7)])
        got = minkowski_sum(unit_square(), tiny)
        assert abs(got.area() - 1.0) < 1e-6

    def test_matches_brute_force_hull_on_random_pentagons(self):
        rng = random.Random(42)
        for _ in range(50):
            p = random_convex_polygon(rng, 5, 1.0)
            q = random_convex_polygon(rng, 5, 0.7)
            fast = minkowski_sum(p, q)
            brute = ConvexPolygon(convex_hull(
                [a + b for a in p.vertices for b in q.vertices]))
            assert abs(fast.area() - brute.area()) < 1e-9
            for v in brute.vertices:
                assert fast.contains_point(v, 1e-9)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_support_is_additive(self, seed):
        rng = random.Random(seed)
        p = random_convex_polygon(rng, 5, 1.0)
        q = random_convex_polygon(rng, 6, 0.5)
        s = minkowski_sum(p, q)
        for _ in range(16):
            d = Direction(rng.uniform(0, TWO_PI))
            assert abs(s.support(d) - p.support(d) - q.support(d)) < 1e-9


class TestDifferenceBody:
    def test_disk(self):
        got = difference_body(DiskBody(0.5))
        assert isinstance(got, DiskBody) and abs(got.radius - 1.0) < 1e-12

    def test_reuleaux_gives_disk(self):
        got = difference_body(ReuleauxBody(3, 1.0))
        assert isinstance(got, DiskBody) and abs(got.radius - 1.0) < 1e-12

    def test_unit_square(self):
        got = difference_body(PolygonBody(unit_square()))
        poly = got.polygon
        assert abs(poly.area() - 4.0) < 1e-9  # square of side 2 at origin
        assert poly.contains_point(P(1, 1), 1e-9)
        assert poly.contains_point(P(-1, -1), 1e-9)

    def test_centrally_symmetric(self):
        rng = random.Random(6)
        body = PolygonBody(random_convex_polygon(rng, 7, 1.0))
        diff = difference_body(body)
        for k in range(200):
            t = TWO_PI * k / 200.0
            a = diff.support(Direction(t))
            b = diff.support(Direction(t + math.pi))
            assert abs(a - b) < 1e-9


class TestTranslatesIntersect:
    def test_tangent_disks(self):
        assert translates_intersect(DiskBody(0.5), P(0, 0), P(1.0, 0))

    def test_separated_disks(self):
        assert not translates_intersect(DiskBody(0.5), P(0, 0), P(1.001, 0))

    def test_symmetry(self):
        rng = random.Random(11)
        body = PolygonBody(random_convex_polygon(rng, 5, 0.8))
        for _ in range(100):
            a = P(rng.uniform(-1, 1), rng.uniform(-1, 1))
            b = P(rng.uniform(-1, 1), rng.uniform(-1, 1))
            assert (translates_intersect(body, a, b)
                    == translates_intersect(body, b, a))

    def test_reuleaux_matches_polygon_oracle(self):
        body = ReuleauxBody(3, 1.0)
        dense = body.as_polygon(512)
        rng = random.Random(2024)
        agree = 0
        for _ in range(500):
            a = P(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            b = P(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            got = translates_intersect(body, a, b)
            oracle = polygons_intersect(dense.translated(a), dense.translated(b))
            if abs(a.dist(b) - 1.0) < 2e-3:
                continue  # the 512-gon oracle is blind inside its own gap
            assert got == oracle
            agree += 1
        assert agree > 450


class TestSupportSampled:
    def test_requires_enough_samples(self):
        with pytest.raises(ValidationError):
            SupportSampledBody([(0.0, 1.0)] * 10)

    def test_consistency_check_fires(self):
        samples = [(TWO_PI * i / 720.0, 1.0) for i in range(720)]
        samples[100] = (samples[100][0], 2.0)  # a spike is not a support function
        with pytest.raises(ValidationError):
            SupportSampledBody(samples)

    def test_near_disk_body_roundtrip(self):
        h = lambda t: 0.5 + 0.02 * math.cos(3 * t)  # noqa: E731
        b = SupportSampledBody.from_function(h, 1440)
        for k in range(32):
            t = TWO_PI * k / 32.0
            assert abs(b.support(Direction(t)) - h(t)) < 1e-4


class TestNormalize:
    def test_unit_disk_near_disk(self):
        rep = normalize_inner_outer(DiskBody(1.0), "near_disk")
        assert abs(rep.ratio - 1.0) < 1e-9
        assert abs(rep.outer.radius - 0.5) < 1e-9

    def test_reuleaux_constant_width_radii(self):
        rep = normalize_inner_outer(ReuleauxBody(3, 1.0), "constant_width")
        assert abs(rep.inner.radius - (1.0 - 1.0 / math.sqrt(3.0))) < 1e-6
        assert abs(rep.outer.radius - 1.0 / math.sqrt(3.0)) < 1e-6
        assert abs(rep.ratio - 1.0 / (math.sqrt(3.0) - 1.0)) < 1e-6

    def test_long_rectangle_not_near_disk(self):
        body = PolygonBody(rect(-2, -0.5, 2, 0.5))
        with pytest.raises(NotNearDisk):
            normalize_inner_outer(body, "near_disk")

    def test_square_not_constant_width(self):
        with pytest.raises(NotConstantWidth):
            normalize_inner_outer(PolygonBody(unit_square()), "constant_width")

    def test_inner_and_outer_contain_correctly(self):
        rng = random.Random(13)
        body = PolygonBody(random_convex_polygon(rng, 6, 1.0))
        rep = normalize_inner_outer(body, "john", grid=10000)
        s = rep.transform.scale
        c = P(-rep.transform.offset.x / s, -rep.transform.offset.y / s)
        r_in = rep.inner.radius / s
        r_out = rep.outer.radius / s
        for k in range(10000):
            t = TWO_PI * k / 10000.0
            g = body.support(Direction(t)) - (c.x * math.cos(t) + c.y * math.sin(t))
            assert g >= r_in - 1e-9
            assert g <= r_out + 1e-9

    def test_john_scales_inner_to_unit(self):
        rng = random.Random(14)
        body = PolygonBody(random_convex_polygon(rng, 6, 2.0))
        rep = normalize_inner_outer(body, "john")
        assert abs(rep.inner.radius - 1.0) < 1e-9


class TestReflectedBody:
    def test_reflection_flips_support(self):
        body = ReuleauxBody(3, 1.0)
        r = reflected_body(body)
        for k in range(40):
            t = TWO_PI * k / 40.0
            assert abs(r.support(Direction(t))
                       - body.support(Direction(t + math.pi))) < 1e-12

    def test_reflection_contains_negated_points(self):
        body = ReuleauxBody(3, 1.0)
        r = reflected_body(body)
        rng = random.Random(5)
        for _ in range(100):
            p = P(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
            assert r.contains_point(p) == body.contains_point(p * -1.0)
