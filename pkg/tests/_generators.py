"""Seeded generators shared by the unit and acceptance tests."""

import math
import random

from pierce2d.bodies import PolygonBody, difference_body
from pierce2d.geom import Point
from pierce2d.instances import random_convex_polygon


def karasev_family(seed, max_size=9, body_vertices=(4, 5, 6), radius=0.6):
    """Pairwise-intersecting translate family of a random convex polygon,
    returned as concrete polygons (repair pulls violating pairs together)."""
    rng = random.Random(seed)
    body = random_convex_polygon(rng, rng.choice(list(body_vertices)), radius)
    k = rng.randint(3, max_size)
    diff = difference_body(PolygonBody(body))
    pts = [Point(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
           for _ in range(k)]
    for _ in range(60):
        moved = False
        for a in range(k):
            for b in range(a + 1, k):
                v = pts[b] - pts[a]
                if diff.contains_point(v, 1e-9):
                    continue
                lo, hi = 0.0, 1.0
                for _ in range(20):
                    t = (lo + hi) / 2.0
                    if diff.contains_point(v * t, 1e-9):
                        lo = t
                    else:
                        hi = t
                s = lo * 0.999
                mid = (pts[a] + pts[b]) * 0.5
                half = v * (0.5 * s)
                pts[a] = mid - half
                pts[b] = mid + half
                moved = True
        if not moved:
            break
    fam = [body.translated(p) for p in pts]
    for a in range(k):
        for b in range(a + 1, k):
            assert diff.contains_point(pts[b] - pts[a], 1e-9)
    return fam


def pairwise_boxes(seed, max_count=10):
    """Pairwise-intersecting axis-parallel boxes (x0, y0, x1, y1)."""
    rng = random.Random(seed)
    k = rng.randint(3, max_count)
    boxes = []
    for _ in range(k):
        cx, cy = rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)
        w, h = rng.uniform(0.4, 1.5), rng.uniform(0.4, 1.5)
        boxes.append([cx - w, cy - h, cx + w, cy + h])
    for _ in range(50):
        moved = False
        for a in range(k):
            for b in range(a + 1, k):
                for lo, hi in ((0, 2), (1, 3)):
                    gap = max(boxes[a][lo] - boxes[b][hi],
                              boxes[b][lo] - boxes[a][hi])
                    if gap <= -1e-9:
                        continue
                    shift = (gap + 1e-6) / 2.0
                    if boxes[a][lo] > boxes[b][hi]:
                        boxes[a][lo] -= shift
                        boxes[a][hi] -= shift
                        boxes[b][lo] += shift
                        boxes[b][hi] += shift
                    else:
                        boxes[a][lo] += shift
                        boxes[a][hi] += shift
                        boxes[b][lo] -= shift
                        boxes[b][hi] -= shift
                    moved = True
        if not moved:
            break
    return [tuple(b) for b in boxes]


def random_points(rng, count, span=1.0):
    return [Point(rng.uniform(-span, span), rng.uniform(-span, span))
            for _ in range(count)]
