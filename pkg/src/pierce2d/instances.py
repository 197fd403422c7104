"""Colored instances: the data every pipeline consumes, seeded generators of
valid instances, and the canonical hand-built fixtures used across tests.

An instance holds n >= 2 families, either translates of one shared body or
general convex polygons, and is expected to satisfy the cross-family
intersection hypothesis (every set of family i meets every set of family j,
i != j).  Generators sample freely and then repair violating cross pairs by
pulling both members toward their midpoint, so dense, tight configurations
are reachable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .bodies import (
    Body,
    ConvexPolygon,
    DiskBody,
    PolygonBody,
    ReuleauxBody,
    TranslateSet,
    difference_body,
    polygons_intersect,
    translates_intersect,
)
from .errors import GenerationFailed, HypothesisViolation, UnknownFixture, ValidationError
from .geom import DEFAULT_TOL, Point, Tolerance

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ColoredInstance:
    """Families of convex sets; translate mode shares one body."""

    families: tuple          # tuple of tuples of TranslateSet or ConvexPolygon
    body: Optional[Body]     # the shared body in translate mode, else None

    def __post_init__(self):
        if len(self.families) < 2:
            raise ValidationError("need at least 2 families")
        if any(len(f) == 0 for f in self.families):
            raise ValidationError("families must be nonempty")

    @property
    def n(self) -> int:
        return len(self.families)

    @property
    def is_translate_mode(self) -> bool:
        return self.body is not None

    def all_sets(self):
        """(family_index, member_index, set) triples in deterministic order."""
        for i, fam in enumerate(self.families):
            for j, s in enumerate(fam):
                yield i, j, s

    def set_count(self) -> int:
        return sum(len(f) for f in self.families)

    def sets_excluding(self, j: int):
        for i, fam in enumerate(self.families):
            if i == j:
                continue
            for m, s in enumerate(fam):
                yield i, m, s

    def as_polygons(self, samples: int = 64) -> "ColoredInstance":
        """Polygonal version (exact for polygon bodies, inscribed otherwise)."""
        if not self.is_translate_mode:
            return self
        fams = tuple(
            tuple(t.as_polygon(samples) for t in fam) for fam in self.families
        )
        return ColoredInstance(fams, None)

    def shifts(self):
        """Per-family translation vectors (translate mode only)."""
        if not self.is_translate_mode:
            raise ValidationError("not a translate instance")
        return tuple(tuple(t.shift for t in fam) for fam in self.families)

    def check_hypothesis(self, tol: Tolerance = DEFAULT_TOL) -> None:
        """Raise HypothesisViolation on the first failing cross pair."""
        sets = list(self.all_sets())
        for a in range(len(sets)):
            ia, ma, sa = sets[a]
            for b in range(a + 1, len(sets)):
                ib, mb, sb = sets[b]
                if ia == ib:
                    continue
                if self.is_translate_mode:
                    ok = translates_intersect(self.body, sa.shift, sb.shift, tol)
                else:
                    ok = polygons_intersect(sa, sb, tol.eps_geom)
                if not ok:
                    raise HypothesisViolation(
                        f"sets ({ia},{ma}) and ({ib},{mb}) are disjoint",
                        witnesses=((ia, ma), (ib, mb)),
                    )


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class InstanceSpec:
    """Seeded description of a random instance.

    body: a Body (translate mode) or None (general polygon mode).
    sizes: members per family.
    spread: radius of the placement box relative to the body scale.
    placement: "uniform" or "clustered".
    """

    body: Optional[Body]
    sizes: tuple
    seed: int
    spread: float = 1.0
    placement: str = "uniform"
    polygon_vertices: int = 5
    polygon_radius: float = 1.0

    def __post_init__(self):
        if len(self.sizes) < 2:
            raise ValidationError("need at least 2 families")


def _sample_point(rng: random.Random, spread: float, placement: str) -> Point:
    if placement == "clustered":
        return Point(rng.gauss(0.0, spread / 2.0), rng.gauss(0.0, spread / 2.0))
    return Point(rng.uniform(-spread, spread), rng.uniform(-spread, spread))


def _shrink_factor_into(diff: Body, v: Point, tol: Tolerance) -> float:
    """Largest s in [0,1] with s*v inside the difference body (bisection)."""
    if diff.contains_point(v, tol.eps_geom):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = (lo + hi) / 2.0
        if diff.contains_point(v * mid, tol.eps_geom):
            lo = mid
        else:
            hi = mid
    return lo


def _repair_translate_shifts(body: Body, shifts, sizes, rng, tol: Tolerance):
    """Pull violating cross pairs toward their midpoints until the exact
    hypothesis check passes; None when 100 rounds do not converge."""
    diff = difference_body(body)
    fam_of = []
    for i, k in enumerate(sizes):
        fam_of.extend([i] * k)
    pts = list(shifts)
    for _ in range(100):
        moved = False
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                if fam_of[a] == fam_of[b]:
                    continue
                v = pts[b] - pts[a]
                if diff.contains_point(v, tol.eps_geom):
                    continue
                s = _shrink_factor_into(diff, v, tol)
                # pull both endpoints toward the midpoint, slightly past tangency
                s = max(0.0, s * 0.999)
                mid = (pts[a] + pts[b]) * 0.5
                half = v * (0.5 * s)
                pts[a] = mid - half
                pts[b] = mid + half
                moved = True
        if not moved:
            return pts
    return None


def generate(spec: InstanceSpec, tol: Tolerance = DEFAULT_TOL) -> ColoredInstance:
    """Sample an instance satisfying the exact cross-intersection hypothesis.

    Deterministic in the spec; raises GenerationFailed after the retry budget.
    """
    rng = random.Random(spec.seed)
    for _attempt in range(50):
        if spec.body is not None:
            shifts = [
                _sample_point(rng, spec.spread, spec.placement)
                for k in spec.sizes
                for _ in range(k)
            ]
            repaired = _repair_translate_shifts(spec.body, shifts, spec.sizes, rng, tol)
            if repaired is None:
                continue
            fams = []
            at = 0
            for k in spec.sizes:
                fams.append(tuple(TranslateSet(spec.body, p) for p in repaired[at:at + k]))
                at += k
            inst = ColoredInstance(tuple(fams), spec.body)
        else:
            polys = [
                random_convex_polygon(
                    rng, spec.polygon_vertices, spec.polygon_radius,
                    center=_sample_point(rng, spec.spread, spec.placement),
                )
                for k in spec.sizes
                for _ in range(k)
            ]
            repaired = _repair_polygons(polys, spec.sizes, tol)
            if repaired is None:
                continue
            fams = []
            at = 0
            for k in spec.sizes:
                fams.append(tuple(repaired[at:at + k]))
                at += k
            inst = ColoredInstance(tuple(fams), None)
        try:
            inst.check_hypothesis(tol)
            return inst
        except HypothesisViolation:
            continue
    raise GenerationFailed(f"no valid instance within budget for seed {spec.seed}")


def _repair_polygons(polys, sizes, tol: Tolerance):
    fam_of = []
    for i, k in enumerate(sizes):
        fam_of.extend([i] * k)
    polys = list(polys)
    for _ in range(100):
        moved = False
        for a in range(len(polys)):
            for b in range(a + 1, len(polys)):
                if fam_of[a] == fam_of[b]:
                    continue
                if polygons_intersect(polys[a], polys[b], tol.eps_geom):
                    continue
                ca, cb = polys[a].centroid(), polys[b].centroid()
                v = cb - ca
                # shrink the centroid gap until the pair overlaps; t = 1
                # stacks the centroids, which always works for convex sets
                lo, hi = 0.0, 1.0
                for _ in range(20):
                    mid = (lo + hi) / 2.0
                    pa = polys[a].translated(v * (mid / 2.0))
                    pb = polys[b].translated(v * (-mid / 2.0))
                    if polygons_intersect(pa, pb, tol.eps_geom):
                        hi = mid
                    else:
                        lo = mid
                t = min(1.0, hi * 1.01)
                polys[a] = polys[a].translated(v * (t / 2.0))
                polys[b] = polys[b].translated(v * (-t / 2.0))
                moved = True
        if not moved:
            return polys
    return None


def random_convex_polygon(rng: random.Random, n_vertices: int, radius: float,
                          center: Point = Point(0.0, 0.0),
                          min_radius_frac: float = 0.5) -> ConvexPolygon:
    """Jittered-regular polygon: convex, CCW, never degenerate."""
    n = n_vertices
    jitter = math.pi / n * 0.8
    pts = []
    for i in range(n):
        a = TWO_PI * i / n + rng.uniform(-jitter, jitter)
        r = radius * rng.uniform(min_radius_frac, 1.0)
        pts.append(Point(center.x + r * math.cos(a), center.y + r * math.sin(a)))
    return ConvexPolygon.from_hull(pts)


def random_hexagon_body(rng: random.Random, radius: float = 1.0) -> PolygonBody:
    """Random convex hexagon with inner/outer disk ratio at most 2."""
    from .bodies import normalize_inner_outer

    for _ in range(100):
        poly = random_convex_polygon(rng, 6, radius, min_radius_frac=0.55)
        body = PolygonBody(poly)
        report = normalize_inner_outer(body, "john", grid=720)
        if report.ratio <= 2.0:
            return body
    raise GenerationFailed("could not sample a round-enough hexagon")


def ring_instance(seed: int, n: int = 2) -> ColoredInstance:
    """Small sets on a ring plus one big hub per remaining family: the hub
    meets every ring set, but no two lines meet all the ring sets, so the
    chord search must produce a piercing point."""
    rng = random.Random(seed)
    k = rng.randint(5, 8)
    radius = 1.0
    size = rng.uniform(0.08, 0.22)
    ring = []
    for i in range(k):
        a = TWO_PI * i / k + rng.uniform(-0.1, 0.1)
        c = Point(radius * math.cos(a), radius * math.sin(a))
        ring.append(random_convex_polygon(rng, 4, size, center=c))
    fams = [tuple(ring)]
    for _ in range(n - 1):
        hub = random_convex_polygon(
            rng, 12, 1.6,
            center=Point(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02)),
            min_radius_frac=0.95)
        fams.append((hub,))
    inst = ColoredInstance(tuple(fams), None)
    inst.check_hypothesis()
    return inst


# ---------------------------------------------------------------------------
# canonical fixtures


def _square(cx: float, cy: float, half: float) -> ConvexPolygon:
    return ConvexPolygon([
        Point(cx - half, cy - half),
        Point(cx + half, cy - half),
        Point(cx + half, cy + half),
        Point(cx - half, cy + half),
    ])


def _fixture_four_corner_squares() -> ColoredInstance:
    # four small squares at the corners of a big square; no line meets all four
    fam1 = tuple(_square(x, y, 0.4) for x, y in
                 [(-3.0, -3.0), (3.0, -3.0), (3.0, 3.0), (-3.0, 3.0)])
    fam2 = (_square(0.0, 0.0, 3.5),)
    return ColoredInstance((fam1, fam2), None)


def _fixture_pairwise_triangle_needs_2() -> ColoredInstance:
    # three translates of a triangle, pairwise intersecting, empty common part
    base = ConvexPolygon([Point(0.0, 0.0), Point(2.0, 0.0), Point(0.0, 2.0)])
    shifts = [Point(0.0, 0.0), Point(1.1, 0.0), Point(0.0, 1.1)]
    fam1 = tuple(base.translated(s) for s in shifts)
    fam2 = (_square(0.6, 0.6, 1.4),)
    return ColoredInstance((fam1, fam2), None)


def _fixture_kkm_center_pierce() -> ColoredInstance:
    # four tiny squares near the circle at diagonal angles plus one big square
    # containing the origin and touching all four
    r = 0.72
    d = r / math.sqrt(2.0)
    fam1 = tuple(_square(sx * d, sy * d, 0.08)
                 for sx, sy in [(1, 1), (-1, 1), (-1, -1), (1, -1)])
    fam2 = (_square(0.0, 0.0, d - 0.05),)
    return ColoredInstance((fam1, fam2), None)


def _fixture_left_right_blobs() -> ColoredInstance:
    left = ConvexPolygon([Point(-0.9, -0.6), Point(0.15, -0.6),
                          Point(0.15, 0.6), Point(-0.9, 0.6)])
    right = ConvexPolygon([Point(-0.15, -0.6), Point(0.9, -0.6),
                           Point(0.9, 0.6), Point(-0.15, 0.6)])
    return ColoredInstance(((left, right), (left, right)), None)


def _fixture_reuleaux_pair() -> ColoredInstance:
    body = ReuleauxBody(3, 1.0)
    fam1 = tuple(TranslateSet(body, p) for p in
                 [Point(0.0, 0.0), Point(0.45, 0.1), Point(-0.3, 0.25)])
    fam2 = tuple(TranslateSet(body, p) for p in
                 [Point(0.1, -0.3), Point(-0.2, -0.1)])
    return ColoredInstance((fam1, fam2), body)


def _fixture_disk_pair() -> ColoredInstance:
    body = DiskBody(0.5)
    fam1 = tuple(TranslateSet(body, p) for p in [Point(0.0, 0.0), Point(0.6, 0.0)])
    fam2 = tuple(TranslateSet(body, p) for p in [Point(0.3, 0.4), Point(0.3, -0.4)])
    return ColoredInstance((fam1, fam2), body)


_FIXTURES = {
    "four-corner-squares": _fixture_four_corner_squares,
    "pairwise-triangle-needs-2": _fixture_pairwise_triangle_needs_2,
    "kkm-center-pierce": _fixture_kkm_center_pierce,
    "left-right-blobs": _fixture_left_right_blobs,
    "reuleaux-pair": _fixture_reuleaux_pair,
    "disk-pair": _fixture_disk_pair,
}


def canonical(name: str) -> ColoredInstance:
    """Named hand-built instance; raises UnknownFixture for unknown names."""
    try:
        maker = _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {sorted(_FIXTURES)}")
    return maker()


def fixture_names():
    return sorted(_FIXTURES)
