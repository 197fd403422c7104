"""Convex bodies and general convex sets: support functions, Minkowski
calculus, widths, and inner/outer disk normalizations.

A Body lives in its own frame with the reference point at the origin;
TranslateSet places a shared Body at a shift vector.  Support queries are
exact for disks, polygons and Reuleaux polygons, and interpolated for
support-sampled bodies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import NotConstantWidth, NotNearDisk, ValidationError
from .geom import (
    DEFAULT_TOL,
    Direction,
    Disk,
    Point,
    Tolerance,
    convex_hull,
    orient,
)

TWO_PI = 2.0 * math.pi


class ConvexPolygon:
    """Strictly convex polygon, vertices in counter-clockwise order."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[Point]):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise ValidationError("polygon needs at least 3 vertices")
        n = len(vs)
        for i in range(n):
            if orient(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) != 1:
                raise ValidationError(
                    f"vertices not strictly convex CCW at index {i}"
                )
        self.vertices = vs

    @staticmethod
    def from_hull(points: Sequence[Point]) -> "ConvexPolygon":
        """Hull of the points with tolerance-collinear vertices pruned, so the
        result always satisfies the strict-convexity invariant."""
        vs = convex_hull(points)
        pruned = True
        while pruned and len(vs) >= 3:
            pruned = False
            n = len(vs)
            for i in range(n):
                if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) != 1:
                    del vs[i]
                    pruned = True
                    break
        if len(vs) < 3:
            raise ValidationError("hull degenerates to fewer than 3 vertices")
        return ConvexPolygon(vs)

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"ConvexPolygon({len(self.vertices)} vertices)"

    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def support(self, d: Direction) -> float:
        u = d.unit()
        return max(v.dot(u) for v in self.vertices)

    def support_point(self, d: Direction) -> Point:
        u = d.unit()
        return max(self.vertices, key=lambda v: v.dot(u))

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        for a, b in self.edges():
            e = b - a
            if e.cross(p - a) < -eps * e.norm():
                return False
        return True

    def signed_depth(self, p: Point) -> float:
        """Positive inside: min over edges of the inward distance to the edge line."""
        return min((b - a).cross(p - a) / (b - a).norm() for a, b in self.edges())

    def area(self) -> float:
        s = 0.0
        for a, b in self.edges():
            s += a.cross(b)
        return s / 2.0

    def centroid(self) -> Point:
        sx = sy = sa = 0.0
        for a, b in self.edges():
            c = a.cross(b)
            sa += c
            sx += (a.x + b.x) * c
            sy += (a.y + b.y) * c
        sa *= 3.0
        return Point(sx / sa, sy / sa)

    def translated(self, v: Point) -> "ConvexPolygon":
        return ConvexPolygon([w + v for w in self.vertices])

    def scaled(self, s: float) -> "ConvexPolygon":
        # negative s is a point reflection, which keeps the CCW order
        if s == 0:
            raise ValidationError("zero scale collapses the polygon")
        return ConvexPolygon([w * s for w in self.vertices])

    def reflected(self) -> "ConvexPolygon":
        """Point reflection through the origin."""
        return self.scaled(-1.0)

    def diameter(self) -> float:
        vs = self.vertices
        return max(a.dist(b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def bounding_box(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def clip_halfplane(self, normal: Point, offset: float,
                       eps: float = 1e-12) -> Optional["ConvexPolygon"]:
        """Intersection with {q : q . normal <= offset}; None when empty."""
        out = []
        vs = self.vertices
        n = len(vs)
        d = [v.dot(normal) - offset for v in vs]
        for i in range(n):
            j = (i + 1) % n
            if d[i] <= eps:
                out.append(vs[i])
            if (d[i] < -eps and d[j] > eps) or (d[i] > eps and d[j] < -eps):
                t = d[i] / (d[i] - d[j])
                out.append(vs[i] + (vs[j] - vs[i]) * t)
        cleaned = _dedupe_ring(out)
        if len(cleaned) < 3:
            return None
        try:
            return ConvexPolygon.from_hull(cleaned)
        except ValidationError:
            return None


def _dedupe_ring(points, eps=1e-12):
    out = []
    for p in points:
        if not out or out[-1].dist(p) > eps:
            out.append(p)
    if len(out) >= 2 and out[0].dist(out[-1]) <= eps:
        out.pop()
    return out


def polygons_intersect(p: ConvexPolygon, q: ConvexPolygon,
                       eps: float = DEFAULT_TOL.eps_geom) -> bool:
    """Separating-axis test for two convex polygons (closed sets)."""
    for poly in (p, q):
        for a, b in poly.edges():
            n = (b - a).perp()
            ln = n.norm()
            pmax = max(v.dot(n) for v in p.vertices)
            pmin = min(v.dot(n) for v in p.vertices)
            qmax = max(v.dot(n) for v in q.vertices)
            qmin = min(v.dot(n) for v in q.vertices)
            if pmax < qmin - eps * ln or qmax < pmin - eps * ln:
                return False
    return True


# ---------------------------------------------------------------------------
# bodies


class Body:
    """Interface: support(direction), contains_point(p, eps), as_polygon(n)."""

    def support(self, d: Direction) -> float:
        raise NotImplementedError

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        raise NotImplementedError

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        raise NotImplementedError

    def width(self, d: Direction) -> float:
        return self.support(d) + self.support(d.opposite())

    def descriptor(self) -> dict:
        raise NotImplementedError

    def cache_key(self):
        raise NotImplementedError


@dataclass(frozen=True)
class DiskBody(Body):
    radius: float
    center: Point = field(default_factory=lambda: Point(0.0, 0.0))

    def support(self, d: Direction) -> float:
        return self.center.dot(d.unit()) + self.radius

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return self.center.dist(p) <= self.radius + eps

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        # inscribed regular polygon
        pts = [
            Point(
                self.center.x + self.radius * math.cos(TWO_PI * i / samples),
                self.center.y + self.radius * math.sin(TWO_PI * i / samples),
            )
            for i in range(samples)
        ]
        return ConvexPolygon(pts)

    def descriptor(self) -> dict:
        return {"type": "disk", "radius": self.radius,
                "center": [self.center.x, self.center.y]}

    def cache_key(self):
        return ("disk", self.radius, self.center.x, self.center.y)


@dataclass(frozen=True)
class PolygonBody(Body):
    polygon: ConvexPolygon

    def support(self, d: Direction) -> float:
        return self.polygon.support(d)

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return self.polygon.contains_point(p, eps)

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        return self.polygon

    def descriptor(self) -> dict:
        return {"type": "polygon",
                "vertices": [[v.x, v.y] for v in self.polygon.vertices]}

    def cache_key(self):
        return ("polygon",) + tuple(v.as_tuple() for v in self.polygon.vertices)


@dataclass(frozen=True)
class ReuleauxBody(Body):
    """Reuleaux polygon of constant width: odd arm count, arcs of radius
    `width` centered at the opposite vertices.  Equals the intersection of
    the `arms` disks of radius `width` centered at the vertices."""

    arms: int = 3
    width_value: float = 1.0

    def __post_init__(self):
        if self.arms < 3 or self.arms % 2 == 0:
            raise ValidationError("arm count must be odd and >= 3")
        if self.width_value <= 0:
            raise ValidationError("width must be positive")

    @property
    def circumradius(self) -> float:
        return self.width_value / (2.0 * math.cos(math.pi / (2 * self.arms)))

    def corners(self) -> list:
        r = self.circumradius
        k = self.arms
        return [
            Point(r * math.cos(math.pi / 2 + TWO_PI * j / k),
                  r * math.sin(math.pi / 2 + TWO_PI * j / k))
            for j in range(k)
        ]

    def _arcs(self):
        # arc j: centered at corner j, spanning between the two opposite corners
        cs = self.corners()
        k = self.arms
        out = []
        for j in range(k):
            a = cs[(j + (k - 1) // 2) % k]
            b = cs[(j + (k + 1) // 2) % k]
            lo = math.atan2(a.y - cs[j].y, a.x - cs[j].x)
            hi = math.atan2(b.y - cs[j].y, b.x - cs[j].x)
            out.append((cs[j], lo, hi))
        return out

    @staticmethod
    def _angle_in(lo, hi, t):
        span = (hi - lo) % TWO_PI
        return (t - lo) % TWO_PI <= span

    def support(self, d: Direction) -> float:
        u = d.unit()
        best = max(c.dot(u) for c in self.corners())
        for center, lo, hi in self._arcs():
            if self._angle_in(lo, hi, d.theta):
                best = max(best, center.dot(u) + self.width_value)
        return best

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return all(c.dist(p) <= self.width_value + eps for c in self.corners())

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        per_arc = max(2, samples // self.arms)
        pts = []
        for center, lo, hi in self._arcs():
            span = (hi - lo) % TWO_PI
            for i in range(per_arc):
                t = lo + span * i / per_arc
                pts.append(Point(center.x + self.width_value * math.cos(t),
                                 center.y + self.width_value * math.sin(t)))
        return ConvexPolygon.from_hull(pts)

    def descriptor(self) -> dict:
        return {"type": "reuleaux", "arms": self.arms, "width": self.width_value}

    def cache_key(self):
        return ("reuleaux", self.arms, self.width_value)


class SupportSampledBody(Body):
    """Body given by support samples (angle, value) on a grid of >= 720 angles,
    interpolated piecewise-linearly in the angle.

    Construction checks the support-function consistency inequality on the
    grid; the sampling modulus bounds all downstream width errors.
    """

    __slots__ = ("angles", "values")

    MIN_SAMPLES = 720

    def __init__(self, samples: Sequence[tuple]):
        if len(samples) < self.MIN_SAMPLES:
            raise ValidationError(f"need >= {self.MIN_SAMPLES} support samples")
        pairs = sorted((float(a) % TWO_PI, float(v)) for a, v in samples)
        self.angles = [a for a, _ in pairs]
        self.values = [v for _, v in pairs]
        n = len(self.angles)
        for i in range(n):
            t1, h1 = self.angles[i - 1], self.values[i - 1]
            t2, h2 = self.angles[i], self.values[i]
            t3, h3 = self.angles[(i + 1) % n], self.values[(i + 1) % n]
            d21 = (t2 - t1) % TWO_PI
            d32 = (t3 - t2) % TWO_PI
            if d21 + d32 >= math.pi:
                continue
            lhs = h2 * math.sin(d21 + d32)
            rhs = h1 * math.sin(d32) + h3 * math.sin(d21)
            if lhs > rhs + 1e-9:
                raise ValidationError(
                    f"support samples violate convex consistency near angle {t2}"
                )

    @staticmethod
    def from_function(h, samples: int = 720) -> "SupportSampledBody":
        return SupportSampledBody(
            [(TWO_PI * i / samples, h(TWO_PI * i / samples)) for i in range(samples)]
        )

    def support(self, d: Direction) -> float:
        import bisect

        t = d.theta
        i = bisect.bisect_right(self.angles, t)
        t1 = self.angles[i - 1]
        h1 = self.values[i - 1]
        if i == len(self.angles):
            t2 = self.angles[0] + TWO_PI
            h2 = self.values[0]
        else:
            t2, h2 = self.angles[i], self.values[i]
        if t2 - t1 <= 1e-15:
            return h1
        w = (t - t1) / (t2 - t1)
        return h1 * (1.0 - w) + h2 * w

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return all(
            p.x * math.cos(a) + p.y * math.sin(a) <= v + eps
            for a, v in zip(self.angles, self.values)
        )

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        pts = []
        n = len(self.angles)
        step = max(1, n // samples)
        for i in range(0, n, step):
            a1, h1 = self.angles[i], self.values[i]
            a2, h2 = self.angles[(i + step) % n], self.values[(i + step) % n]
            # vertex of the two support lines
            d = math.sin(a2 - a1)
            if abs(d) < 1e-12:
                continue
            x = (h1 * math.sin(a2) - h2 * math.sin(a1)) / d
            y = (h2 * math.cos(a1) - h1 * math.cos(a2)) / d
            pts.append(Point(x, y))
        return ConvexPolygon.from_hull(pts)

    def sampling_modulus(self) -> float:
        n = len(self.angles)
        gaps = [(self.angles[(i + 1) % n] - self.angles[i]) % TWO_PI for i in range(n)]
        return max(gaps)

    def descriptor(self) -> dict:
        return {"type": "support",
                "samples": [[a, v] for a, v in zip(self.angles, self.values)]}

    def cache_key(self):
        return ("support", tuple(self.angles), tuple(self.values))


@dataclass(frozen=True)
class TranslateSet:
    """The set body + shift."""

    body: Body
    shift: Point

    def support(self, d: Direction) -> float:
        return self.body.support(d) + self.shift.dot(d.unit())

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return self.body.contains_point(p - self.shift, eps)

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        return self.body.as_polygon(samples).translated(self.shift)


# ---------------------------------------------------------------------------
# operations


def support(b, d: Direction) -> float:
    """Support value h_b(d) for a Body, TranslateSet or ConvexPolygon."""
    return b.support(d)


def support_grid(b, angles) -> "np.ndarray":
    """Vectorized support values over an array of angles (radians)."""
    import numpy as np

    angles = np.asarray(angles, dtype=np.float64)
    if isinstance(b, ConvexPolygon):
        vx = np.array([v.x for v in b.vertices])
        vy = np.array([v.y for v in b.vertices])
        return (np.outer(np.cos(angles), vx)
                + np.outer(np.sin(angles), vy)).max(axis=1)
    if isinstance(b, TranslateSet):
        return (support_grid(b.body, angles)
                + b.shift.x * np.cos(angles) + b.shift.y * np.sin(angles))
    if isinstance(b, DiskBody):
        return (b.center.x * np.cos(angles) + b.center.y * np.sin(angles)
                + b.radius)
    if isinstance(b, PolygonBody):
        return support_grid(b.polygon, angles)
    if isinstance(b, ReuleauxBody):
        cs = b.corners()
        cx = np.array([c.x for c in cs])
        cy = np.array([c.y for c in cs])
        best = (np.outer(np.cos(angles), cx)
                + np.outer(np.sin(angles), cy)).max(axis=1)
        for center, lo, hi in b._arcs():
            span = (hi - lo) % TWO_PI
            on_arc = ((angles - lo) % TWO_PI) <= span
            cand = (center.x * np.cos(angles) + center.y * np.sin(angles)
                    + b.width_value)
            best = np.where(on_arc, np.maximum(best, cand), best)
        return best
    if isinstance(b, SupportSampledBody):
        xs = np.asarray(b.angles + [b.angles[0] + TWO_PI])
        ys = np.asarray(b.values + [b.values[0]])
        return np.interp(np.mod(angles, TWO_PI), xs, ys)
    if isinstance(b, TransformedBody):
        shifted = angles + b.rotation
        inner = support_grid(b.inner, shifted)
        return b.scale * (inner - b.center.x * np.cos(shifted)
                          - b.center.y * np.sin(shifted))
    if isinstance(b, ReflectedBody):
        return support_grid(b.inner, angles + math.pi)
    return np.array([b.support(Direction(float(a))) for a in angles])


def minkowski_sum(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Minkowski sum by merging edges in slope order."""

    def rotate_to_lowest(poly):
        vs = list(poly.vertices)
        k = min(range(len(vs)), key=lambda i: (vs[i].y, vs[i].x))
        return vs[k:] + vs[:k]

    a = rotate_to_lowest(p)
    b = rotate_to_lowest(q)
    n, m = len(a), len(b)
    out = []
    i = j = 0
    while i < n or j < m:
        out.append(a[i % n] + b[j % m])
        ea = a[(i + 1) % n] - a[i % n]
        eb = b[(j + 1) % m] - b[j % m]
        c = ea.cross(eb)
        if i >= n:
            j += 1
        elif j >= m:
            i += 1
        elif c > 0.0:
            i += 1
        elif c < 0.0:
            j += 1
        else:
            i += 1
            j += 1
    return ConvexPolygon.from_hull(out)


_DIFF_CACHE: dict = {}


def difference_body(k: Body) -> Body:
    """K + (-K); exact closed forms where available.  Cached per body, since
    pairwise intersection tests call this for every pair."""
    key = k.cache_key()
    hit = _DIFF_CACHE.get(key)
    if hit is None:
        hit = _difference_body(k)
        _DIFF_CACHE[key] = hit
    return hit


def _difference_body(k: Body) -> Body:
    if isinstance(k, DiskBody):
        return DiskBody(2.0 * k.radius)
    if isinstance(k, ReuleauxBody):
        return DiskBody(k.width_value)
    if isinstance(k, PolygonBody):
        return PolygonBody(minkowski_sum(k.polygon, k.polygon.reflected()))
    if isinstance(k, SupportSampledBody):
        return SupportSampledBody(
            [(a, v + k.support(Direction(a + math.pi)))
             for a, v in zip(k.angles, k.values)]
        )
    raise TypeError(f"unsupported body {type(k)!r}")


def translates_intersect(k: Body, a: Point, b: Point,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether (K+a) and (K+b) meet, via b-a in the difference body."""
    return difference_body(k).contains_point(b - a, tol.eps_geom)


@dataclass(frozen=True)
class Similarity:
    """q -> scale * q + offset with scale > 0."""

    scale: float
    offset: Point

    def apply(self, p: Point) -> Point:
        return p * self.scale + self.offset

    def invert(self, p: Point) -> Point:
        return (p - self.offset) * (1.0 / self.scale)


@dataclass(frozen=True)
class NormalizationReport:
    inner: Disk
    outer: Disk
    ratio: float
    transform: Similarity
    mode: str
    width_span: Optional[float] = None  # max-min width over the grid (constant_width)


def _chebyshev_center(k: Body, grid: int = 720) -> Point:
    """Center maximizing min over directions of h(theta) - c . u(theta),
    by coarse grid then coordinate descent."""
    angles = [TWO_PI * i / grid for i in range(grid)]
    hs = [k.support(Direction(a)) for a in angles]
    cos = [math.cos(a) for a in angles]
    sin = [math.sin(a) for a in angles]

    def inradius(cx, cy):
        return min(h - cx * c - cy * s for h, c, s in zip(hs, cos, sin))

    # coarse grid over the body's bounding box
    xr = (-k.support(Direction(math.pi)), k.support(Direction(0.0)))
    yr = (-k.support(Direction(3 * math.pi / 2)), k.support(Direction(math.pi / 2)))
    best = None
    steps = 12
    for i in range(steps + 1):
        for j in range(steps + 1):
            cx = xr[0] + (xr[1] - xr[0]) * i / steps
            cy = yr[0] + (yr[1] - yr[0]) * j / steps
            v = inradius(cx, cy)
            if best is None or v > best[0]:
                best = (v, cx, cy)
    _, cx, cy = best
    step = max(xr[1] - xr[0], yr[1] - yr[0]) / steps
    val = inradius(cx, cy)
    while step > 1e-12:
        improved = False
        for dx, dy in ((step, 0), (-step, 0), (0, step), (0, -step),
                       (step, step), (step, -step), (-step, step), (-step, -step)):
            v = inradius(cx + dx, cy + dy)
            if v > val + 1e-15:
                cx, cy, val = cx + dx, cy + dy, v
                improved = True
        if not improved:
            step /= 2.0
    return Point(cx, cy)


NEAR_DISK_RATIO = 2.2356 / 2.0

_NORMALIZE_CACHE: dict = {}


def normalize_inner_outer(k: Body, mode: str, grid: int = 10000,
                          tol: Tolerance = DEFAULT_TOL) -> NormalizationReport:
    """Concentric inner/outer disk normalization.

    Modes:
      john           -- scale so the inner disk is the unit disk at the origin.
      constant_width -- verify the width identity, scale the width to 1.
      near_disk      -- gate ratio <= 1.1178, scale so the outer radius is 1/2.

    Only similarity transforms are applied; the gate is therefore sufficient
    but not necessary (no linear-image optimization is attempted).
    """
    cache_key = (k.cache_key(), mode, grid, tol.eps_geom)
    hit = _NORMALIZE_CACHE.get(cache_key)
    if hit is not None:
        if isinstance(hit, Exception):
            raise hit
        return hit
    try:
        report = _normalize_inner_outer(k, mode, grid, tol)
    except (NotConstantWidth, NotNearDisk) as exc:
        _NORMALIZE_CACHE[cache_key] = exc
        raise
    _NORMALIZE_CACHE[cache_key] = report
    return report


def _normalize_inner_outer(k: Body, mode: str, grid: int,
                           tol: Tolerance) -> NormalizationReport:
    c = _chebyshev_center(k)
    angles = [TWO_PI * i / grid for i in range(grid)]
    g = [k.support(Direction(a)) - c.x * math.cos(a) - c.y * math.sin(a)
         for a in angles]
    r_in = min(g)
    r_out = max(g)
    if r_in <= tol.eps_geom:
        raise ValidationError("body has (numerically) empty interior")
    ratio = r_out / r_in

    if mode == "john":
        s = 1.0 / r_in
    elif mode == "constant_width":
        widths = [g[i] + g[(i + grid // 2) % grid] for i in range(grid // 2)]
        span = max(widths) - min(widths)
        if span > 1e-6:
            raise NotConstantWidth(f"width varies by {span:.3g}")
        s = 1.0 / widths[0]
    elif mode == "near_disk":
        if ratio > NEAR_DISK_RATIO + tol.eps_geom:
            raise NotNearDisk(f"inner/outer ratio {ratio:.6f} > {NEAR_DISK_RATIO}")
        s = 0.5 / r_out
    else:
        raise ValueError(f"unknown mode {mode!r}")

    transform = Similarity(s, Point(-s * c.x, -s * c.y))
    report = NormalizationReport(
        inner=Disk(Point(0.0, 0.0), s * r_in),
        outer=Disk(Point(0.0, 0.0), s * r_out),
        ratio=ratio,
        transform=transform,
        mode=mode,
        width_span=(max(widths) - min(widths)) if mode == "constant_width" else None,
    )
    return report


def scaled_body(k: Body, s: float) -> Body:
    """The body s*K (about the origin of its frame), s > 0."""
    if s <= 0:
        raise ValueError("scale must be positive")
    if isinstance(k, DiskBody):
        return DiskBody(k.radius * s, k.center * s)
    if isinstance(k, ReuleauxBody):
        return ReuleauxBody(k.arms, k.width_value * s)
    if isinstance(k, PolygonBody):
        return PolygonBody(k.polygon.scaled(s))
    if isinstance(k, SupportSampledBody):
        return SupportSampledBody([(a, v * s) for a, v in zip(k.angles, k.values)])
    raise TypeError(f"unsupported body {type(k)!r}")


@dataclass(frozen=True)
class TransformedBody(Body):
    """scale * Rot(-rotation)(inner - center): the frame-aligned, centered,
    rescaled view of a body used by the pentagon pipelines."""

    inner: Body
    rotation: float
    scale: float
    center: Point

    def support(self, d: Direction) -> float:
        dd = Direction(d.theta + self.rotation)
        return self.scale * (self.inner.support(dd) - self.center.dot(dd.unit()))

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        q = Point((c * p.x - s * p.y) / self.scale + self.center.x,
                  (s * p.x + c * p.y) / self.scale + self.center.y)
        return self.inner.contains_point(q, eps / self.scale)

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        c, s = math.cos(-self.rotation), math.sin(-self.rotation)
        pts = []
        for v in self.inner.as_polygon(samples).vertices:
            w = v - self.center
            pts.append(Point(self.scale * (c * w.x - s * w.y),
                             self.scale * (s * w.x + c * w.y)))
        return ConvexPolygon(pts)

    def descriptor(self) -> dict:
        return {"type": "transformed", "rotation": self.rotation,
                "scale": self.scale, "center": [self.center.x, self.center.y],
                "inner": self.inner.descriptor()}

    def cache_key(self):
        return ("transformed", self.inner.cache_key(), round(self.rotation, 12),
                round(self.scale, 12),
                round(self.center.x, 12), round(self.center.y, 12))


@dataclass(frozen=True)
class ReflectedBody(Body):
    """-K, delegating to K so containment stays exact for every kind."""

    inner: Body

    def support(self, d: Direction) -> float:
        return self.inner.support(d.opposite())

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return self.inner.contains_point(p * -1.0, eps)

    def as_polygon(self, samples: int = 64) -> ConvexPolygon:
        return self.inner.as_polygon(samples).reflected()

    def descriptor(self) -> dict:
        return {"type": "reflected", "inner": self.inner.descriptor()}

    def cache_key(self):
        return ("reflected", self.inner.cache_key())


def reflected_body(k: Body) -> Body:
    """The body -K."""
    if isinstance(k, DiskBody):
        return DiskBody(k.radius, k.center * -1.0)
    if isinstance(k, PolygonBody):
        return PolygonBody(k.polygon.reflected())
    return ReflectedBody(k)
