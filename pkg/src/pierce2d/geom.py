"""Planar primitives shared by every other module.

All predicates take an explicit tolerance policy.  The orientation test uses a
fast floating-point path with an exact rational fallback near the rounding
bound, so near-degenerate inputs never flip signs silently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CollinearInput, EmptyInput

TWO_PI = 2.0 * math.pi

# float epsilon bound for the 2x2 determinant (Shewchuk-style first-stage bound)
_ORIENT_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


@dataclass(frozen=True)
class Tolerance:
    """Tolerance policy: eps_geom for predicates, eps_cover for coverage grids."""

    eps_geom: float = 1e-9
    eps_cover: float = 1e-7

    def __post_init__(self):
        if not (0.0 < self.eps_geom <= self.eps_cover):
            raise ValueError("require 0 < eps_geom <= eps_cover")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def perp(self) -> "Point":
        """Rotate by +90 degrees."""
        return Point(-self.y, self.x)

    def as_tuple(self) -> tuple:
        return (self.x, self.y)


ORIGIN = Point(0.0, 0.0)


def _normalize_angle(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


@dataclass(frozen=True)
class Direction:
    """An angle in [0, 2*pi); unit vector (cos theta, sin theta)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _normalize_angle(self.theta))

    def unit(self) -> Point:
        return Point(math.cos(self.theta), math.sin(self.theta))

    def opposite(self) -> "Direction":
        return Direction(self.theta + math.pi)

    def rotated(self, delta: float) -> "Direction":
        return Direction(self.theta + delta)


@dataclass(frozen=True)
class Line:
    """The line {q : q . u(normal) = offset}, stored in canonical form.

    Canonical form keeps the normal angle in [0, pi); (theta, c) and
    (theta + pi, -c) denote the same line and normalize identically.
    """

    normal: Direction
    offset: float

    def __post_init__(self):
        t = self.normal.theta
        c = self.offset
        if t >= math.pi:
            t -= math.pi
            c = -c
        object.__setattr__(self, "normal", Direction(t))
        object.__setattr__(self, "offset", c)

    @staticmethod
    def from_point_normal(p: Point, normal: Direction) -> "Line":
        return Line(normal, p.dot(normal.unit()))

    def direction(self) -> Point:
        """Unit vector along the line."""
        return self.normal.unit().perp()

    def point_on(self) -> Point:
        return self.normal.unit() * self.offset

    def signed_dist(self, p: Point) -> float:
        return p.dot(self.normal.unit()) - self.offset

    def same_line(self, other: "Line", tol: Tolerance = DEFAULT_TOL) -> bool:
        dt = abs(self.normal.theta - other.normal.theta)
        dt = min(dt, math.pi - dt)
        return dt <= tol.eps_geom and abs(self.offset - other.offset) <= tol.eps_geom


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if self.radius < 0.0:
            raise ValueError("negative radius")

    def contains_point(self, p: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        return self.center.dist(p) <= self.radius + eps


def orient(p: Point, q: Point, r: Point, tol: Tolerance = DEFAULT_TOL) -> int:
    """Sign of the signed area of triangle pqr: +1 CCW, -1 CW, 0 collinear.

    Zero means collinear within eps_geom scaled by the leg magnitudes.  The
    sign is decided by a float filter, with an exact rational fallback when
    the determinant falls under the rounding bound.
    """
    ax, ay = q.x - p.x, q.y - p.y
    bx, by = r.x - p.x, r.y - p.y
    det = ax * by - ay * bx
    detsum = abs(ax * by) + abs(ay * bx)
    # symmetric scale (product of the two longest sides) keeps the zero band
    # identical under argument swaps
    d1 = math.hypot(ax, ay)
    d2 = math.hypot(bx, by)
    d3 = math.hypot(bx - ax, by - ay)
    scale = d1 * d2 * d3 / max(min(d1, d2, d3), 1e-300)
    band = tol.eps_geom * scale
    if abs(det) > max(band, _ORIENT_ERRBOUND * detsum):
        return 1 if det > 0.0 else -1
    # exact fallback: floats are exact rationals
    det_exact = Fraction(q.x - p.x) * Fraction(r.y - p.y) - Fraction(q.y - p.y) * Fraction(r.x - p.x)
    if abs(det_exact) <= Fraction(band):
        return 0
    return 1 if det_exact > 0 else -1


def line_intersect(a: Line, b: Line, tol: Tolerance = DEFAULT_TOL) -> Optional[Point]:
    """Intersection point of two lines, or None when parallel within tolerance."""
    t1, t2 = a.normal.theta, b.normal.theta
    d = math.sin(t2 - t1)
    if abs(d) <= tol.eps_geom:
        return None
    c1, c2 = a.offset, b.offset
    x = (c1 * math.sin(t2) - c2 * math.sin(t1)) / d
    y = (c2 * math.cos(t1) - c1 * math.cos(t2)) / d
    return Point(x, y)


def circumcircle(p: Point, q: Point, r: Point, tol: Tolerance = DEFAULT_TOL) -> Disk:
    """The unique disk through three non-collinear points."""
    if orient(p, q, r, tol) == 0:
        raise CollinearInput(f"collinear points {p}, {q}, {r}")
    ax, ay = p.x, p.y
    bx, by = q.x, q.y
    cx, cy = r.x, r.y
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    center = Point(ux, uy)
    return Disk(center, max(center.dist(p), center.dist(q), center.dist(r)))


def _disk_from(points: Sequence[Point]) -> Disk:
    if not points:
        return Disk(ORIGIN, 0.0)
    if len(points) == 1:
        return Disk(points[0], 0.0)
    if len(points) == 2:
        c = Point((points[0].x + points[1].x) / 2.0, (points[0].y + points[1].y) / 2.0)
        return Disk(c, max(c.dist(points[0]), c.dist(points[1])))
    try:
        return circumcircle(points[0], points[1], points[2])
    except CollinearInput:
        # fall back to the widest diameter pair
        best = None
        for i in range(3):
            for j in range(i + 1, 3):
                d = _disk_from([points[i], points[j]])
                if best is None or d.radius > best.radius:
                    best = d
        return best


def _in_disk(d: Disk, p: Point, slack: float) -> bool:
    return d.center.dist(p) <= d.radius * (1.0 + slack) + slack


def min_enclosing_disk(points: Iterable[Point], tol: Tolerance = DEFAULT_TOL) -> Disk:
    """Smallest disk containing all points (Welzl move-to-front, seeded shuffle).

    Deterministic: the shuffle uses a fixed-seed generator, so identical input
    always yields the identical disk.
    """
    pts = list(points)
    if not pts:
        raise EmptyInput("min_enclosing_disk of empty set")
    rng = random.Random(0x5EED)
    rng.shuffle(pts)
    slack = tol.eps_geom

    disk = None
    for i, p in enumerate(pts):
        if disk is not None and _in_disk(disk, p, slack):
            continue
        disk = Disk(p, 0.0)
        for j in range(i):
            q = pts[j]
            if _in_disk(disk, q, slack):
                continue
            disk = _disk_from([p, q])
            for k in range(j):
                r = pts[k]
                if _in_disk(disk, r, slack):
                    continue
                disk = _disk_from([p, q, r])
    return disk


def contains_point(region, p: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Closed containment inflated by eps_geom; region is a Disk or any object
    exposing contains_point(p, eps)."""
    if isinstance(region, Disk):
        return region.contains_point(p, tol.eps_geom)
    return region.contains_point(p, tol.eps_geom)


def convex_hull(points: Sequence[Point]) -> list:
    """Monotone-chain hull, CCW, no collinear runs on the boundary."""
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) <= 2:
        return [Point(x, y) for x, y in pts]

    def half(seq):
        out = []
        for t in seq:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (t[1] - oy) - (ay - oy) * (t[0] - ox) <= 0.0:
                    out.pop()
                else:
                    break
            out.append(t)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return [Point(x, y) for x, y in lower[:-1] + upper[:-1]]
