"""Covering gadgets: disk layouts over squares, the three-circle pentagon
cover, rotation covers by the width-1 Reuleaux triangle, per-body covers of
the pentagon decomposition, and a grid-certified coverage checker.

The canonical pentagon is the unit square with the far corner cut off at
x + y = sqrt(2); its decomposition is a 5/8 square at the origin corner and
two mirror-image subpentagons meeting at the cut midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bodies import (
    Body,
    ConvexPolygon,
    DiskBody,
    PolygonBody,
    ReflectedBody,
    ReuleauxBody,
    SupportSampledBody,
)
from .errors import CoverSearchFailed, RadiusTooSmall, RotationUncoverable
from .geom import (
    DEFAULT_TOL,
    Direction,
    Disk,
    Point,
    Tolerance,
    circumcircle,
    min_enclosing_disk,
)

SQRT2 = math.sqrt(2.0)
TWO_PI = 2.0 * math.pi

NEAR_DISK_COVER_RADIUS = 1.0 / 2.2356


# ---------------------------------------------------------------------------
# canonical pentagon and its decomposition

PENT_A = Point(0.0, 0.0)
PENT_B = Point(1.0, 0.0)
PENT_C = Point(1.0, SQRT2 - 1.0)
PENT_D = Point(SQRT2 - 1.0, 1.0)
PENT_E = Point(0.0, 1.0)
PENT_I = Point(SQRT2 / 2.0, SQRT2 / 2.0)   # midpoint of the cut edge CD
SQUARE_SIDE = 5.0 / 8.0
PENT_G = Point(SQUARE_SIDE, 0.0)
PENT_H = Point(SQUARE_SIDE, SQUARE_SIDE)
PENT_F = Point(0.0, SQUARE_SIDE)


def canonical_pentagon() -> ConvexPolygon:
    return ConvexPolygon([PENT_A, PENT_B, PENT_C, PENT_D, PENT_E])


def mirrored_pentagon() -> ConvexPolygon:
    """Point reflection through the square center: the cut sits at the
    origin corner instead.  Reflection through a point preserves orientation,
    so the vertex order stays counter-clockwise."""
    return ConvexPolygon([Point(1.0, 1.0) - v
                          for v in canonical_pentagon().vertices])


def pentagon_decomposition():
    """(square, lower subpentagon, upper subpentagon): an exact partition of
    the canonical pentagon (overlaps have measure zero)."""
    square = ConvexPolygon([PENT_A, PENT_G, PENT_H, PENT_F])
    lower = ConvexPolygon([PENT_G, PENT_B, PENT_C, PENT_I, PENT_H])
    upper = ConvexPolygon([PENT_F, PENT_H, PENT_I, PENT_D, PENT_E])
    return square, lower, upper


# ---------------------------------------------------------------------------
# cover pieces


@dataclass(frozen=True)
class DiskPiece:
    disk: Disk

    def slack(self, p: Point) -> float:
        return self.disk.radius - self.disk.center.dist(p)

    def slack_grid(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        c = self.disk.center
        return self.disk.radius - np.hypot(xs - c.x, ys - c.y)

    def describe(self) -> dict:
        return {"kind": "disk",
                "center": [self.disk.center.x, self.disk.center.y],
                "radius": self.disk.radius}


@dataclass(frozen=True)
class BodyPiece:
    """A translated body: covers p when p - anchor lies in the body."""

    body: Body
    anchor: Point

    def slack(self, p: Point) -> float:
        return float(_body_depth_grid(self.body,
                                      np.array([p.x - self.anchor.x]),
                                      np.array([p.y - self.anchor.y]))[0])

    def slack_grid(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return _body_depth_grid(self.body, xs - self.anchor.x, ys - self.anchor.y)

    def describe(self) -> dict:
        return {"kind": "body", "anchor": [self.anchor.x, self.anchor.y],
                "body": self.body.descriptor()}


def _body_depth_grid(body: Body, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Inside-depth of points in the body frame (exact for disks, polygons
    and Reuleaux polygons; support-grid minimum otherwise)."""
    if isinstance(body, DiskBody):
        return body.radius - np.hypot(xs - body.center.x, ys - body.center.y)
    if isinstance(body, ReuleauxBody):
        out = None
        for c in body.corners():
            d = body.width_value - np.hypot(xs - c.x, ys - c.y)
            out = d if out is None else np.minimum(out, d)
        return out
    if isinstance(body, PolygonBody):
        out = None
        for a, b in body.polygon.edges():
            e = b - a
            ln = e.norm()
            d = (e.x * (ys - a.y) - e.y * (xs - a.x)) / ln
            out = d if out is None else np.minimum(out, d)
        return out
    if isinstance(body, ReflectedBody):
        return _body_depth_grid(body.inner, -xs, -ys)
    from .bodies import TransformedBody

    if isinstance(body, TransformedBody):
        c, s = math.cos(body.rotation), math.sin(body.rotation)
        qx = (c * xs - s * ys) / body.scale + body.center.x
        qy = (s * xs + c * ys) / body.scale + body.center.y
        return body.scale * _body_depth_grid(body.inner, qx, qy)
    if isinstance(body, SupportSampledBody):
        out = None
        step = max(1, len(body.angles) // 720)
        for a, h in zip(body.angles[::step], body.values[::step]):
            d = h - (xs * math.cos(a) + ys * math.sin(a))
            out = d if out is None else np.minimum(out, d)
        return out
    raise TypeError(f"unsupported body {type(body)!r}")


@dataclass(frozen=True)
class CoverGadget:
    region: ConvexPolygon
    pieces: tuple
    pitch: Optional[float] = None
    margin: Optional[float] = None     # min over checked samples of best slack
    analytic_margin: Optional[float] = None
    name: str = ""

    def describe(self) -> dict:
        return {
            "name": self.name,
            "region": [[v.x, v.y] for v in self.region.vertices],
            "pieces": [p.describe() for p in self.pieces],
            "pitch": self.pitch,
            "margin": self.margin,
            "analytic_margin": self.analytic_margin,
        }


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    margin: float                     # min over samples of best piece slack
    samples: int
    pitch: float
    first_uncovered: Optional[Point] = None

    @property
    def continuum_bound(self) -> float:
        """Shrink needed for the grid check to certify the full region."""
        return self.pitch * (SQRT2 / 2.0 + 0.5)

    @property
    def certified(self) -> bool:
        """True coverage follows when every sample clears the shrink bound."""
        return self.ok and self.margin >= self.continuum_bound


def _region_samples(region: ConvexPolygon, pitch: float):
    x0, y0, x1, y1 = region.bounding_box()
    nx = max(2, int(math.ceil((x1 - x0) / pitch)) + 1)
    ny = max(2, int(math.ceil((y1 - y0) / pitch)) + 1)
    gx = np.linspace(x0, x1, nx)
    gy = np.linspace(y0, y1, ny)
    X, Y = np.meshgrid(gx, gy, indexing="ij")
    xs = X.ravel()
    ys = Y.ravel()
    inside = np.ones(xs.shape, dtype=bool)
    for a, b in region.edges():
        e = b - a
        inside &= (e.x * (ys - a.y) - e.y * (xs - a.x)) >= -1e-12 * e.norm()
    xs, ys = xs[inside], ys[inside]
    # boundary chains: any region point is then within ~pitch of a sample
    bx, by = [], []
    for a, b in region.edges():
        steps = max(1, int(math.ceil(a.dist(b) / pitch)))
        for i in range(steps + 1):
            t = i / steps
            bx.append(a.x + (b.x - a.x) * t)
            by.append(a.y + (b.y - a.y) * t)
    xs = np.concatenate([xs, np.array(bx)])
    ys = np.concatenate([ys, np.array(by)])
    return xs, ys


def verify_cover(g: CoverGadget, pitch: float,
                 tol: Tolerance = DEFAULT_TOL) -> CoverCheck:
    """Sample the region on a pitch grid plus boundary chains; every sample
    must sit within eps_cover of some piece.  A reported margin at or above
    pitch*(sqrt(2)/2 + 1/2) upgrades the check to a continuum certificate
    (convex pieces, nearest-sample argument); touching covers certify at
    tolerance level only, which is reported honestly via `margin`.
    """
    xs, ys = _region_samples(g.region, pitch)
    best = None
    for piece in g.pieces:
        s = piece.slack_grid(xs, ys)
        best = s if best is None else np.maximum(best, s)
    margin = float(best.min())
    ok = margin >= -tol.eps_cover
    first = None
    if not ok:
        i = int(best.argmin())
        first = Point(float(xs[i]), float(ys[i]))
    return CoverCheck(ok=ok, margin=margin, samples=int(xs.size), pitch=pitch,
                      first_uncovered=first)


# ---------------------------------------------------------------------------
# gadget constructors


def square_disk_cover(side: float, radius: float,
                      origin: Point = Point(0.0, 0.0)) -> CoverGadget:
    """k x k grid of disks over the square [0, side]^2 + origin, with
    k = ceil(side / (radius * sqrt(2))): each cell's half-diagonal is at most
    the radius, so coverage holds analytically."""
    if side <= 0 or radius <= 0:
        raise ValueError("side and radius must be positive")
    k = max(1, int(math.ceil(side / (radius * SQRT2) - 1e-12)))
    cell = side / k
    half_diag = cell * SQRT2 / 2.0
    pieces = []
    for i in range(k):
        for j in range(k):
            c = Point(origin.x + (i + 0.5) * cell, origin.y + (j + 0.5) * cell)
            pieces.append(DiskPiece(Disk(c, radius)))
    region = ConvexPolygon([
        origin,
        origin + Point(side, 0.0),
        origin + Point(side, side),
        origin + Point(0.0, side),
    ])
    return CoverGadget(region, tuple(pieces), margin=None,
                       analytic_margin=radius - half_diag,
                       name=f"square{side:.6g}-disks{k * k}")


def rect_disk_cover(width: float, height: float, radius: float,
                    origin: Point = Point(0.0, 0.0)) -> CoverGadget:
    """Grid cover of a rectangle; per-axis counts from the same cell bound."""
    kx = max(1, int(math.ceil(width / (radius * SQRT2) - 1e-12)))
    ky = max(1, int(math.ceil(height / (radius * SQRT2) - 1e-12)))
    cx, cy = width / kx, height / ky
    half_diag = math.hypot(cx, cy) / 2.0
    pieces = []
    for i in range(kx):
        for j in range(ky):
            c = Point(origin.x + (i + 0.5) * cx, origin.y + (j + 0.5) * cy)
            pieces.append(DiskPiece(Disk(c, radius)))
    region = ConvexPolygon([
        origin,
        origin + Point(width, 0.0),
        origin + Point(width, height),
        origin + Point(0.0, height),
    ])
    return CoverGadget(region, tuple(pieces), margin=None,
                       analytic_margin=radius - half_diag,
                       name=f"rect{width:.4g}x{height:.4g}-disks{kx * ky}")


def pentagon_three_circle_cover(r: float,
                                tol: Tolerance = DEFAULT_TOL) -> CoverGadget:
    """Three circumdisks covering the canonical pentagon.

    The construction places M on the left edge and N on the bottom edge at
    distance r*sqrt(2) from the corner (so the segment MN has length 2r) and
    takes the circumcircles of (M, I, E), (A, N, M) and (N, B, I).  The
    (A, N, M) disk has radius exactly r; all radii must stay at or below r.
    """
    if r < NEAR_DISK_COVER_RADIUS - tol.eps_geom:
        raise RadiusTooSmall(
            f"cover radius {r} below the near-disk threshold "
            f"{NEAR_DISK_COVER_RADIUS:.6f}")
    m = Point(0.0, r * SQRT2)
    n = Point(r * SQRT2, 0.0)
    if m.y > 1.0 or n.x > 1.0:
        raise RadiusTooSmall(f"cover radius {r} pushes M or N off the pentagon")
    disks = (
        circumcircle(m, PENT_I, PENT_E),
        circumcircle(PENT_A, n, m),
        circumcircle(n, PENT_B, PENT_I),
    )
    worst = max(d.radius for d in disks)
    if worst > r + tol.eps_geom:
        raise RadiusTooSmall(
            f"a circumradius {worst:.6f} exceeds the cover radius {r}")
    pieces = tuple(DiskPiece(d) for d in disks)
    return CoverGadget(canonical_pentagon(), pieces,
                       analytic_margin=r - worst,
                       name=f"pentagon-3circles-r{r:.6g}")


def pentagon_eight_disk_cover(radius: float = 0.25) -> CoverGadget:
    """3x3 grid of disks on the unit square minus the far-corner disk: the
    pentagon's cut leaves that cell reachable from its two neighbors."""
    full = square_disk_cover(1.0, radius)
    keep = []
    for piece in full.pieces:
        c = piece.disk.center
        if c.x > 2.0 / 3.0 and c.y > 2.0 / 3.0:
            continue
        keep.append(piece)
    return CoverGadget(canonical_pentagon(), tuple(keep),
                       name=f"pentagon-8disks-r{radius:.6g}")


# ---------------------------------------------------------------------------
# Reuleaux rotation covers


def reuleaux_triangle_corners(width: float = 1.0):
    """Canonical placement: corners at 90, 210 and 330 degrees on the circle
    of radius width/sqrt(3); membership is intersection of the three disks."""
    r = width / math.sqrt(3.0)
    return [Point(r * math.cos(a), r * math.sin(a))
            for a in (math.pi / 2.0, math.pi * 7.0 / 6.0, math.pi * 11.0 / 6.0)]


@dataclass(frozen=True)
class RotationCoverReport:
    shape: ConvexPolygon
    width: float
    angles_tested: int
    witness_shifts: tuple      # per-angle translation of the rotated shape
    worst_slack: float
    worst_angle: float


def reuleaux_rotation_cover(shape: ConvexPolygon, angle_samples: int,
                            width: float = 1.0) -> RotationCoverReport:
    """Check that every sampled rotation of the shape fits in the width-1
    Reuleaux triangle.

    Containment reduces exactly to a smallest-enclosing-disk question: the
    rotated shape fits iff the points {corner - R(v)} admit a point within
    distance `width` of all of them, i.e. their minimum enclosing disk has
    radius at most `width`; the disk center is the witness translation.
    """
    corners = reuleaux_triangle_corners(width)
    shifts = []
    worst = math.inf
    worst_angle = 0.0
    for a_i in range(angle_samples):
        alpha = TWO_PI * a_i / angle_samples
        ca, sa = math.cos(alpha), math.sin(alpha)
        pts = []
        for v in shape.vertices:
            rv = Point(ca * v.x - sa * v.y, sa * v.x + ca * v.y)
            for c in corners:
                pts.append(c - rv)
        med = min_enclosing_disk(pts)
        slack = width - med.radius
        if slack < worst:
            worst = slack
            worst_angle = alpha
        if slack < 0.0:
            raise RotationUncoverable(
                f"rotation {alpha:.6f} rad needs enclosing radius "
                f"{med.radius:.6f} > width {width}", angle=alpha)
        shifts.append(med.center)
    return RotationCoverReport(shape, width, angle_samples, tuple(shifts),
                               worst, worst_angle)


# ---------------------------------------------------------------------------
# covering the pentagon pieces by one body translate each


def _best_piece_anchor(piece: ConvexPolygon, body: Body,
                       start: Point) -> tuple:
    """Maximize min over piece vertices of depth(v - p) in the body by
    pattern search; the objective is concave, so the local optimum is global."""
    vx = np.array([v.x for v in piece.vertices])
    vy = np.array([v.y for v in piece.vertices])

    def score(px, py):
        return float(_body_depth_grid(body, vx - px, vy - py).min())

    px, py = start.x, start.y
    val = score(px, py)
    step = 0.25
    while step > 1e-9:
        improved = False
        for dx, dy in ((step, 0), (-step, 0), (0, step), (0, -step),
                       (step, step), (step, -step), (-step, step),
                       (-step, -step)):
            v = score(px + dx, py + dy)
            if v > val + 1e-15:
                px, py, val = px + dx, py + dy, v
                improved = True
        if not improved:
            step /= 2.0
    return Point(px, py), val


def pentagon_minus_body_cover(k: Body, mirror: bool = False,
                              tol: Tolerance = DEFAULT_TOL) -> CoverGadget:
    """Cover the canonical pentagon by three translates of -K (or of K for
    the mirrored pentagon), one per decomposition piece.

    For genuine constant-width-1 bodies the pieces (diameters < 1) always
    fit; a failed search therefore signals either a bad input or an exhausted
    budget, and the raised error says which value was reached.
    """
    from .bodies import reflected_body

    cover_body = k if mirror else reflected_body(k)
    pieces = []
    region = canonical_pentagon()
    worst = math.inf
    for part in pentagon_decomposition():
        centroid = part.centroid()
        anchor, val = _best_piece_anchor(part, cover_body, centroid)
        if val < tol.eps_geom:
            raise CoverSearchFailed(
                f"piece with centroid ({centroid.x:.3f}, {centroid.y:.3f}) "
                f"reached depth {val:.3g} only; body is either not constant "
                f"width 1 or the search budget was exhausted")
        pieces.append(BodyPiece(cover_body, anchor))
        worst = min(worst, val)
    return CoverGadget(region, tuple(pieces), margin=worst,
                       name="pentagon-3bodies" + ("-mirror" if mirror else ""))
