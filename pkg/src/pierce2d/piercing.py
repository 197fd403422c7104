"""Piercing pipelines for families of translates.

Every pipeline follows the same shape: color the directions, pick witness
directions, confine the translation vectors to a rectangle or pentagon via
width-exact strips, cover that region with a gadget whose pieces transfer to
piercing points, and re-verify the certificate pointwise before returning.

Strips act on translation vectors: a translate body+t meets a line with
normal u exactly when t.u lies in an interval of length width(u).  This is
tighter than any enclosing-box bookkeeping and makes the cover duality clean:
t in (-K)+p implies p in K+t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bodies import (
    Body,
    ConvexPolygon,
    NormalizationReport,
    TransformedBody,
    normalize_inner_outer,
)
from .covering import (
    CoverGadget,
    DiskPiece,
    canonical_pentagon,
    mirrored_pentagon,
    pentagon_eight_disk_cover,
    pentagon_minus_body_cover,
    pentagon_three_circle_cover,
    rect_disk_cover,
)
from .errors import (
    CoverSearchFailed,
    EmptyRegion,
    NoUnionDirection,
    NotNearDisk,
    ValidationError,
)
from .geom import DEFAULT_TOL, Direction, Disk, Line, Point, Tolerance
from .instances import ColoredInstance
from .transversal import (
    DirectionColoring,
    color_circle,
    direction_transversal,
    pentagon_direction_choices,
    pick_orthogonal_directions,
    sweep_special_vch,
)

PI = math.pi
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Strip:
    """The slab {q : lo <= q . u(normal) <= hi}."""

    normal: Direction
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi + DEFAULT_TOL.eps_geom:
            raise EmptyRegion(f"inverted strip [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, q: Point, eps: float = DEFAULT_TOL.eps_geom) -> bool:
        v = q.dot(self.normal.unit())
        return self.lo - eps <= v <= self.hi + eps


def strip_for_line(k: Body, line: Line) -> Strip:
    """Translation vectors t with (K+t) meeting the line."""
    u = line.normal
    return Strip(u, line.offset - k.support(u),
                 line.offset + k.support(u.opposite()))


@dataclass(frozen=True)
class PentagonGadget:
    """Canonical pentagon data: vertices, the 5/8 square and subpentagons."""

    pentagon: ConvexPolygon = field(default_factory=canonical_pentagon)

    @property
    def pieces(self):
        from .covering import pentagon_decomposition

        return pentagon_decomposition()


@dataclass(frozen=True)
class PentagonPlacement:
    """region/data sits inside Rot(frame_angle)(pentagon + shift); mirrored
    selects the point-reflected pentagon."""

    frame_angle: float
    shift: Point
    mirrored: bool


@dataclass(frozen=True)
class Confinement:
    region: ConvexPolygon
    pentagon: Optional[PentagonPlacement] = None


@dataclass(frozen=True)
class PiercingCertificate:
    """Piercing points for one family (scope 'family') or for everything
    outside one family (scope 'union_except')."""

    scope: str
    family: int
    points: tuple
    provenance: dict

    def __post_init__(self):
        if self.scope not in ("family", "union_except"):
            raise ValueError(f"bad scope {self.scope!r}")


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failure: Optional[str] = None


def _scope_sets(instance: ColoredInstance, scope: str, family: int):
    if scope == "family":
        for m, s in enumerate(instance.families[family]):
            yield family, m, s
    else:
        yield from instance.sets_excluding(family)


def verify_certificate(cert, instance: ColoredInstance,
                       tol: Tolerance = DEFAULT_TOL) -> VerificationResult:
    """Re-check every claim with fresh containment/transversality tests."""
    from .kkm import KkmCertificate, verify_pierce_point, verify_two_lines

    if isinstance(cert, PiercingCertificate):
        for i, m, s in _scope_sets(instance, cert.scope, cert.family):
            if not any(s.contains_point(p, tol.eps_geom) for p in cert.points):
                return VerificationResult(False, f"set ({i},{m}) unpierced")
        return VerificationResult(True)
    if isinstance(cert, KkmCertificate):
        if cert.variant == "two_lines":
            ok, bad = verify_two_lines(instance, cert.lines, tol)
            return VerificationResult(ok, None if ok else f"set {bad} uncrossed")
        if cert.variant == "pierce_point":
            ok, bad = verify_pierce_point(instance, cert.family, cert.point, tol)
            return VerificationResult(ok, None if ok else f"set {bad} unpierced")
        return VerificationResult(False, "unresolved certificate")
    raise TypeError(f"unknown certificate {type(cert)!r}")


# ---------------------------------------------------------------------------
# region confinement


def _polygon_halfplanes(poly: ConvexPolygon):
    """(unit outward normal, offset) per edge: inside is n.q <= b."""
    out = []
    for a, b in poly.edges():
        e = b - a
        n = Point(e.y / e.norm(), -e.x / e.norm())
        out.append((n, n.dot(a)))
    return out


def _big_box(half: float) -> ConvexPolygon:
    return ConvexPolygon([Point(-half, -half), Point(half, -half),
                          Point(half, half), Point(-half, half)])


def _clip_strips(strips: Sequence[Strip], half: float) -> Optional[ConvexPolygon]:
    region = _big_box(half)
    for s in strips:
        u = s.normal.unit()
        region = region.clip_halfplane(u, s.hi)
        if region is None:
            return None
        region = region.clip_halfplane(u * -1.0, -s.lo)
        if region is None:
            return None
    return region


def place_pentagon(points: Sequence[Point], margin: float = 0.0):
    """Translation v with all points inside pentagon+v, or None.

    The feasible v-set per pentagon halfplane (n, b) is
    {v : n.v >= max_i n.p_i - b}; intersecting the five halfplanes answers
    feasibility exactly.  Tried for the canonical and mirrored pentagon;
    returns (mirrored, v) for the first that fits.
    """
    for mirrored, pent in ((False, canonical_pentagon()),
                           (True, mirrored_pentagon())):
        feasible = _big_box(64.0)
        for n, b in _polygon_halfplanes(pent):
            req = max(p.dot(n) for p in points) - b + margin
            feasible = feasible.clip_halfplane(n * -1.0, -req)
            if feasible is None:
                break
        if feasible is not None:
            return mirrored, feasible.centroid()
    return None


def confinement_region(k: Body, lines: Sequence[Line],
                       tol: Tolerance = DEFAULT_TOL) -> Confinement:
    """Polygon of translation vectors t with K+t meeting every line.

    With three lines whose normals form a {t, t+pi/4, t+pi/2} pattern, a
    placement of the canonical (or mirrored) unit pentagon containing the
    region is attempted in the rotated frame and reported when one exists;
    centered strip choices can yield a hexagon that fits no pentagon
    translate, in which case pentagon=None.
    """
    if not lines:
        raise ValueError("need at least one line")
    strips = [strip_for_line(k, ln) for ln in lines]
    half = max(abs(s.lo) + s.width + 1.0 for s in strips) + 1.0
    region = _clip_strips(strips, half)
    if region is None:
        raise EmptyRegion("strips have empty intersection")

    placement = None
    if len(lines) == 3:
        thetas = sorted(ln.normal.theta % PI for ln in lines)
        for base in thetas:
            rest = sorted(((t - base) % PI) for t in thetas)
            if (abs(rest[1] - PI / 4.0) < 1e-9 and
                    abs(rest[2] - PI / 2.0) < 1e-9):
                rot = _rotated_points(region.vertices, -base)
                hit = place_pentagon(rot)
                if hit is not None:
                    mirrored, v = hit
                    placement = PentagonPlacement(base, v, mirrored)
                break
    return Confinement(region, placement)


def _rotated_points(points, angle: float):
    c, s = math.cos(angle), math.sin(angle)
    return [Point(c * p.x - s * p.y, s * p.x + c * p.y) for p in points]


# ---------------------------------------------------------------------------
# shared pipeline plumbing


def _require_translates(instance: ColoredInstance):
    if not instance.is_translate_mode:
        raise ValidationError("piercing pipelines need translate instances")


def _chebyshev_center_of(report: NormalizationReport) -> Point:
    s = report.transform.scale
    return Point(-report.transform.offset.x / s, -report.transform.offset.y / s)


def _centered_width(k: Body, theta: float) -> float:
    return k.width(Direction(theta))


def _union_rectangle_pipeline(instance: ColoredInstance, report,
                              disk_radius_raw: float, mode_name: str,
                              tol: Tolerance) -> PiercingCertificate:
    """Orthogonal directions + rectangle confinement + grid disk cover, for
    the union-without-one-family scope."""
    body = instance.body
    center = _chebyshev_center_of(report)
    coloring = color_circle(instance, tol=tol)
    j, t1, t2 = pick_orthogonal_directions(coloring)

    all_sets = [s for _, _, s in instance.all_sets()]
    scope_sets = [s for _, _, s in instance.sets_excluding(j)]
    line1 = direction_transversal(all_sets, Direction(t1), tol)
    line2 = direction_transversal(scope_sets, Direction(t2), tol)
    assert line1 is not None and line2 is not None, \
        "colored directions must admit witness lines"

    u1, u2 = Direction(t1).unit(), Direction(t2).unit()
    h = lambda d: body.support(d) - center.dot(d.unit())  # noqa: E731
    lo1 = line1.offset - h(Direction(t1))
    hi1 = line1.offset + h(Direction(t1).opposite())
    lo2 = line2.offset - h(Direction(t2))
    hi2 = line2.offset + h(Direction(t2).opposite())

    cover = rect_disk_cover(hi1 - lo1, hi2 - lo2, disk_radius_raw,
                            origin=Point(lo1, lo2))
    points = tuple(
        u1 * piece.disk.center.x + u2 * piece.disk.center.y
        for piece in cover.pieces
    )
    cert = PiercingCertificate(
        scope="union_except", family=j, points=points,
        provenance={
            "pipeline": mode_name,
            "directions": [t1, t2],
            "lines": [[line1.normal.theta, line1.offset],
                      [line2.normal.theta, line2.offset]],
            "inner_radius": disk_radius_raw,
            "gadget": cover.name,
            "normalization_ratio": report.ratio,
        })
    res = verify_certificate(cert, instance, tol)
    if not res.ok:
        raise CoverSearchFailed(f"certificate failed verification: {res.failure}")
    return cert


def pierce_general(instance: ColoredInstance,
                   tol: Tolerance = DEFAULT_TOL) -> PiercingCertificate:
    """Union scope, any body: inner-disk cover of the width rectangle.

    With inner/outer disk ratio at most 2 the rectangle is at most 4x4 inner
    radii, so the grid cover uses at most 9 disks."""
    _require_translates(instance)
    report = normalize_inner_outer(instance.body, "john")
    r_in_raw = report.inner.radius / report.transform.scale
    return _union_rectangle_pipeline(instance, report, r_in_raw,
                                     "general9", tol)


def pierce_constant_width_union(instance: ColoredInstance,
                                tol: Tolerance = DEFAULT_TOL) -> PiercingCertificate:
    """Union scope, constant-width body: at most 4 piercing points, because
    the width rectangle is w x w and the inradius of a constant-width body
    is at least w(1 - 1/sqrt(3))."""
    _require_translates(instance)
    report = normalize_inner_outer(instance.body, "constant_width")
    r_in_raw = report.inner.radius / report.transform.scale
    return _union_rectangle_pipeline(instance, report, r_in_raw, "cw4", tol)


# ---------------------------------------------------------------------------
# pentagon pipelines (single-family scope, n = 2)

_PENTAGON_COVER_CACHE: dict = {}


def _pentagon_body_cover_cached(body_rot: Body, mirror: bool,
                                tol: Tolerance) -> CoverGadget:
    key = (body_rot.cache_key(), mirror)
    hit = _PENTAGON_COVER_CACHE.get(key)
    if hit is None:
        hit = pentagon_minus_body_cover(body_rot, mirror=mirror, tol=tol)
        _PENTAGON_COVER_CACHE[key] = hit
    return hit


def _free_direction_choices(j: int):
    """Direction triples for a family with transversals everywhere."""
    for k in range(16):
        ta = PI * k / 16.0
        yield j, ta, (ta + PI / 2.0) % PI, (ta + PI / 4.0) % PI


def _pentagon_choices(instance: ColoredInstance, tol: Tolerance):
    """(j, theta_a, scope) candidates: pentagon-direction picks pierce family
    j itself; when no direction carries both colors, the dichotomy sweep
    names the separated family and the other side gets free directions."""
    coloring = color_circle(instance, tol=tol)
    found = False
    for j, ta, _tb, _tc in pentagon_direction_choices(coloring):
        found = True
        yield j, ta, "family"
    if not found:
        outcome = sweep_special_vch(instance, tol=tol)
        if outcome.is_union_transversal:
            # a union transversal direction is both-colored; the coloring
            # grid can only have missed it by tolerance
            base = outcome.union_line.normal.theta % PI
            for j in (0, 1):
                yield j, base, "family"
            return
        jj = outcome.pairwise_index
        for j, ta, _tb, _tc in _free_direction_choices(jj):
            yield j, ta, "union_except"


def _pierce_pentagon_pipeline(instance: ColoredInstance, mode_name: str,
                              report: NormalizationReport,
                              gadget_for,
                              tol: Tolerance) -> PiercingCertificate:
    """Shared driver: choose directions, place the unit pentagon over the
    normalized translation vectors in the rotated frame, instantiate the
    cover gadget, map anchors back, verify."""
    center = _chebyshev_center_of(report)
    s = report.transform.scale

    last_error = None
    for j, ta, scope in _pentagon_choices(instance, tol):
        if scope == "family":
            data_ts = [t.shift for t in instance.families[j]]
        else:
            data_ts = [t.shift for _, _, t in instance.sets_excluding(j)]
        frame = -ta
        data = _rotated_points([(t + center) * s for t in data_ts], frame)
        hit = place_pentagon(data)
        if hit is None:
            last_error = CoverSearchFailed(
                f"no pentagon placement for directions at {ta:.4f}")
            continue
        mirrored, v = hit
        try:
            anchors = gadget_for(ta, mirrored)
        except (CoverSearchFailed, NotNearDisk) as exc:
            last_error = exc
            continue
        if mirrored:
            one = Point(1.0, 1.0)
            placed = [one + v - a for a in anchors]
        else:
            placed = [a + v for a in anchors]
        points = tuple(
            p * (1.0 / s) for p in _rotated_points(placed, ta)
        )
        cert = PiercingCertificate(
            scope=scope, family=j, points=points,
            provenance={
                "pipeline": mode_name,
                "frame_angle": ta,
                "mirrored": mirrored,
                "pentagon_shift": [v.x, v.y],
                "scale": s,
                "normalization_ratio": report.ratio,
            })
        res = verify_certificate(cert, instance, tol)
        if res.ok:
            return cert
        last_error = CoverSearchFailed(
            f"certificate failed verification: {res.failure}")
    if last_error is None:
        last_error = NoUnionDirection("no usable direction triple")
    raise last_error


def pierce_cw_one_family(instance: ColoredInstance,
                         tol: Tolerance = DEFAULT_TOL) -> PiercingCertificate:
    """Constant width 1 (after normalization), n = 2: at most 3 points for
    one family, via the pentagon decomposition covered by body translates."""
    _require_translates(instance)
    if instance.n != 2:
        raise ValidationError("this pipeline needs exactly 2 families")
    report = normalize_inner_outer(instance.body, "constant_width")
    center = _chebyshev_center_of(report)
    s = report.transform.scale
    body = instance.body

    def gadget_for(ta: float, mirrored: bool):
        rot_body = TransformedBody(body, rotation=ta, scale=s, center=center)
        gadget = _pentagon_body_cover_cached(rot_body, mirrored, tol)
        return [piece.anchor for piece in gadget.pieces]

    return _pierce_pentagon_pipeline(instance, "cw3", report, gadget_for, tol)


def pierce_near_disk_one_family(instance: ColoredInstance,
                                tol: Tolerance = DEFAULT_TOL) -> PiercingCertificate:
    """Near-disk gate (ratio <= 1.1178), n = 2: at most 3 points via the
    three-circumdisk pentagon cover at the normalized inner radius."""
    _require_translates(instance)
    if instance.n != 2:
        raise ValidationError("this pipeline needs exactly 2 families")
    report = normalize_inner_outer(instance.body, "near_disk")
    r_n = report.inner.radius
    gadget = pentagon_three_circle_cover(r_n, tol)
    centers = [piece.disk.center for piece in gadget.pieces]

    def gadget_for(_ta: float, _mirrored: bool):
        return centers

    return _pierce_pentagon_pipeline(instance, "neardisk3", report,
                                     gadget_for, tol)


def pierce_general_8(instance: ColoredInstance,
                     tol: Tolerance = DEFAULT_TOL) -> PiercingCertificate:
    """Quarter/half disk gate (ratio <= 2), n = 2: at most 8 points via the
    eight-disk pentagon cover."""
    _require_translates(instance)
    if instance.n != 2:
        raise ValidationError("this pipeline needs exactly 2 families")
    report = normalize_inner_outer(instance.body, "john")
    if report.ratio > 2.0 + tol.eps_geom:
        raise NotNearDisk(
            f"ratio {report.ratio:.4f} > 2: no concentric 1/4 and 1/2 disks")
    # rescale so the outer disk has radius 1/2
    s_extra = 0.5 / report.outer.radius
    s = report.transform.scale * s_extra
    report = NormalizationReport(
        inner=Disk(Point(0.0, 0.0), report.inner.radius * s_extra),
        outer=Disk(Point(0.0, 0.0), 0.5),
        ratio=report.ratio,
        transform=type(report.transform)(s, report.transform.offset * s_extra),
        mode="john",
    )
    gadget = pentagon_eight_disk_cover(0.25)
    centers = [piece.disk.center for piece in gadget.pieces]

    def gadget_for(_ta: float, _mirrored: bool):
        return centers

    return _pierce_pentagon_pipeline(instance, "general8", report,
                                     gadget_for, tol)
