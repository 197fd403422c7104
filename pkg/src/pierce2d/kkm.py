"""Chord-pair search over the 3-simplex.

Each simplex point x maps to four circle points (prefix sums of x as turns)
and two chords; the chords cut the unit disk into at most four regions, one
per circle arc.  A grid vertex either certifies two crossing transversal
lines, or gets labeled by an occupied region; a fully labeled subsimplex of
the edgewise (staircase/Kuhn) subdivision yields a piercing-point candidate.
Certificates are verified against the original sets before being returned,
so subdivision error can never leak into an output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bodies import ConvexPolygon, polygons_intersect, translates_intersect
from .errors import HypothesisViolation
from .geom import DEFAULT_TOL, Direction, Line, Point, Tolerance, min_enclosing_disk
from .instances import ColoredInstance

TWO_PI = 2.0 * math.pi

_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


@dataclass(frozen=True)
class SimplexPoint:
    coords: tuple  # (x1, x2, x3, x4)

    def __post_init__(self):
        c = tuple(float(v) for v in self.coords)
        if len(c) != 4:
            raise ValueError("need 4 coordinates")
        if any(v < -1e-12 for v in c):
            raise ValueError(f"negative coordinate in {c}")
        if abs(sum(c) - 1.0) > 1e-12:
            raise ValueError(f"coordinates of {c} do not sum to 1")
        object.__setattr__(self, "coords", c)

    def prefix_sums(self) -> tuple:
        s1 = self.coords[0]
        s2 = s1 + self.coords[1]
        s3 = s2 + self.coords[2]
        return (s1, s2, s3, 1.0)


def _circle_point(turns: float) -> Point:
    return Point(math.cos(TWO_PI * turns), math.sin(TWO_PI * turns))


def _line_through(a: Point, b: Point) -> Line:
    v = b - a
    n = v.perp()
    ln = n.norm()
    u = Point(n.x / ln, n.y / ln)
    return Line(Direction(math.atan2(u.y, u.x)), a.dot(u))


_DEGENERATE_CHORD = 1e-12


@dataclass(frozen=True)
class ChordConfig:
    """Four circle points, the two chords and their crossing.

    chord1 joins f1 and f3, chord2 joins f2 and f4; f4 is always (1, 0).
    Degenerate chords (coinciding endpoints) carry line=None."""

    points: tuple            # (f1, f2, f3, f4)
    line1: Optional[Line]
    line2: Optional[Line]
    crossing: Optional[Point]
    arc_bounds: tuple        # five angles 0 = a0 <= a1 <= ... <= a4 = 2*pi


def chords(x: SimplexPoint) -> ChordConfig:
    s = x.prefix_sums()
    f = tuple(_circle_point(t) for t in s)
    angles = (0.0,) + tuple(TWO_PI * t for t in s)
    line1 = None if f[0].dist(f[2]) < _DEGENERATE_CHORD else _line_through(f[0], f[2])
    line2 = None if f[1].dist(f[3]) < _DEGENERATE_CHORD else _line_through(f[1], f[3])
    crossing = None
    if line1 is not None and line2 is not None:
        from .geom import line_intersect

        crossing = line_intersect(line1, line2)
    return ChordConfig(f, line1, line2, crossing, angles)


@dataclass(frozen=True)
class RegionOccupancy:
    """Per-region tuple of set indices fully contained in the open region."""

    occupants: tuple  # four tuples of indices into the given set list


def _region_signs(cfg: ChordConfig):
    """For each region i: required sign w.r.t. each nondegenerate chord, or
    None when the arc is empty.  Signs come from the arc midpoint."""
    out = []
    for i in range(4):
        a, b = cfg.arc_bounds[i], cfg.arc_bounds[i + 1]
        if b - a < 1e-12:
            out.append(None)
            continue
        mid = Point(math.cos((a + b) / 2.0), math.sin((a + b) / 2.0))
        signs = []
        usable = True
        for line in (cfg.line1, cfg.line2):
            if line is None:
                signs.append(0)
                continue
            d = line.signed_dist(mid)
            if abs(d) < 1e-12:
                usable = False
                break
            signs.append(1 if d > 0 else -1)
        out.append(tuple(signs) if usable else None)
    return out


def _set_side(poly: ConvexPolygon, line: Optional[Line], eps: float) -> int:
    """+1/-1 when every vertex is strictly beyond eps on one side, else 0."""
    if line is None:
        return 0
    lo = math.inf
    hi = -math.inf
    for v in poly.vertices:
        d = line.signed_dist(v)
        lo = min(lo, d)
        hi = max(hi, d)
    if lo > eps:
        return 1
    if hi < -eps:
        return -1
    return 0


def classify_regions(x: SimplexPoint, sets: Sequence[ConvexPolygon],
                     tol: Tolerance = DEFAULT_TOL) -> RegionOccupancy:
    """Region membership: every vertex strictly on the arc side of both
    chords (eps margin) and inside the unit disk."""
    cfg = chords(x)
    signs = _region_signs(cfg)
    eps = tol.eps_geom
    occupants = [[] for _ in range(4)]
    for k, poly in enumerate(sets):
        if any(v.norm() > 1.0 + eps for v in poly.vertices):
            continue
        s1 = _set_side(poly, cfg.line1, eps)
        s2 = _set_side(poly, cfg.line2, eps)
        if cfg.line1 is not None and s1 == 0:
            continue
        if cfg.line2 is not None and s2 == 0:
            continue
        for i in range(4):
            req = signs[i]
            if req is None:
                continue
            ok1 = cfg.line1 is None or s1 == req[0]
            ok2 = cfg.line2 is None or s2 == req[1]
            if ok1 and ok2:
                occupants[i].append(k)
                break
    return RegionOccupancy(tuple(tuple(o) for o in occupants))


def _lines_transversal(cfg: ChordConfig, sets: Sequence[ConvexPolygon],
                       eps: float) -> bool:
    """Whether every set meets the union of the (nondegenerate) chord lines."""
    if cfg.line1 is None and cfg.line2 is None:
        return False
    for poly in sets:
        hit = False
        for line in (cfg.line1, cfg.line2):
            if line is not None and _set_side(poly, line, eps) == 0:
                hit = True
                break
        if not hit:
            return False
    return True


@dataclass(frozen=True)
class KkmCertificate:
    """Outcome of the search: two crossing lines, one piercing point for the
    union without family `family`, or an honest non-result."""

    variant: str                 # "two_lines" | "pierce_point" | "unresolved"
    lines: Optional[tuple] = None
    family: Optional[int] = None
    point: Optional[Point] = None
    depth: int = 0
    gap: Optional[float] = None
    occupant_sets: Optional[tuple] = None  # (family, member) ids, two_lines-free

    @property
    def resolved(self) -> bool:
        return self.variant != "unresolved"


# ---------------------------------------------------------------------------
# the subdivision grid


class _SimplexGrid:
    """Lex-ordered lattice {0 <= s1 <= s2 <= s3 <= m} with O(1) ranking."""

    def __init__(self, m: int):
        self.m = m
        counts = np.arange(m + 1, 0, -1)               # pairs with s2 = t
        self.pair_start = np.concatenate(([0], np.cumsum(counts)))
        self.total_pairs = int(self.pair_start[-1])
        block = self.total_pairs - self.pair_start[:-1]
        self.block_start = np.concatenate(([0], np.cumsum(block)))
        self.size = int(self.block_start[-1])

    def vertices(self) -> np.ndarray:
        m = self.m
        a2 = np.repeat(np.arange(m + 1), np.arange(m + 1, 0, -1))
        a3 = np.concatenate([np.arange(t, m + 1) for t in range(m + 1)])
        chunks = []
        for s1 in range(m + 1):
            lo = int(self.pair_start[s1])
            n = self.total_pairs - lo
            chunk = np.empty((n, 3), dtype=np.int64)
            chunk[:, 0] = s1
            chunk[:, 1] = a2[lo:]
            chunk[:, 2] = a3[lo:]
            chunks.append(chunk)
        return np.concatenate(chunks, axis=0)

    def rank(self, s: np.ndarray) -> np.ndarray:
        s1, s2, s3 = s[..., 0], s[..., 1], s[..., 2]
        return (self.block_start[s1]
                + self.pair_start[s2] - self.pair_start[s1]
                + (s3 - s2))


def _label_vertices(grid: _SimplexGrid, S: np.ndarray, poly_data, eps: float,
                    chunk: int = 200_000):
    """Vectorized labeling of nondegenerate vertices.

    Returns (labels, occupant, transversal, needs_scalar) arrays; degenerate
    vertices (any coinciding circle points) are left for the scalar path.
    """
    m = grid.m
    n_v = S.shape[0]
    labels = np.full(n_v, -1, dtype=np.int8)
    occupant = np.full(n_v, -1, dtype=np.int16)
    transversal = np.zeros(n_v, dtype=bool)
    deg1 = (S[:, 0] == S[:, 2]) | ((S[:, 0] == 0) & (S[:, 2] == m))
    deg2 = (S[:, 1] == 0) | (S[:, 1] == m)
    needs_scalar = deg1 | deg2

    idx_all = np.nonzero(~needs_scalar)[0]
    for at in range(0, idx_all.size, chunk):
        idx = idx_all[at:at + chunk]
        s = S[idx].astype(np.float64) / m
        ang = TWO_PI * s
        f1 = np.stack([np.cos(ang[:, 0]), np.sin(ang[:, 0])], axis=1)
        f2 = np.stack([np.cos(ang[:, 1]), np.sin(ang[:, 1])], axis=1)
        f3 = np.stack([np.cos(ang[:, 2]), np.sin(ang[:, 2])], axis=1)
        f4 = np.zeros_like(f1)
        f4[:, 0] = 1.0

        def line_of(a, b):
            e = b - a
            n = np.stack([-e[:, 1], e[:, 0]], axis=1)
            n /= np.linalg.norm(n, axis=1, keepdims=True)
            c = np.einsum("ij,ij->i", n, a)
            return n, c

        n1, c1 = line_of(f1, f3)
        n2, c2 = line_of(f2, f4)

        k_sets = len(poly_data)
        side1 = np.zeros((len(idx), k_sets), dtype=np.int8)
        side2 = np.zeros((len(idx), k_sets), dtype=np.int8)
        for kk, (vx, vy, _fam) in enumerate(poly_data):
            for (n_, c_, side) in ((n1, c1, side1), (n2, c2, side2)):
                d = np.outer(n_[:, 0], vx) + np.outer(n_[:, 1], vy) - c_[:, None]
                dmin = d.min(axis=1)
                dmax = d.max(axis=1)
                side[:, kk] = np.where(dmin > eps, 1,
                                       np.where(dmax < -eps, -1, 0))
        miss_both = (side1 != 0) & (side2 != 0)
        transversal[idx] = ~miss_both.any(axis=1)
        set_code = (side1 > 0).astype(np.int8) + 2 * (side2 > 0).astype(np.int8)

        # region codes from arc midpoints
        bounds = np.concatenate([np.zeros((len(idx), 1)), ang,
                                 np.full((len(idx), 1), TWO_PI)], axis=1)
        bounds[:, 4] = TWO_PI  # f4 angle
        arc_nonempty = np.stack([
            S[idx, 0] > 0,
            S[idx, 1] > S[idx, 0],
            S[idx, 2] > S[idx, 1],
            S[idx, 2] < m,
        ], axis=1)
        lab = np.full(len(idx), -1, dtype=np.int8)
        occ = np.full(len(idx), -1, dtype=np.int16)
        for i in range(4):
            mid = (bounds[:, i] + bounds[:, i + 1]) / 2.0
            px, py = np.cos(mid), np.sin(mid)
            r1 = n1[:, 0] * px + n1[:, 1] * py - c1
            r2 = n2[:, 0] * px + n2[:, 1] * py - c2
            code_i = (r1 > 0).astype(np.int8) + 2 * (r2 > 0).astype(np.int8)
            match = miss_both & (set_code == code_i[:, None]) & arc_nonempty[:, i:i + 1]
            has = match.any(axis=1)
            first = np.argmax(match, axis=1)
            take = has & (lab < 0)
            lab[take] = i
            occ[take] = first[take]
        labels[idx] = lab
        occupant[idx] = occ
        needs_scalar[idx] |= (lab < 0) & ~transversal[idx]
    return labels, occupant, transversal, needs_scalar


def _scalar_vertex(s_tuple, m: int, polys, eps: float):
    """(transversal, cfg, label, occupant) for one lattice vertex."""
    s1, s2, s3 = (int(v) for v in s_tuple)
    x = SimplexPoint((s1 / m, (s2 - s1) / m, (s3 - s2) / m, (m - s3) / m))
    cfg = chords(x)
    if _lines_transversal(cfg, polys, eps):
        return True, cfg, -1, -1
    occ = classify_regions(x, polys, Tolerance(eps, max(eps, 1e-7)))
    for i in range(4):
        if occ.occupants[i]:
            return False, cfg, i, occ.occupants[i][0]
    return False, cfg, -1, -1


def _chord_lines_original(s_tuple, m: int, inv_scale: float, center: Point):
    """Chord lines at a lattice vertex, mapped back to original coordinates."""
    s1, s2, s3 = (int(v) for v in s_tuple)
    x = SimplexPoint((s1 / m, (s2 - s1) / m, (s3 - s2) / m, (m - s3) / m))
    cfg = chords(x)
    out = []
    for line in (cfg.line1, cfg.line2):
        if line is None:
            continue
        u = line.normal.unit()
        out.append(Line(line.normal,
                        line.offset * inv_scale + center.dot(u)))
    if not out:
        return None
    if len(out) == 1:
        out = [out[0], out[0]]
    return (out[0], out[1])


# ---------------------------------------------------------------------------
# verification helpers (always against the original instance)


def _line_meets_set(s, line: Line, eps: float) -> bool:
    lo = -s.support(line.normal.opposite())
    hi = s.support(line.normal)
    return lo - eps <= line.offset <= hi + eps


def verify_two_lines(instance: ColoredInstance, lines, tol: Tolerance = DEFAULT_TOL):
    """Every set must meet line1 or line2; returns (ok, first_failure)."""
    for i, mjdx, s in instance.all_sets():
        if not any(_line_meets_set(s, ln, tol.eps_geom) for ln in lines):
            return False, (i, mjdx)
    return True, None


def verify_pierce_point(instance: ColoredInstance, family: int, p: Point,
                        tol: Tolerance = DEFAULT_TOL):
    """Every set outside `family` must contain p; returns (ok, first_failure)."""
    for i, mjdx, s in instance.sets_excluding(family):
        if not s.contains_point(p, tol.eps_geom):
            return False, (i, mjdx)
    return True, None


def _sets_disjoint(instance: ColoredInstance, ids, tol: Tolerance) -> bool:
    sets = list(instance.all_sets())
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            sa = sets[ids[a]][2]
            sb = sets[ids[b]][2]
            if instance.is_translate_mode:
                if translates_intersect(instance.body, sa.shift, sb.shift, tol):
                    return False
            else:
                if polygons_intersect(sa, sb, tol.eps_geom):
                    return False
    return True


def _pierce_gap(instance: ColoredInstance, p: Point, proxy_polys) -> float:
    """min over j of the worst outside-distance of p over the sets of the
    union without family j (0 means some scope is pierced)."""
    per_family_worst = {}
    for (i, _mj, _s), poly in zip(instance.all_sets(), proxy_polys):
        d = max(0.0, -poly.signed_depth(p))
        per_family_worst.setdefault(i, []).append(d)
    best = math.inf
    for j in range(instance.n):
        worst = 0.0
        for i, ds in per_family_worst.items():
            if i == j:
                continue
            worst = max(worst, max(ds))
        best = min(best, worst)
    return best


# ---------------------------------------------------------------------------
# the search


def kkm_search(instance: ColoredInstance, max_depth: int = 8,
               tol: Tolerance = DEFAULT_TOL,
               polygon_samples: int = 64) -> KkmCertificate:
    """Search subdivision depths 1..max_depth (order m = 2^depth).

    Per depth: scan lattice vertices in lex order; any vertex whose chord
    lines meet every set settles the two-line branch.  Otherwise label every
    vertex with an occupied region index (a Sperner labeling), scan the
    staircase cells for a fully labeled one, and try its barycenter crossing
    as a piercing point.  Candidates from the labeled four occupying sets fix
    the excluded family; if those checks fail, every family is tried.  All
    claims are re-verified on the original sets; if nothing verifies, the
    result is an honest unresolved report with the best piercing gap seen.
    """
    eps = tol.eps_geom
    proxy = instance.as_polygons(polygon_samples)
    proxy_polys = [s for _, _, s in proxy.all_sets()]
    fam_of = [i for i, _, _ in proxy.all_sets()]
    ids = [(i, mjdx) for i, mjdx, _ in proxy.all_sets()]

    med = min_enclosing_disk([v for poly in proxy_polys for v in poly.vertices])
    scale = 0.995 / max(med.radius, 1e-12)
    center = med.center
    scaled = [ConvexPolygon([(v - center) * scale for v in poly.vertices])
              for poly in proxy_polys]
    poly_np = [
        (np.array([v.x for v in poly.vertices]),
         np.array([v.y for v in poly.vertices]),
         fam_of[k])
        for k, poly in enumerate(scaled)
    ]

    best_gap = math.inf
    depth_reached = 0
    for depth in range(1, max_depth + 1):
        m = 2 ** depth
        depth_reached = depth
        grid = _SimplexGrid(m)
        S = grid.vertices()
        labels, occupant, transversal, needs_scalar = _label_vertices(
            grid, S, poly_np, eps)

        scalar_idx = np.nonzero(needs_scalar)[0]
        for vi in scalar_idx:
            is_t, _cfg, lab, occ = _scalar_vertex(S[vi], m, scaled, eps)
            transversal[vi] = is_t
            labels[vi] = lab
            occupant[vi] = occ

        t_idx = np.nonzero(transversal)[0]
        if t_idx.size:
            vi = int(t_idx[0])
            lines = _chord_lines_original(S[vi], m, 1.0 / scale, center)
            if lines is not None:
                ok, _bad = verify_two_lines(instance, lines, tol)
                if ok:
                    return KkmCertificate("two_lines", lines=lines, depth=depth)
            # inscribed proxies make failure here unreachable; refine honestly
            continue

        bad = np.nonzero((labels < 0) & ~transversal)[0]
        if bad.size:
            # a vertex that is neither transversal nor labelable: give up on
            # this depth and refine
            continue

        cert = _scan_cells(instance, grid, S, labels, occupant, m, scale,
                           center, ids, fam_of, proxy_polys, tol)
        if isinstance(cert, KkmCertificate):
            return KkmCertificate(cert.variant, lines=cert.lines,
                                  family=cert.family, point=cert.point,
                                  depth=depth, gap=cert.gap,
                                  occupant_sets=cert.occupant_sets)
        best_gap = min(best_gap, cert)
    return KkmCertificate("unresolved", depth=depth_reached,
                          gap=None if math.isinf(best_gap) else best_gap)


def _scan_cells(instance, grid, S, labels, occupant, m, scale, center,
                ids, fam_of, proxy_polys, tol):
    """Iterate staircase cells in lex order; return a verified certificate or
    the best piercing gap (float) over all fully labeled cells."""
    eps = tol.eps_geom
    best_gap = math.inf
    found_full = False
    E = np.eye(3, dtype=np.int64)
    incr = []
    for perm in _PERMS:
        steps = np.zeros((3, 3), dtype=np.int64)
        steps[0] = E[perm[0]]
        steps[1] = steps[0] + E[perm[1]]
        steps[2] = steps[1] + E[perm[2]]
        incr.append(steps)

    for b1 in range(m):
        b2, b3 = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        base = np.stack([np.full(b2.size, b1), b2.ravel(), b3.ravel()], axis=1)
        base_ok = (base[:, 0] <= base[:, 1]) & (base[:, 1] <= base[:, 2])
        cands = []
        for p_i, steps in enumerate(incr):
            v0 = base
            v1 = base + steps[0]
            v2 = base + steps[1]
            v3 = base + steps[2]
            ok = base_ok.copy()
            for v in (v1, v2, v3):
                ok &= (v[:, 0] <= v[:, 1]) & (v[:, 1] <= v[:, 2])
            if not ok.any():
                continue
            rows = np.nonzero(ok)[0]
            l0 = labels[grid.rank(v0[rows])]
            l1 = labels[grid.rank(v1[rows])]
            l2 = labels[grid.rank(v2[rows])]
            l3 = labels[grid.rank(v3[rows])]
            mask = ((1 << l0) | (1 << l1) | (1 << l2) | (1 << l3)) == 15
            for r in np.nonzero(mask)[0]:
                row = rows[r]
                cands.append((int(row) * 6 + p_i,
                              (v0[row], v1[row], v2[row], v3[row])))
        cands.sort(key=lambda t: t[0])
        for _key, verts in cands:
            found_full = True
            out = _try_cell(instance, grid, labels, occupant, verts, m, scale,
                            center, ids, fam_of, proxy_polys, tol)
            if isinstance(out, KkmCertificate):
                return out
            best_gap = min(best_gap, out)
    if not found_full:
        # Sperner parity says this cannot happen for a complete labeling
        raise RuntimeError("no fully labeled cell despite complete labeling")
    return best_gap


def _try_cell(instance, grid, labels, occupant, verts, m, scale, center,
              ids, fam_of, proxy_polys, tol):
    s_bar = sum(np.asarray(v, dtype=np.float64) for v in verts) / (4.0 * m)
    x = SimplexPoint((s_bar[0], s_bar[1] - s_bar[0], s_bar[2] - s_bar[1],
                      1.0 - s_bar[2]))
    cfg = chords(x)
    if cfg.crossing is None:
        return math.inf
    p = cfg.crossing * (1.0 / scale) + center

    # principled path: the four occupying sets, pairwise disjoint, one family
    occ_ids = []
    for v in verts:
        r = int(grid.rank(np.asarray(v)))
        occ_ids.append((int(labels[r]), int(occupant[r])))
    occ_ids.sort()
    occ_sets = [o for _, o in occ_ids]
    if len(set(occ_sets)) == 4 and _sets_disjoint(instance, occ_sets, tol):
        fams = {fam_of[o] for o in occ_sets}
        if len(fams) > 1:
            by_family = {}
            for o in occ_sets:
                by_family.setdefault(fam_of[o], o)
            (fa, oa), (fb, ob) = list(by_family.items())[:2]
            raise HypothesisViolation(
                "disjoint occupying sets straddle families "
                f"{fa} and {fb}",
                witnesses=(ids[oa], ids[ob]),
            )
        j = fams.pop()
        ok, _bad = verify_pierce_point(instance, j, p, tol)
        if ok:
            return KkmCertificate(
                "pierce_point", family=j, point=p,
                occupant_sets=tuple(ids[o] for o in occ_sets))
    # fallback: the candidate point may still pierce some scope
    for j in range(instance.n):
        ok, _bad = verify_pierce_point(instance, j, p, tol)
        if ok:
            return KkmCertificate("pierce_point", family=j, point=p)
    return _pierce_gap(instance, p, proxy_polys)
