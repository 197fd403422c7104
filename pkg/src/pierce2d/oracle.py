"""Independent brute-force ground truth.

Exact piercing numbers on small instances come from a candidate-point
argument: some optimal solution uses only polygon vertices, pairwise edge
crossings, or an interior point of a discovered pairwise intersection, so an
exact set cover over those candidates is exact for the instance.  Everything
the pipelines emit is cross-checked against these routines.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .bodies import ConvexPolygon
from .errors import BudgetExceeded
from .geom import DEFAULT_TOL, Direction, Line, Point, Tolerance
from .transversal import direction_transversal

TWO_PI = 2.0 * math.pi

MAX_ORACLE_SETS = 12
MAX_ORACLE_K = 4
_NODE_BUDGET = 500_000


@dataclass(frozen=True)
class PiercingOracleResult:
    """k: minimal piercing count (None when every cover needs more than
    k_max); exhausted: the search ran to completion rather than hitting the
    node budget."""

    k: Optional[int]
    points: tuple
    exhausted: bool


def _segment_intersections(a1: Point, a2: Point, b1: Point, b2: Point):
    d1 = a2 - a1
    d2 = b2 - b1
    den = d1.cross(d2)
    if abs(den) < 1e-14:
        return []
    t = (b1 - a1).cross(d2) / den
    u = (b1 - a1).cross(d1) / den
    if -1e-12 <= t <= 1.0 + 1e-12 and -1e-12 <= u <= 1.0 + 1e-12:
        return [a1 + d1 * t]
    return []


def _pair_overlap_point(p: ConvexPolygon, q: ConvexPolygon) -> Optional[Point]:
    """An interior-ish point of the intersection, by clipping p with q."""
    region = p
    for a, b in q.edges():
        e = b - a
        n = Point(e.y / e.norm(), -e.x / e.norm())
        region = region.clip_halfplane(n, n.dot(a))
        if region is None:
            return None
    return region.centroid()


def piercing_candidates(sets: Sequence[ConvexPolygon],
                        tol: Tolerance = DEFAULT_TOL):
    """Candidate piercing points: vertices, pairwise edge crossings, and one
    interior point per nonempty pairwise intersection."""
    pts = []
    for poly in sets:
        pts.extend(poly.vertices)
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            for a1, a2 in sets[i].edges():
                for b1, b2 in sets[j].edges():
                    pts.extend(_segment_intersections(a1, a2, b1, b2))
            mid = _pair_overlap_point(sets[i], sets[j])
            if mid is not None:
                pts.append(mid)
    seen = {}
    for p in pts:
        key = (round(p.x, 9), round(p.y, 9))
        if key not in seen:
            seen[key] = p
    return list(seen.values())


def exact_piercing_number(sets: Sequence[ConvexPolygon], k_max: int = 4,
                          tol: Tolerance = DEFAULT_TOL) -> PiercingOracleResult:
    """Minimal number of points piercing every set, proven by exhaustive
    branch and bound over arrangement candidates."""
    if len(sets) > MAX_ORACLE_SETS:
        raise BudgetExceeded(f"{len(sets)} sets exceed the oracle budget")
    if k_max > MAX_ORACLE_K:
        raise BudgetExceeded(f"k_max {k_max} exceeds the oracle budget")
    n = len(sets)
    if n == 0:
        return PiercingOracleResult(0, (), True)
    full = (1 << n) - 1

    cands = piercing_candidates(sets, tol)
    masks = []
    for p in cands:
        m = 0
        for i, poly in enumerate(sets):
            if poly.contains_point(p, tol.eps_geom):
                m |= 1 << i
        if m:
            masks.append((m, p))
    # drop dominated candidates (mask a strict subset of another)
    masks.sort(key=lambda t: -bin(t[0]).count("1"))
    kept = []
    for m, p in masks:
        if any(m | km == km for km, _ in kept):
            continue
        kept.append((m, p))
    masks = kept

    covers_set = [[] for _ in range(n)]
    for ci, (m, _p) in enumerate(masks):
        for i in range(n):
            if m >> i & 1:
                covers_set[i].append(ci)
    if any(not c for c in covers_set):
        # some set contains no candidate: cannot happen for valid polygons
        return PiercingOracleResult(None, (), True)

    nodes = 0
    budget_hit = False

    def dfs(covered: int, chosen, limit: int):
        nonlocal nodes, budget_hit
        nodes += 1
        if nodes > _NODE_BUDGET:
            budget_hit = True
            return None
        if covered == full:
            return list(chosen)
        if len(chosen) >= limit:
            return None
        target = None
        best_len = 1 << 30
        for i in range(n):
            if covered >> i & 1:
                continue
            if len(covers_set[i]) < best_len:
                best_len = len(covers_set[i])
                target = i
        for ci in covers_set[target]:
            m, p = masks[ci]
            got = dfs(covered | m, chosen + [ci], limit)
            if got is not None:
                return got
        return None

    for k in range(1, k_max + 1):
        got = dfs(0, [], k)
        if budget_hit:
            return PiercingOracleResult(None, (), False)
        if got is not None:
            return PiercingOracleResult(
                k, tuple(masks[ci][1] for ci in got), True)
    return PiercingOracleResult(None, (), not budget_hit)


# ---------------------------------------------------------------------------
# axis-parallel boxes


def boxes_common_point(boxes: Sequence[tuple]) -> Optional[Point]:
    """Boxes are (x0, y0, x1, y1); per-axis interval intersection."""
    if not boxes:
        return None
    x_lo = max(b[0] for b in boxes)
    y_lo = max(b[1] for b in boxes)
    x_hi = min(b[2] for b in boxes)
    y_hi = min(b[3] for b in boxes)
    if x_lo <= x_hi and y_lo <= y_hi:
        return Point((x_lo + x_hi) / 2.0, (y_lo + y_hi) / 2.0)
    return None


def boxes_pairwise_intersecting(boxes: Sequence[tuple]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1]:
                return False
    return True


# ---------------------------------------------------------------------------
# brute-force line transversal


def brute_line_transversal(sets: Sequence[ConvexPolygon], angle_samples: int = 360,
                           tol: Tolerance = DEFAULT_TOL) -> Optional[Line]:
    """Try every event angle (cross-set vertex-pair normals) plus a uniform
    grid; return any verified transversal line."""
    angles = set()
    for i in range(len(sets)):
        for j in range(len(sets)):
            if i == j:
                continue
            for v in sets[i].vertices:
                for w in sets[j].vertices:
                    d = w - v
                    if d.norm() > 1e-14:
                        angles.add((math.atan2(d.y, d.x) + math.pi / 2.0) % math.pi)
    angles.update(math.pi * k / angle_samples for k in range(angle_samples))
    for theta in sorted(angles):
        line = direction_transversal(sets, Direction(theta), tol)
        if line is not None:
            return line
    return None


# ---------------------------------------------------------------------------
# conjecture fuzzing for circle families


@dataclass(frozen=True)
class FuzzReport:
    seed: int
    trials: int
    sizes: tuple
    per_trial: tuple          # (trial, per-family piercing number or None)
    worst_trial: int
    worst_instance: dict      # serialized instance document
    worst_piercing: tuple     # per-family numbers of the worst trial
    violations: tuple         # trial indices where every family needs > 4
    status: str               # "no-violation" or "violation"


def _circles_to_polygons(circles, samples=64):
    out = []
    for c, r in circles:
        pts = [Point(c.x + r * math.cos(TWO_PI * i / samples),
                     c.y + r * math.sin(TWO_PI * i / samples))
               for i in range(samples)]
        out.append(ConvexPolygon(pts))
    return out


def fuzz_colorful_circles(seed: int, trials: int, sizes: Sequence[int],
                          tol: Tolerance = DEFAULT_TOL) -> FuzzReport:
    """Random circle families with the cross-intersection hypothesis enforced
    by construction; flags any trial where every family needs more than 4
    piercing points (circles enter the oracle as inscribed 64-gons)."""
    sizes = tuple(int(v) for v in sizes)
    per_trial = []
    violations = []
    worst_score = -1.0
    worst_trial = 0
    worst_instance = {}
    worst_piercing = ()
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        fams = []
        for k in sizes:
            fam = []
            for _ in range(k):
                c = Point(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
                r = rng.uniform(0.5, 1.0)
                fam.append((c, r))
            fams.append(fam)
        # repair: pull cross pairs together until centers are within r1 + r2
        for _ in range(100):
            moved = False
            for fi in range(len(fams)):
                for fj in range(fi + 1, len(fams)):
                    for a in range(len(fams[fi])):
                        for b in range(len(fams[fj])):
                            (ca, ra) = fams[fi][a]
                            (cb, rb) = fams[fj][b]
                            gap = ca.dist(cb) - (ra + rb)
                            if gap > -1e-9:
                                mid = (ca + cb) * 0.5
                                v = cb - ca
                                scale = max(0.0, (ra + rb - 1e-6) / max(v.norm(), 1e-12))
                                half = v * (0.5 * scale)
                                fams[fi][a] = (mid - half, ra)
                                fams[fj][b] = (mid + half, rb)
                                moved = True
            if not moved:
                break
        ks = []
        for fam in fams:
            res = exact_piercing_number(_circles_to_polygons(fam), 4, tol)
            ks.append(res.k)
        per_trial.append((t, tuple(ks)))
        if all(k is None for k in ks):
            violations.append(t)
        score = min(5.0 if k is None else float(k) for k in ks)
        if score > worst_score:
            worst_score = score
            worst_trial = t
            worst_piercing = tuple(ks)
            worst_instance = {
                "version": "pierce2d-1",
                "body": None,
                "families": [
                    [{"center": [c.x, c.y], "radius": r} for c, r in fam]
                    for fam in fams
                ],
                "kind": "circles",
            }
    return FuzzReport(
        seed=seed, trials=trials, sizes=sizes, per_trial=tuple(per_trial),
        worst_trial=worst_trial, worst_instance=worst_instance,
        worst_piercing=worst_piercing, violations=tuple(violations),
        status="violation" if violations else "no-violation",
    )
