"""Directional line-transversal machinery.

Every question here reduces to projections: a family admits a line with
normal u exactly when its projection intervals onto u share a point.  The
circle of directions is cut into cells at event angles (projection-order
changes), colored per family, and swept for the union-transversal /
pairwise-intersecting dichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import HypothesisViolation, NoUnionDirection
from .geom import DEFAULT_TOL, Direction, Line, Point, Tolerance
from .instances import ColoredInstance

PI = math.pi


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi + DEFAULT_TOL.eps_geom:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    def intersects(self, other: "Interval", eps: float = 0.0) -> bool:
        return self.lo <= other.hi + eps and other.lo <= self.hi + eps


def projection_interval(s, d: Direction) -> Interval:
    """Projection of a convex set onto the axis with direction d:
    [-h(-d), h(d)] as scalars along u(d)."""
    return Interval(-s.support(d.opposite()), s.support(d))


def direction_transversal(family: Sequence, d: Direction,
                          tol: Tolerance = DEFAULT_TOL) -> Optional[Line]:
    """A line with normal d meeting every set, or None.

    When the projection intervals share a point the witness offset is the
    midpoint of the common subinterval.
    """
    lo = -math.inf
    hi = math.inf
    for s in family:
        iv = projection_interval(s, d)
        lo = max(lo, iv.lo)
        hi = min(hi, iv.hi)
    if lo <= hi + tol.eps_geom:
        return Line(d, (lo + hi) / 2.0)
    return None


def _separated_pair(family: Sequence, d: Direction, tol: Tolerance):
    """Indices (a, b) of two members with disjoint projections, or None."""
    ivs = [projection_interval(s, d) for s in family]
    a = max(range(len(ivs)), key=lambda i: ivs[i].lo)
    b = min(range(len(ivs)), key=lambda i: ivs[i].hi)
    if ivs[a].lo > ivs[b].hi + tol.eps_geom:
        return a, b
    return None


@dataclass(frozen=True)
class DirectionColoring:
    """Colors over [0, pi): family i colors angle t when a line with normal
    direction t is transversal to family i.

    events: sorted cell boundaries; cell k spans [events[k], events[k+1]]
    (the last cell wraps to events[0] + pi).  Cell color sets are sampled at
    midpoints and validated against both endpoints; endpoint angles may carry
    extra colors and are deliberately shared by both adjacent cells.
    """

    instance: ColoredInstance
    events: tuple
    cell_colors: tuple       # tuple of frozensets of family indices
    witnesses: dict          # (cell_index, family) -> Line
    tol: Tolerance

    @property
    def n_cells(self) -> int:
        return len(self.events)

    def cell_span(self, k: int):
        a = self.events[k]
        b = self.events[(k + 1) % len(self.events)]
        if k == len(self.events) - 1:
            b = self.events[0] + PI
        return a, b

    def cell_midpoint(self, k: int) -> float:
        a, b = self.cell_span(k)
        return (a + b) / 2.0

    def colors_at(self, theta: float) -> frozenset:
        """Exact color set of an angle (recomputed, not cached)."""
        return colors_at_angle(self.instance, Direction(theta), self.tol)

    def witness_at(self, theta: float, family: int) -> Optional[Line]:
        return direction_transversal(
            self.instance.families[family], Direction(theta), self.tol
        )

    def all_colored_cells(self):
        full = frozenset(range(self.instance.n))
        return [k for k, cs in enumerate(self.cell_colors) if cs == full]


def colors_at_angle(instance: ColoredInstance, d: Direction,
                    tol: Tolerance = DEFAULT_TOL) -> frozenset:
    return frozenset(
        i for i, fam in enumerate(instance.families)
        if direction_transversal(fam, d, tol) is not None
    )


def _check_at_most_one_separated(instance: ColoredInstance, d: Direction,
                                 tol: Tolerance):
    """Raise HypothesisViolation when two families are separated at d."""
    seps = []
    for i, fam in enumerate(instance.families):
        pair = _separated_pair(fam, d, tol)
        if pair is not None:
            seps.append((i, pair))
    if len(seps) >= 2:
        (i, (a, b)), (j, (c, dd)) = seps[0], seps[1]
        raise HypothesisViolation(
            f"families {i} and {j} both have separated pairs at angle "
            f"{d.theta:.6f}",
            direction=d,
            witnesses=((i, a), (i, b), (j, c), (j, dd)),
        )
    return seps[0] if seps else None


def event_angles(instance: ColoredInstance) -> list:
    """Angles in [0, pi) where the projection-interval order can change:
    normals perpendicular to cross-set vertex or shift differences."""
    out = set()

    def add_perp(v: Point):
        if v.norm() < 1e-14:
            return
        t = (math.atan2(v.y, v.x) + PI / 2.0) % PI
        out.add(t)

    if instance.is_translate_mode:
        shifts = [s for fam in instance.shifts() for s in fam]
        for i in range(len(shifts)):
            for j in range(i + 1, len(shifts)):
                add_perp(shifts[j] - shifts[i])
    else:
        sets = [s for _, _, s in instance.all_sets()]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                for v in sets[i].vertices:
                    for w in sets[j].vertices:
                        add_perp(w - v)
    return sorted(out)


def _interval_table(instance: ColoredInstance, angles):
    """Projection intervals of every set over an angle array: (lo, hi) of
    shape (set_count, len(angles)), in all_sets() order."""
    import numpy as np

    from .bodies import support_grid

    arr = np.asarray(angles, dtype=np.float64)
    los, his = [], []
    for _i, _m, s in instance.all_sets():
        his.append(support_grid(s, arr))
        los.append(-support_grid(s, arr + PI))
    return np.array(los), np.array(his)


def _family_slices(instance: ColoredInstance):
    out = []
    at = 0
    for fam in instance.families:
        out.append(slice(at, at + len(fam)))
        at += len(fam)
    return out


def color_circle(instance: ColoredInstance, resolution: int = 180,
                 tol: Tolerance = DEFAULT_TOL) -> DirectionColoring:
    """Build the direction coloring on [0, pi).

    Events are exact order-change angles plus a uniform grid of `resolution`
    angles; each cell is sampled at its midpoint and both endpoints.  Raises
    HypothesisViolation when two families are separated in one direction.
    """
    import numpy as np

    events = set(event_angles(instance))
    events.update((PI * i / resolution) for i in range(resolution))
    events = sorted(events)
    n = instance.n
    n_cells = len(events)

    mids = []
    for k in range(n_cells):
        a = events[k]
        b = events[k + 1] if k + 1 < n_cells else events[0] + PI
        mids.append((a + b) / 2.0)
    angles = np.array(mids + events)
    lo, hi = _interval_table(instance, angles)
    slices = _family_slices(instance)
    colored = np.empty((n, angles.size), dtype=bool)
    offsets = np.empty((n, angles.size))
    for i, sl in enumerate(slices):
        fmax = lo[sl].max(axis=0)
        fmin = hi[sl].min(axis=0)
        colored[i] = fmax <= fmin + tol.eps_geom
        offsets[i] = (fmax + fmin) / 2.0

    uncolored_counts = (~colored).sum(axis=0)
    bad = np.nonzero(uncolored_counts >= 2)[0]
    if bad.size:
        theta = float(angles[bad[0]])
        _check_at_most_one_separated(instance, Direction(theta), tol)
        raise HypothesisViolation(
            f"two families uncolored at angle {theta:.6f}",
            direction=Direction(theta))

    cell_colors = []
    witnesses = {}
    for k in range(n_cells):
        colors = frozenset(int(i) for i in range(n) if colored[i, k])
        for i in colors:
            witnesses[(k, i)] = Line(Direction(mids[k]), float(offsets[i, k]))
        cell_colors.append(colors)
    return DirectionColoring(instance, tuple(events), tuple(cell_colors),
                             witnesses, tol)


# ---------------------------------------------------------------------------
# the dichotomy sweep


@dataclass(frozen=True)
class SweepOutcome:
    """Either one line meets every set of the union, or removing family j
    leaves a pairwise-intersecting union."""

    union_line: Optional[Line]
    pairwise_index: Optional[int]
    warning: Optional[str] = None

    @property
    def is_union_transversal(self) -> bool:
        return self.union_line is not None


_PAIRWISE_VERIFY_LIMIT = 40


def sweep_special_vch(instance: ColoredInstance,
                      resolution: int = 180,
                      tol: Tolerance = DEFAULT_TOL) -> SweepOutcome:
    """Sweep all cells: return a verified union transversal if any direction
    admits one, else the unique separated family index j (with the pairwise
    intersections of the rest verified on small instances)."""
    import numpy as np

    all_sets = [s for _, _, s in instance.all_sets()]
    events = set(event_angles(instance))
    events.update((PI * i / resolution) for i in range(resolution))
    events = sorted(events)

    angle_list = []
    for k in range(len(events)):
        a = events[k]
        b = events[k + 1] if k + 1 < len(events) else events[0] + PI
        angle_list.append((a + b) / 2.0)
    angle_list.extend(events)

    angles = np.array(angle_list)
    lo, hi = _interval_table(instance, angles)
    gmax = lo.max(axis=0)
    gmin = hi.min(axis=0)
    union_ok = gmax <= gmin + tol.eps_geom
    hit = np.nonzero(union_ok)[0]
    if hit.size:
        a = int(hit[0])
        theta = float(angles[a])
        line = Line(Direction(theta), float((gmax[a] + gmin[a]) / 2.0))
        d = Direction(theta)
        for s in all_sets:
            iv = projection_interval(s, d)
            assert iv.lo - tol.eps_geom <= line.offset <= iv.hi + tol.eps_geom
        return SweepOutcome(union_line=line, pairwise_index=None)

    slices = _family_slices(instance)
    n = instance.n
    separated = np.empty((n, angles.size), dtype=bool)
    for i, sl in enumerate(slices):
        separated[i] = lo[sl].max(axis=0) > hi[sl].min(axis=0) + tol.eps_geom
    counts = separated.sum(axis=0)
    bad = np.nonzero(counts >= 2)[0]
    if bad.size:
        _check_at_most_one_separated(instance, Direction(float(angles[bad[0]])), tol)
    none_sep = np.nonzero(counts == 0)[0]
    if none_sep.size:
        # no union point yet no family separated: the extremal interval
        # pair is cross-family, a hypothesis violation
        a = int(none_sep[0])
        ids = list(instance.all_sets())
        wa = int(lo[:, a].argmax())
        wb = int(hi[:, a].argmin())
        raise HypothesisViolation(
            f"cross-family separated pair at angle {float(angles[a]):.6f}",
            direction=Direction(float(angles[a])),
            witnesses=(ids[wa][:2], ids[wb][:2]),
        )
    separated_families = {int(i) for i in range(n) if separated[i].any()}

    warning = None
    j = min(separated_families)
    if len(separated_families) > 1:
        warning = (f"multiple candidate separated families "
                   f"{sorted(separated_families)}; took the lowest index")

    rest = [s for i, _, s in instance.all_sets() if i != j]
    if len(rest) <= _PAIRWISE_VERIFY_LIMIT:
        from .bodies import polygons_intersect, translates_intersect

        for a in range(len(rest)):
            for b in range(a + 1, len(rest)):
                if instance.is_translate_mode:
                    ok = translates_intersect(
                        instance.body, rest[a].shift, rest[b].shift, tol)
                else:
                    ok = polygons_intersect(rest[a], rest[b], tol.eps_geom)
                assert ok, "pairwise branch produced a non-intersecting pair"
    return SweepOutcome(union_line=None, pairwise_index=j, warning=warning)


# ---------------------------------------------------------------------------
# direction picking for the piercing pipelines


def _norm_half(theta: float) -> float:
    t = theta % PI
    return 0.0 if t >= PI - 1e-15 else t


def pick_orthogonal_directions(coloring: DirectionColoring):
    """(j, theta1, theta2): theta1 carries all colors, theta2 = theta1 + pi/2
    carries all colors except possibly j."""
    n = coloring.instance.n
    full = frozenset(range(n))
    theta1 = None
    for k in coloring.all_colored_cells():
        theta1 = coloring.cell_midpoint(k)
        break
    if theta1 is None:
        for e in coloring.events:
            if coloring.colors_at(e) == full:
                theta1 = e
                break
    if theta1 is None:
        raise NoUnionDirection("no direction carries all colors")
    theta2 = _norm_half(theta1 + PI / 2.0)
    colors2 = coloring.colors_at(theta2)
    missing = sorted(full - colors2)
    if len(missing) > 1:
        raise HypothesisViolation(
            f"angle {theta2:.6f} misses {missing}, more than one color",
            direction=Direction(theta2),
        )
    j = missing[0] if missing else 0
    return j, _norm_half(theta1), theta2


def pick_pentagon_directions(coloring: DirectionColoring):
    """(j, ta, tb, tc) with tb = ta + pi/2 and tc = ta + pi/4 (mod pi), all
    three colored j.  Requires n = 2 and some angle with both colors.

    Among four angles spaced pi/4 the pigeonhole always yields three sharing
    a color, and any 3-subset of the quarter-turn classes is a consecutive
    triple {t, t+pi/4, t+pi/2} mod pi.
    """
    inst = coloring.instance
    if inst.n != 2:
        raise ValueError("pentagon directions need exactly 2 families")
    choices = list(pentagon_direction_choices(coloring))
    if not choices:
        raise NoUnionDirection("no direction carries both colors")
    return choices[0]


def pentagon_direction_choices(coloring: DirectionColoring):
    """All (j, ta, tb, tc) candidates in deterministic order: for each
    both-colored base angle (first cells, then events), each color j and each
    rotation of the quadruple that is fully j-colored."""
    full = frozenset(range(2))
    bases = []
    for k in coloring.all_colored_cells():
        bases.append(coloring.cell_midpoint(k))
    for e in coloring.events:
        if coloring.colors_at(e) == full:
            bases.append(e)
    seen = set()
    for base in bases:
        key = round(base, 12)
        if key in seen:
            continue
        seen.add(key)
        quad = [_norm_half(base + t * PI / 4.0) for t in range(4)]
        colors = [coloring.colors_at(t) for t in quad]
        for j in (0, 1):
            idx = [q for q in range(4) if j in colors[q]]
            if len(idx) < 3:
                continue
            for start in range(4):
                trio = [start, (start + 1) % 4, (start + 2) % 4]
                if all(q in idx for q in trio):
                    ta = quad[start]
                    tb = _norm_half(ta + PI / 2.0)
                    tc = _norm_half(ta + PI / 4.0)
                    yield j, ta, tb, tc
