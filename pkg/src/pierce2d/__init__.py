"""Piercing and crossing certificates for colorful families of planar
convex sets, with brute-force oracles that independently check every claim.
"""

__version__ = "0.1.0"

from .bodies import (
    Body,
    ConvexPolygon,
    DiskBody,
    PolygonBody,
    ReuleauxBody,
    SupportSampledBody,
    TranslateSet,
    difference_body,
    minkowski_sum,
    normalize_inner_outer,
    support,
    translates_intersect,
)
from .covering import (
    CoverGadget,
    canonical_pentagon,
    pentagon_eight_disk_cover,
    pentagon_minus_body_cover,
    pentagon_three_circle_cover,
    reuleaux_rotation_cover,
    square_disk_cover,
    verify_cover,
)
from .geom import (
    Direction,
    Disk,
    Line,
    Point,
    Tolerance,
    circumcircle,
    contains_point,
    line_intersect,
    min_enclosing_disk,
    orient,
)
from .instances import ColoredInstance, InstanceSpec, canonical, generate
from .kkm import KkmCertificate, SimplexPoint, chords, classify_regions, kkm_search
from .oracle import (
    PiercingOracleResult,
    boxes_common_point,
    brute_line_transversal,
    exact_piercing_number,
    fuzz_colorful_circles,
)
from .piercing import (
    PiercingCertificate,
    confinement_region,
    pierce_constant_width_union,
    pierce_cw_one_family,
    pierce_general,
    pierce_general_8,
    pierce_near_disk_one_family,
    verify_certificate,
)
from .transversal import (
    DirectionColoring,
    color_circle,
    direction_transversal,
    pick_orthogonal_directions,
    pick_pentagon_directions,
    projection_interval,
    sweep_special_vch,
)
