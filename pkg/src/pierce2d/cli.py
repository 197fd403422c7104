"""Command-line front end.

Commands read an instance document (JSON) from a file or use a named
fixture, print a machine-readable result document on stdout and a short
human summary on stderr.  Exit codes: 0 certified result, 2 honest
non-result (gate fired, budget exhausted), 1 error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .bodies import (
    ConvexPolygon,
    DiskBody,
    PolygonBody,
    ReuleauxBody,
    SupportSampledBody,
    TranslateSet,
)
from .covering import (
    SQRT2,
    NEAR_DISK_COVER_RADIUS,
    pentagon_decomposition,
    pentagon_eight_disk_cover,
    pentagon_minus_body_cover,
    pentagon_three_circle_cover,
    reuleaux_rotation_cover,
    square_disk_cover,
    verify_cover,
)
from .errors import (
    HonestNonResult,
    HypothesisViolation,
    ParseError,
    PierceError,
    ValidationError,
)
from .geom import Direction, Line, Point
from .instances import ColoredInstance, canonical, fixture_names
from .kkm import KkmCertificate, kkm_search
from .oracle import exact_piercing_number, fuzz_colorful_circles
from .piercing import (
    PiercingCertificate,
    pierce_constant_width_union,
    pierce_cw_one_family,
    pierce_general,
    pierce_general_8,
    pierce_near_disk_one_family,
    verify_certificate,
)
from .svgout import render_instance
from .transversal import sweep_special_vch

DOC_VERSION = "pierce2d-1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NON_RESULT = 2


# ---------------------------------------------------------------------------
# instance documents


def _body_from_doc(doc) -> object:
    kind = doc.get("type")
    if kind == "disk":
        center = doc.get("center", [0.0, 0.0])
        return DiskBody(float(doc["radius"]), Point(*map(float, center)))
    if kind == "polygon":
        return PolygonBody(_polygon_from_doc(doc["vertices"]))
    if kind == "reuleaux":
        return ReuleauxBody(int(doc.get("arms", 3)), float(doc.get("width", 1.0)))
    if kind == "support":
        return SupportSampledBody([(float(a), float(v)) for a, v in doc["samples"]])
    raise ParseError(f"unknown body type {kind!r}", location="body.type")


def _polygon_from_doc(vertices) -> ConvexPolygon:
    pts = [Point(float(v[0]), float(v[1])) for v in vertices]
    try:
        return ConvexPolygon(pts)
    except ValidationError as exc:
        raise ValidationError(f"bad polygon: {exc}")


def parse_instance(text: str) -> ColoredInstance:
    """Parse an instance document; translate mode binds one shared body."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}", location=f"line {exc.lineno}")
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("version") != DOC_VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}",
                         location="version")
    families_doc = doc.get("families")
    if not isinstance(families_doc, list) or len(families_doc) < 2:
        raise ParseError("need a list of at least 2 families",
                         location="families")
    body_doc = doc.get("body")
    if body_doc is not None:
        body = _body_from_doc(body_doc)
        fams = []
        for fi, fam in enumerate(families_doc):
            members = []
            for mi, entry in enumerate(fam):
                if (not isinstance(entry, list) or len(entry) != 2
                        or not all(isinstance(v, (int, float)) for v in entry)):
                    raise ParseError(
                        "translate entries must be [x, y]",
                        location=f"families[{fi}][{mi}]")
                members.append(TranslateSet(body, Point(float(entry[0]),
                                                        float(entry[1]))))
            fams.append(tuple(members))
        return ColoredInstance(tuple(fams), body)
    fams = []
    for fi, fam in enumerate(families_doc):
        members = []
        for mi, entry in enumerate(fam):
            if not isinstance(entry, list) or len(entry) < 3:
                raise ParseError("general entries must be vertex lists",
                                 location=f"families[{fi}][{mi}]")
            members.append(_polygon_from_doc(entry))
        fams.append(tuple(members))
    return ColoredInstance(tuple(fams), None)


def instance_document(instance: ColoredInstance) -> dict:
    """Serialize back to the document form (field-for-field round trip)."""
    if instance.is_translate_mode:
        return {
            "version": DOC_VERSION,
            "body": instance.body.descriptor(),
            "families": [[[t.shift.x, t.shift.y] for t in fam]
                         for fam in instance.families],
        }
    return {
        "version": DOC_VERSION,
        "body": None,
        "families": [[[[v.x, v.y] for v in poly.vertices] for poly in fam]
                     for fam in instance.families],
    }


# ---------------------------------------------------------------------------
# certificate documents


def certificate_document(cert) -> dict:
    if isinstance(cert, PiercingCertificate):
        return {
            "type": "piercing",
            "scope": cert.scope,
            "family": cert.family,
            "points": [[p.x, p.y] for p in cert.points],
            "provenance": cert.provenance,
        }
    if isinstance(cert, KkmCertificate):
        doc = {"type": "kkm", "variant": cert.variant, "depth": cert.depth}
        if cert.variant == "two_lines":
            doc["lines"] = [[ln.normal.theta, ln.offset] for ln in cert.lines]
        elif cert.variant == "pierce_point":
            doc["family"] = cert.family
            doc["point"] = [cert.point.x, cert.point.y]
        else:
            doc["gap"] = cert.gap
        return doc
    raise TypeError(f"unknown certificate {type(cert)!r}")


def certificate_from_document(doc: dict):
    kind = doc.get("type")
    if kind == "piercing":
        return PiercingCertificate(
            scope=doc["scope"], family=int(doc["family"]),
            points=tuple(Point(float(x), float(y)) for x, y in doc["points"]),
            provenance=doc.get("provenance", {}))
    if kind == "kkm":
        variant = doc["variant"]
        if variant == "two_lines":
            lines = tuple(Line(Direction(float(t)), float(c))
                          for t, c in doc["lines"])
            return KkmCertificate("two_lines", lines=lines,
                                  depth=int(doc.get("depth", 0)))
        if variant == "pierce_point":
            return KkmCertificate(
                "pierce_point", family=int(doc["family"]),
                point=Point(*map(float, doc["point"])),
                depth=int(doc.get("depth", 0)))
        return KkmCertificate("unresolved", depth=int(doc.get("depth", 0)),
                              gap=doc.get("gap"))
    raise ParseError(f"unknown certificate type {kind!r}", location="type")


# ---------------------------------------------------------------------------
# commands


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _log(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _load_instance(args) -> ColoredInstance:
    if getattr(args, "fixture", None):
        return canonical(args.fixture)
    if getattr(args, "instance", None):
        with open(args.instance, "r", encoding="utf-8") as fh:
            return parse_instance(fh.read())
    raise ParseError("provide an instance file or --fixture NAME")


def cmd_check(args) -> int:
    instance = _load_instance(args)
    if args.certificate:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            cert = certificate_from_document(json.loads(fh.read()))
        res = verify_certificate(cert, instance)
        _emit({"command": "check", "certificate_ok": res.ok,
               "failure": res.failure})
        _log("certificate verifies" if res.ok
             else f"certificate FAILS: {res.failure}")
        return EXIT_OK if res.ok else EXIT_ERROR
    try:
        instance.check_hypothesis()
    except HypothesisViolation as exc:
        _emit({"command": "check", "hypothesis_ok": False,
               "witnesses": [list(w) for w in exc.witnesses]})
        _log(f"hypothesis fails: {exc}")
        return EXIT_ERROR
    _emit({"command": "check", "hypothesis_ok": True,
           "sets": instance.set_count(), "families": instance.n})
    _log("hypothesis holds")
    return EXIT_OK


def cmd_sweep(args) -> int:
    instance = _load_instance(args)
    outcome = sweep_special_vch(instance)
    if outcome.is_union_transversal:
        line = outcome.union_line
        _emit({"command": "sweep", "outcome": "union_transversal",
               "line": [line.normal.theta, line.offset]})
        _log(f"one line crosses the whole union "
             f"(normal {line.normal.theta:.6f}, offset {line.offset:.6f})")
    else:
        _emit({"command": "sweep", "outcome": "pairwise_index",
               "family": outcome.pairwise_index,
               "warning": outcome.warning})
        _log(f"without family {outcome.pairwise_index} every two sets meet")
    return EXIT_OK


def cmd_kkm(args) -> int:
    instance = _load_instance(args)
    cert = kkm_search(instance, max_depth=args.max_depth)
    doc = certificate_document(cert)
    res = (verify_certificate(cert, instance) if cert.resolved else None)
    doc["verified"] = None if res is None else res.ok
    _emit(doc)
    if not cert.resolved:
        _log(f"unresolved at depth {cert.depth} (best gap {cert.gap})")
        return EXIT_NON_RESULT
    _log(f"{cert.variant} at depth {cert.depth}, verified={res.ok}")
    return EXIT_OK if res.ok else EXIT_ERROR


_PIERCE_MODES = {
    "cw3": pierce_cw_one_family,
    "neardisk3": pierce_near_disk_one_family,
    "general9": pierce_general,
    "cw4": pierce_constant_width_union,
    "general8": pierce_general_8,
}


def cmd_pierce(args) -> int:
    instance = _load_instance(args)
    pipeline = _PIERCE_MODES[args.mode]
    cert = pipeline(instance)
    res = verify_certificate(cert, instance)
    doc = certificate_document(cert)
    doc["verified"] = res.ok
    _emit(doc)
    _log(f"{args.mode}: {len(cert.points)} points, scope {cert.scope} "
         f"of family {cert.family}, verified={res.ok}")
    return EXIT_OK if res.ok else EXIT_ERROR


def cmd_gadgets(args) -> int:
    pitch = args.pitch
    angles = args.angles
    results = []

    def record(name, ok, detail):
        results.append({"gadget": name, "ok": bool(ok), **detail})
        _log(f"{'PASS' if ok else 'FAIL'}  {name:28s} {detail}")

    g9 = square_disk_cover(4.0, 1.0)
    c9 = verify_cover(g9, pitch)
    record("square4-9disks", c9.ok and len(g9.pieces) == 9,
           {"disks": len(g9.pieces), "margin": c9.margin,
            "analytic_margin": g9.analytic_margin})

    g4 = square_disk_cover(1.0 + math.sqrt(3.0), 1.0)
    c4 = verify_cover(g4, pitch)
    record("square1+sqrt3-4disks", c4.ok and len(g4.pieces) == 4,
           {"disks": len(g4.pieces), "margin": c4.margin,
            "analytic_margin": g4.analytic_margin})

    g3 = pentagon_three_circle_cover(NEAR_DISK_COVER_RADIUS)
    c3 = verify_cover(g3, pitch)
    radii = [p.disk.radius for p in g3.pieces]
    record("pentagon-3circles", c3.ok and max(radii) <= 0.4474,
           {"radii": radii, "margin": c3.margin})

    g8 = pentagon_eight_disk_cover(0.25)
    c8 = verify_cover(g8, pitch)
    record("pentagon-8disks", c8.ok and len(g8.pieces) == 8,
           {"disks": len(g8.pieces), "margin": c8.margin})

    square, lower, upper = pentagon_decomposition()
    for name, shape in (("rotation-square5/8", square),
                        ("rotation-lower-pentagon", lower),
                        ("rotation-upper-pentagon", upper)):
        rep = reuleaux_rotation_cover(shape, angles)
        record(name, rep.worst_slack > 0.0,
               {"angles": rep.angles_tested, "worst_slack": rep.worst_slack})

    body = ReuleauxBody(3, 1.0)
    gp = pentagon_minus_body_cover(body)
    cp = verify_cover(gp, pitch)
    record("pentagon-3reuleaux", cp.ok, {"margin": cp.margin})

    ok = all(r["ok"] for r in results)
    _emit({"command": "gadgets", "pitch": pitch, "angles": angles,
           "all_ok": ok, "results": results})
    return EXIT_OK if ok else EXIT_ERROR


def cmd_oracle(args) -> int:
    instance = _load_instance(args)
    poly = instance.as_polygons(64)
    out = []
    for i, fam in enumerate(poly.families):
        res = exact_piercing_number(list(fam), args.k_max)
        out.append({
            "family": i,
            "k": res.k,
            "points": [[p.x, p.y] for p in res.points],
            "exhausted": res.exhausted,
        })
        _log(f"family {i}: k={res.k} exhausted={res.exhausted}")
    _emit({"command": "oracle", "k_max": args.k_max, "families": out})
    return EXIT_OK


def cmd_fuzz(args) -> int:
    sizes = tuple(int(v) for v in args.sizes.split(","))
    report = fuzz_colorful_circles(args.seed, args.trials, sizes)
    _emit({
        "command": "fuzz",
        "seed": report.seed,
        "trials": report.trials,
        "sizes": list(report.sizes),
        "status": report.status,
        "violations": list(report.violations),
        "worst_trial": report.worst_trial,
        "worst_piercing": [k if k is not None else ">4"
                           for k in report.worst_piercing],
        "worst_instance": report.worst_instance,
    })
    _log(f"{report.trials} trials: {report.status}")
    return EXIT_OK if report.status == "no-violation" else EXIT_NON_RESULT


def cmd_render(args) -> int:
    instance = _load_instance(args)
    cert = None
    if args.certificate:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            cert = certificate_from_document(json.loads(fh.read()))
    svg = render_instance(instance, cert)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    _emit({"command": "render", "svg": args.svg, "bytes": len(svg)})
    _log(f"wrote {args.svg}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_instance_args(p):
    p.add_argument("instance", nargs="?", help="instance document (JSON)")
    p.add_argument("--fixture", choices=fixture_names(),
                   help="use a named built-in instance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pierce2d",
        description="piercing and crossing certificates for colorful "
                    "families of planar convex sets")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the cross-intersection "
                                     "hypothesis or a certificate")
    _add_instance_args(p)
    p.add_argument("--certificate", help="certificate document to re-verify")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("sweep", help="union transversal or pairwise index")
    _add_instance_args(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("kkm", help="two crossing lines or one piercing point")
    _add_instance_args(p)
    p.add_argument("--max-depth", type=int, default=8)
    p.set_defaults(fn=cmd_kkm)

    p = sub.add_parser("pierce", help="piercing-point pipelines")
    _add_instance_args(p)
    p.add_argument("--mode", choices=sorted(_PIERCE_MODES), required=True)
    p.set_defaults(fn=cmd_pierce)

    p = sub.add_parser("gadgets", help="verify all covering gadgets")
    p.add_argument("--pitch", type=float, default=0.002)
    p.add_argument("--angles", type=int, default=3600)
    p.set_defaults(fn=cmd_gadgets)

    p = sub.add_parser("oracle", help="exact piercing numbers per family")
    _add_instance_args(p)
    p.add_argument("--k-max", type=int, default=4)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("fuzz", help="conjecture fuzzer for circle families")
    p.add_argument("--seed", type=int, default=int(os.environ.get("PIERCE2D_SEED", "1")))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--sizes", default="3,3")
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("render", help="emit an SVG drawing")
    _add_instance_args(p)
    p.add_argument("--svg", required=True)
    p.add_argument("--certificate")
    p.set_defaults(fn=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except HonestNonResult as exc:
        _emit({"command": args.command, "non_result": type(exc).__name__,
               "detail": str(exc)})
        _log(f"non-result: {exc}")
        return EXIT_NON_RESULT
    except HypothesisViolation as exc:
        _emit({"command": args.command, "error": "HypothesisViolation",
               "detail": str(exc),
               "witnesses": [list(w) for w in exc.witnesses]})
        _log(f"hypothesis violation: {exc}")
        return EXIT_ERROR
    except (PierceError, OSError) as exc:
        _emit({"command": args.command, "error": type(exc).__name__,
               "detail": str(exc)})
        _log(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
