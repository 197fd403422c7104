"""Deterministic SVG emission of instances and certificates.

Layer order is fixed (sets, strips, covers, lines, points) and all numbers
are formatted with a fixed precision, so identical inputs yield identical
bytes.
"""

from __future__ import annotations

import math
from typing import Optional

from .geom import Line, Point
from .instances import ColoredInstance

_FAMILY_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                  "#8c564b", "#e377c2")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class SvgScene:
    def __init__(self, view_half: float = 4.0, size: int = 640):
        self.size = size
        self.view_half = view_half
        self.elements = []

    def _map(self, p: Point):
        s = self.size / (2.0 * self.view_half)
        return ((p.x + self.view_half) * s,
                (self.view_half - p.y) * s)

    def add_polygon(self, vertices, stroke: str, fill: str = "none",
                    opacity: float = 1.0, width: float = 1.5):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}"
                       for x, y in (self._map(v) for v in vertices))
        self.elements.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}" fill-opacity="{_fmt(opacity)}"/>')

    def add_circle(self, center: Point, radius: float, stroke: str,
                   fill: str = "none", opacity: float = 1.0):
        cx, cy = self._map(center)
        r = radius * self.size / (2.0 * self.view_half)
        self.elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'fill="{fill}" stroke="{stroke}" fill-opacity="{_fmt(opacity)}"/>')

    def add_line(self, line: Line, stroke: str):
        u = line.normal.unit()
        base = u * line.offset
        d = Point(-u.y, u.x)
        a = base + d * (3.0 * self.view_half)
        b = base - d * (3.0 * self.view_half)
        (x1, y1), (x2, y2) = self._map(a), self._map(b)
        self.elements.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="1.2" '
            f'stroke-dasharray="6,4"/>')

    def add_point(self, p: Point, color: str = "#000000"):
        cx, cy = self._map(p)
        self.elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4.0" '
            f'fill="{color}" stroke="none"/>')

    def to_svg(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{self.size}" height="{self.size}" '
                f'viewBox="0 0 {self.size} {self.size}">')
        bg = f'<rect width="{self.size}" height="{self.size}" fill="#ffffff"/>'
        return "\n".join([head, bg] + self.elements + ["</svg>"]) + "\n"


def render_instance(instance: ColoredInstance, certificate=None,
                    size: int = 640) -> str:
    polys = []
    reach = 1.0
    for i, _m, s in instance.all_sets():
        poly = s if not instance.is_translate_mode else s.as_polygon(96)
        polys.append((i, poly))
        for v in poly.vertices:
            reach = max(reach, abs(v.x), abs(v.y))
    scene = SvgScene(view_half=reach * 1.15, size=size)
    for i, poly in polys:
        color = _FAMILY_COLORS[i % len(_FAMILY_COLORS)]
        scene.add_polygon(poly.vertices, stroke=color, fill=color, opacity=0.15)
    if certificate is not None:
        _render_certificate(scene, certificate)
    return scene.to_svg()


def _render_certificate(scene: SvgScene, cert) -> None:
    from .kkm import KkmCertificate
    from .piercing import PiercingCertificate

    if isinstance(cert, PiercingCertificate):
        for p in cert.points:
            scene.add_point(p, "#000000")
    elif isinstance(cert, KkmCertificate):
        if cert.variant == "two_lines" and cert.lines:
            for line in cert.lines:
                scene.add_line(line, "#ff7f0e")
        if cert.variant == "pierce_point" and cert.point is not None:
            scene.add_point(cert.point, "#000000")
