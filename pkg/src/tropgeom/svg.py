"""SVG rendering of plane tropical curves.

Unbounded edges are clipped to a bounding box computed from the vertices
and any overlay points, padded by 20%; weights of at least 2 are rendered
as labels next to their edge, matching the usual figure convention.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .curves import Line, PlaneTropicalCurve, Ray, Segment

Coord = Tuple[Fraction, Fraction]

_CANVAS = 640.0
_PAD = Fraction(1, 5)


def _clip_ray(anchor: Coord, direction, box) -> Optional[Coord]:
    """Farthest box point on anchor + t*direction, t >= 0; None if it exits at 0."""
    xmin, ymin, xmax, ymax = box
    t_hi = None
    dx, dy = direction
    # the anchor always lies inside the box, so only the exit parameter matters
    for d, lo, hi, a in ((dx, xmin, xmax, anchor[0]), (dy, ymin, ymax, anchor[1])):
        if d == 0:
            continue
        t_exit = (hi - a) / d if d > 0 else (lo - a) / d
        t_hi = t_exit if t_hi is None else min(t_hi, t_exit)
    if t_hi is None or t_hi <= 0:
        return None
    return (anchor[0] + t_hi * dx, anchor[1] + t_hi * dy)


def curve_svg(
    curve: PlaneTropicalCurve,
    points: Sequence[Coord] = (),
    canvas: float = _CANVAS,
) -> str:
    anchors: List[Coord] = list(curve.vertices) + [
        (Fraction(p[0]), Fraction(p[1])) for p in points
    ]
    for e in curve.edges:
        if isinstance(e, Line):
            anchors.append(e.point)
    if not anchors:
        anchors = [(Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(1))]
    xs = [a[0] for a in anchors]
    ys = [a[1] for a in anchors]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    extent = max(xmax - xmin, ymax - ymin, Fraction(1))
    pad = extent * _PAD
    box = (xmin - pad, ymin - pad, xmax + pad, ymax + pad)
    width = box[2] - box[0]
    height = box[3] - box[1]
    scale = Fraction(int(canvas)) / max(width, height)

    def to_svg(p: Coord) -> Tuple[float, float]:
        return (
            float((p[0] - box[0]) * scale),
            float((box[3] - p[1]) * scale),
        )

    w_px = float(width * scale)
    h_px = float(height * scale)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w_px:.2f}" '
        f'height="{h_px:.2f}" viewBox="0 0 {w_px:.2f} {h_px:.2f}">',
        f'<rect x="0" y="0" width="{w_px:.2f}" height="{h_px:.2f}" fill="white"/>',
    ]

    def emit_edge(p: Coord, q: Coord, weight: int) -> None:
        (x1, y1), (x2, y2) = to_svg(p), to_svg(q)
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="black" stroke-width="2"/>'
        )
        if weight >= 2:
            mx, my = (x1 + x2) / 2 + 6, (y1 + y2) / 2 - 6
            parts.append(
                f'<text x="{mx:.2f}" y="{my:.2f}" font-size="16">{weight}</text>'
            )

    for e in curve.edges:
        if isinstance(e, Segment):
            emit_edge(curve.vertices[e.a], curve.vertices[e.b], e.weight)
        elif isinstance(e, Ray):
            anchor = curve.vertices[e.v]
            end = _clip_ray(anchor, e.direction, box)
            if end is not None:
                emit_edge(anchor, end, e.weight)
        else:
            fwd = _clip_ray(e.point, e.direction, box)
            back = _clip_ray(e.point, (-e.direction[0], -e.direction[1]), box)
            if fwd is not None and back is not None:
                emit_edge(back, fwd, e.weight)

    for v in curve.vertices:
        x, y = to_svg(v)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
    for p in points:
        x, y = to_svg((Fraction(p[0]), Fraction(p[1])))
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="red"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
