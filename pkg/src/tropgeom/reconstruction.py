"""Tropical curves through vertically stretched point configurations.

Given a marked floor diagram and a configuration of 3d-1+g points whose
consecutive vertical gaps dwarf the horizontal spread, there is exactly one
plane tropical curve realizing the diagram through the points: elevators
are vertical at the abscissa of their marked point, and each floor is a
piecewise-linear path through its marked point whose slope starts at 0 on
the far left, ends at 1 on the far right, and jumps by +w at the abscissa
of every elevator arriving from below and by -w at every elevator leaving
upward.  That slope rule is forced by the balancing condition.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .curves import PlaneTropicalCurve, Ray, Segment
from .errors import FormatError, StretchError
from .floor_diagrams import MarkedFloorDiagram
from .geometry import as_fraction, cross, format_rational, parse_rational

STRETCH_FACTOR = 100

Coord = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PointConfiguration:
    """Points with distinct x, strictly increasing y, and huge vertical gaps.

    Consecutive gaps must exceed stretch * (x-diameter + 1); pass stretch=0
    to keep only the ordering constraints (useful for small hand examples).
    """

    points: Tuple[Coord, ...]
    stretch: int = STRETCH_FACTOR

    def __post_init__(self):
        pts = tuple((as_fraction(x), as_fraction(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        xs = [p[0] for p in pts]
        if len(set(xs)) != len(xs):
            raise StretchError("x-coordinates must be pairwise distinct")
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if y2 <= y1:
                raise StretchError("y-coordinates must be strictly increasing")
        if len(pts) >= 2 and self.stretch > 0:
            diam = max(xs) - min(xs)
            threshold = self.stretch * (diam + 1)
            for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
                if y2 - y1 <= threshold:
                    raise StretchError(
                        f"gap {y2 - y1} does not exceed {threshold}"
                    )

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "points": [
                [format_rational(x), format_rational(y)] for x, y in self.points
            ]
        }

    @classmethod
    def from_json(cls, data: dict, *, stretch: int = STRETCH_FACTOR) -> "PointConfiguration":
        try:
            pts = [(parse_rational(x), parse_rational(y)) for x, y in data["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad configuration JSON: {exc}") from exc
        return cls(points=tuple(pts), stretch=stretch)


def stretched_config(n: int, seed: int) -> PointConfiguration:
    """Deterministic stretched configuration of n points.

    x-coordinates are distinct rationals on the grid {k/16} inside [0, n);
    y-coordinates are k*G for k = 1..n with gap G = 100*(n+1), which beats
    the stretch threshold since the x-diameter stays below n.
    """
    if n < 1:
        raise ValueError("need at least one point")
    rng = random.Random(seed)
    numerators = rng.sample(range(16 * n), n)
    points = tuple(
        (Fraction(num, 16), Fraction((k + 1) * STRETCH_FACTOR * (n + 1)))
        for k, num in enumerate(numerators)
    )
    return PointConfiguration(points=points)


class _FloorPath:
    """Piecewise-linear graph of a floor: slope 0 left, 1 right, int slopes."""

    def __init__(self, xs: List[Fraction], ys: List[Fraction], slopes: List[int]):
        self.xs = xs  # breakpoints, increasing
        self.ys = ys  # values at breakpoints
        self.slopes = slopes  # slopes[i] on (xs[i-1], xs[i]); [0] left, [-1] right

    def value(self, x: Fraction) -> Fraction:
        i = bisect_right(self.xs, x)
        if i == 0:
            return self.ys[0] + self.slopes[0] * (x - self.xs[0])
        return self.ys[i - 1] + self.slopes[i] * (x - self.xs[i - 1])

    def shift(self, dy: Fraction) -> "_FloorPath":
        return _FloorPath(self.xs, [y + dy for y in self.ys], self.slopes)


def reconstruct(md: MarkedFloorDiagram, cfg: PointConfiguration) -> PlaneTropicalCurve:
    """The plane tropical curve realizing a marked diagram through cfg.

    Point k (in height order) lies on the curve piece assigned to the k-th
    marking element.  Raises StretchError when the configuration cannot
    support the vertical ordering the diagram requires; marking validity
    itself is enforced by MarkedFloorDiagram.
    """
    diagram = md.diagram
    d = diagram.degree
    n = 3 * diagram.degree - 1 + diagram.genus
    if len(cfg) != n:
        raise ValueError(f"configuration must have {n} points, got {len(cfg)}")

    point_of: Dict[str, Coord] = {
        el: cfg.points[k] for k, el in enumerate(md.marking)
    }

    jumps: Dict[int, List[Tuple[Fraction, int]]] = {v: [] for v in diagram.floors()}
    for k, (u, v, w) in enumerate(diagram.edges):
        x_e = point_of[f"e{k}"][0]
        jumps[v].append((x_e, +w))
        if u < d:
            jumps[u].append((x_e, -w))

    paths: Dict[int, _FloorPath] = {}
    for v in diagram.floors():
        js = sorted(jumps[v])
        xs = [x for x, _ in js]
        slopes = [0]
        for _, delta in js:
            slopes.append(slopes[-1] + delta)
        assert slopes[-1] == 1, "divergence 1 forces total slope change +1"
        ys = [Fraction(0)]
        for i in range(1, len(xs)):
            ys.append(ys[-1] + slopes[i] * (xs[i] - xs[i - 1]))
        path = _FloorPath(xs, ys, slopes)
        px, py = point_of[f"v{v}"]
        paths[v] = path.shift(py - path.value(px))

    vertices: List[Coord] = []
    vertex_id: Dict[Coord, int] = {}

    def vid(p: Coord) -> int:
        if p not in vertex_id:
            vertex_id[p] = len(vertices)
            vertices.append(p)
        return vertex_id[p]

    edges: List = []
    for v in diagram.floors():
        path = paths[v]
        pts = list(zip(path.xs, path.ys))
        for i, (p, q) in enumerate(zip(pts, pts[1:])):
            edges.append(
                Segment(a=vid(p), b=vid(q), primitive=(1, path.slopes[i + 1]), weight=1)
            )
        edges.append(Ray(v=vid(pts[0]), direction=(-1, 0), weight=1))
        edges.append(Ray(v=vid(pts[-1]), direction=(1, 1), weight=1))

    for k, (u, v, w) in enumerate(diagram.edges):
        ex, ey = point_of[f"e{k}"]
        top = (ex, paths[v].value(ex))
        if u < d:
            bottom = (ex, paths[u].value(ex))
            if not bottom[1] < top[1]:
                raise StretchError(
                    f"floor v{u} is not below floor v{v} at x={ex}"
                )
            if not bottom[1] <= ey <= top[1]:
                raise StretchError(f"point for elevator e{k} misses its segment")
            edges.append(
                Segment(a=vid(bottom), b=vid(top), primitive=(0, 1), weight=w)
            )
        else:
            if not ey <= top[1]:
                raise StretchError(f"point for source edge e{k} lies above its floor")
            edges.append(Ray(v=vid(top), direction=(0, -1), weight=w))

    curve = PlaneTropicalCurve(vertices=vertices, edges=edges)
    assert not curve.check_balancing(), "slope rule must balance every vertex"
    assert curve.degree() == d
    return curve


def point_on_curve(curve: PlaneTropicalCurve, p: Coord) -> bool:
    """Exact containment of a point in the union of the curve's edges."""
    px, py = as_fraction(p[0]), as_fraction(p[1])
    for e in curve.edges:
        if isinstance(e, Segment):
            a = curve.vertices[e.a]
            b = curve.vertices[e.b]
            if cross(a, b, (px, py)) != 0:
                continue
            if a[0] != b[0]:
                t = (px - a[0]) / (b[0] - a[0])
            else:
                t = (py - a[1]) / (b[1] - a[1])
            if 0 <= t <= 1:
                return True
        elif isinstance(e, Ray):
            a = curve.vertices[e.v]
            tip = (a[0] + e.direction[0], a[1] + e.direction[1])
            if cross(a, tip, (px, py)) != 0:
                continue
            if e.direction[0] != 0:
                t = (px - a[0]) / e.direction[0]
            else:
                t = (py - a[1]) / e.direction[1]
            if t >= 0:
                return True
        else:  # Line
            a = e.point
            tip = (a[0] + e.direction[0], a[1] + e.direction[1])
            if cross(a, tip, (px, py)) == 0:
                return True
    return False


def incidence_check(curve: PlaneTropicalCurve, cfg: PointConfiguration) -> bool:
    """True iff every configuration point lies on the curve (exactly)."""
    return all(point_on_curve(curve, p) for p in cfg.points)
