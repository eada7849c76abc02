"""Exact 2D geometry helpers over integers and rationals.

Everything here is branch-free of floating point: inputs are ints or
Fractions and all predicates are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

Point = Tuple  # (x, y) with int or Fraction entries


def cross(o: Point, a: Point, b: Point):
    """Signed area*2 of the triangle (o, a, b); >0 means a->b turns left."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> tuple:
    """Convex hull vertices in counterclockwise order, no collinear points.

    Degenerate inputs collapse naturally: one point gives a single vertex,
    collinear points give the two extreme ones.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return (hull[0],)
    return tuple(hull)


def doubled_area(polygon: Sequence[Point]):
    """Twice the (positive) area of a CCW polygon; 0 for points/segments."""
    if len(polygon) < 3:
        return 0
    total = 0
    for i in range(len(polygon)):
        total += cross((0, 0), polygon[i], polygon[(i + 1) % len(polygon)])
    return total


def primitive(v: Tuple[int, int]) -> Tuple[int, int]:
    """Primitive integer vector parallel to v (gcd of components is 1)."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive direction")
    g = gcd(abs(x), abs(y))
    return (x // g, y // g)


def lattice_gcd(v: Tuple[int, int]) -> int:
    """gcd of |components|; the lattice length of the segment 0..v."""
    return gcd(abs(v[0]), abs(v[1]))


def as_fraction(x) -> Fraction:
    """Coerce int/str/Fraction to Fraction; floats are rejected on purpose."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass Fraction, int, or 'p/q' string")
    return Fraction(x)


def format_rational(x) -> str:
    """Canonical 'p/q' (or 'p') string for a Fraction or int."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc
