"""Bivariate tropical polynomials and their dual Newton subdivisions.

A polynomial is a finite support of lattice exponents (i, j) with exact
rational coefficients; evaluation is max over a_ij + i*x + j*y.  Lifting
each exponent by its coefficient and taking the upper convex hull induces
a subdivision of the Newton polygon whose combinatorics encode the corner
locus computed in :mod:`tropgeom.curves`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import PolynomialParseError
from .geometry import (
    as_fraction,
    convex_hull,
    cross,
    doubled_area,
    format_rational,
    parse_rational,
    primitive,
)
from .semiring import TropicalValue

Exponent = Tuple[int, int]


class TropicalPolynomial:
    """max over (i,j) in the support of a_ij + i*x + j*y, all exact."""

    def __init__(self, coeffs: Mapping[Exponent, object]):
        terms: Dict[Exponent, Fraction] = {}
        for key, a in coeffs.items():
            i, j = key
            if not (isinstance(i, int) and isinstance(j, int)):
                raise ValueError(f"exponents must be integers, got {key!r}")
            if i < 0 or j < 0:
                raise ValueError(f"exponents must be nonnegative, got {key!r}")
            terms[(i, j)] = as_fraction(a)
        if not terms:
            raise ValueError("support must be non-empty")
        self._terms = dict(sorted(terms.items()))

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms[(i, j)]

    def __eq__(self, other):
        return isinstance(other, TropicalPolynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        inner = ", ".join(f"({i},{j}): {a}" for (i, j), a in self._terms.items())
        return f"TropicalPolynomial({{{inner}}})"

    def evaluate(self, x, y) -> TropicalValue:
        """Exact value max(a_ij + i*x + j*y) at a rational point."""
        x, y = as_fraction(x), as_fraction(y)
        return TropicalValue(max(a + i * x + j * y for (i, j), a in self._terms.items()))

    def dominating_terms(self, x, y) -> frozenset:
        """Exponents whose monomial attains the maximum at (x, y)."""
        x, y = as_fraction(x), as_fraction(y)
        vals = {(i, j): a + i * x + j * y for (i, j), a in self._terms.items()}
        best = max(vals.values())
        return frozenset(k for k, v in vals.items() if v == best)

    def newton_polygon(self) -> tuple:
        """Convex hull of the support, CCW (or a segment / single point)."""
        return convex_hull(self._terms)

    def degree(self) -> Optional[int]:
        """d if the Newton polygon is the standard triangle (0,0),(d,0),(0,d)."""
        hull = set(self.newton_polygon())
        d = max(i + j for (i, j) in self._terms)
        if d >= 1 and hull == {(0, 0), (d, 0), (0, d)}:
            return d
        return None

    def shifted(self, c) -> "TropicalPolynomial":
        """All coefficients tropically multiplied by c (i.e. a_ij + c)."""
        c = as_fraction(c)
        return TropicalPolynomial({k: a + c for k, a in self._terms.items()})

    @classmethod
    def from_text(cls, text: str) -> "TropicalPolynomial":
        """Parse the 'i j a_ij' one-monomial-per-line format ('#' comments)."""
        terms: Dict[Exponent, Fraction] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise PolynomialParseError(lineno, f"expected 'i j a_ij', got {raw!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise PolynomialParseError(lineno, f"bad exponents in {raw!r}") from None
            try:
                a = parse_rational(parts[2])
            except ValueError:
                raise PolynomialParseError(lineno, f"bad coefficient in {raw!r}") from None
            if i < 0 or j < 0:
                raise PolynomialParseError(lineno, f"negative exponent in {raw!r}")
            if (i, j) in terms:
                raise PolynomialParseError(lineno, f"duplicate monomial ({i}, {j})")
            terms[(i, j)] = a
        if not terms:
            raise PolynomialParseError(0, "no monomials found")
        return cls(terms)

    def to_text(self) -> str:
        lines = [f"{i} {j} {format_rational(a)}" for (i, j), a in self._terms.items()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SubdivisionCell:
    """One face of the dual subdivision.

    `vertices` are the corners (CCW polygon, segment pair, or single point);
    `contact` is every support point whose lift lies on the face, including
    non-corner points; `slope` is the (A, B) of the supporting plane
    z = A*i + B*j + C for 2-dimensional cells, None otherwise.
    """

    vertices: tuple
    contact: frozenset
    slope: Optional[Tuple[Fraction, Fraction]] = None

    def doubled_area(self):
        return doubled_area(self.vertices)


@dataclass(frozen=True)
class NewtonSubdivision:
    """Regular subdivision of the Newton polygon induced by the lift."""

    polygon: tuple  # hull of the support
    dim: int  # 0, 1, or 2
    cells: Tuple[SubdivisionCell, ...]

    def doubled_area(self):
        return doubled_area(self.polygon)

    def edges(self) -> Dict[tuple, tuple]:
        """Map (sorted endpoint pair) -> indices of incident cells."""
        incidence: Dict[tuple, list] = {}
        for idx, cell in enumerate(self.cells):
            vs = cell.vertices
            if len(vs) < 2:
                continue
            if len(vs) == 2:
                pairs = [(vs[0], vs[1])]
            else:
                pairs = [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]
            for a, b in pairs:
                key = tuple(sorted((a, b)))
                incidence.setdefault(key, []).append(idx)
        return {k: tuple(v) for k, v in incidence.items()}


def _facet_plane(p1, p2, p3, lift):
    """(A, B, C) with lift(p) = A*i + B*j + C at the three exponents."""
    (i1, j1), (i2, j2), (i3, j3) = p1, p2, p3
    a1, a2, a3 = lift[p1], lift[p2], lift[p3]
    det = (i2 - i1) * (j3 - j1) - (j2 - j1) * (i3 - i1)
    if det == 0:
        return None
    A = Fraction((a2 - a1) * (j3 - j1) - (a3 - a1) * (j2 - j1), det)
    B = Fraction((a3 - a1) * (i2 - i1) - (a2 - a1) * (i3 - i1), det)
    C = a1 - A * i1 - B * j1
    return (A, B, C)


def _line_parameters(points):
    """(base, direction) for collinear lattice points, direction primitive."""
    base = min(points)
    direction = None
    for p in points:
        if p != base:
            direction = primitive((p[0] - base[0], p[1] - base[1]))
            break
    return base, direction


def line_coordinates(points):
    """Integer positions s of collinear lattice points along their line."""
    base, u = _line_parameters(points)
    coords = {}
    for p in points:
        d = (p[0] - base[0], p[1] - base[1])
        s = d[0] // u[0] if u[0] != 0 else d[1] // u[1]
        coords[p] = s
    return base, u, coords


def _upper_hull_1d(pairs):
    """Upper concave hull of (s, a) pairs, returned left to right."""
    pts = sorted(pairs)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (s1, a1), (s2, a2) = hull[-2], hull[-1]
            # keep only strictly concave corners: pop if hull[-1] is on or
            # below the segment hull[-2] -> p
            if (a2 - a1) * (p[0] - s1) <= (p[1] - a1) * (s2 - s1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def dual_subdivision(f: TropicalPolynomial) -> NewtonSubdivision:
    """Subdivision of the Newton polygon induced by the coefficient lift.

    Cells are the projections of the upper faces of the lifted support;
    support points lifted strictly below the hull span no cell (they are
    the nowhere-dominating monomials).
    """
    lift = f.terms
    polygon = f.newton_polygon()

    if len(polygon) == 1:
        cell = SubdivisionCell(vertices=polygon, contact=frozenset(polygon))
        return NewtonSubdivision(polygon=polygon, dim=0, cells=(cell,))

    if len(polygon) == 2:
        base, u, coords = line_coordinates(f.support)
        hull = _upper_hull_1d((s, lift[p]) for p, s in coords.items())
        by_s = {s: p for p, s in coords.items()}
        cells = []
        for (s1, a1), (s2, a2) in zip(hull, hull[1:]):
            verts = (by_s[s1], by_s[s2])
            contact = frozenset(
                p
                for p, s in coords.items()
                if s1 <= s <= s2
                and (lift[p] - a1) * (s2 - s1) == (a2 - a1) * (s - s1)
            )
            cells.append(SubdivisionCell(vertices=verts, contact=contact))
        return NewtonSubdivision(polygon=polygon, dim=1, cells=tuple(cells))

    support = sorted(f.support)
    facets: Dict[Tuple[Fraction, Fraction], Tuple[Fraction, frozenset]] = {}
    for p1, p2, p3 in itertools.combinations(support, 3):
        plane = _facet_plane(p1, p2, p3, lift)
        if plane is None:
            continue
        A, B, C = plane
        if (A, B) in facets:
            continue
        above = False
        contact = []
        for p in support:
            h = A * p[0] + B * p[1] + C
            if lift[p] > h:
                above = True
                break
            if lift[p] == h:
                contact.append(p)
        if above:
            continue
        facets[(A, B)] = (C, frozenset(contact))

    cells = []
    for (A, B), (_, contact) in sorted(facets.items()):
        verts = convex_hull(contact)
        cells.append(SubdivisionCell(vertices=verts, contact=contact, slope=(A, B)))
    return NewtonSubdivision(polygon=polygon, dim=2, cells=tuple(cells))
