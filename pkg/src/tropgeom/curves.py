"""Plane tropical curves: corner loci as weighted balanced rational graphs.

A curve is a set of vertices with exact rational coordinates plus three
kinds of edges: bounded segments between vertices, rays anchored at one
vertex, and (for degenerate one-dimensional Newton polygons) complete
lines carrying a base point.  Every edge stores a primitive integer
direction and a positive integer weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Dict, List, Optional, Tuple, Union

from .errors import FormatError
from .geometry import (
    as_fraction,
    cross,
    format_rational,
    lattice_gcd,
    parse_rational,
    primitive,
)
from .polynomials import (
    NewtonSubdivision,
    TropicalPolynomial,
    dual_subdivision,
    line_coordinates,
)

Coord = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Segment:
    """Bounded edge between vertices a and b; primitive points from a to b."""

    a: int
    b: int
    primitive: Tuple[int, int]
    weight: int


@dataclass(frozen=True)
class Ray:
    """Unbounded edge anchored at vertex v, leaving in `direction`."""

    v: int
    direction: Tuple[int, int]
    weight: int


@dataclass(frozen=True)
class Line:
    """Complete line through `point`; occurs only for 1-dim Newton polygons."""

    point: Coord
    direction: Tuple[int, int]
    weight: int


Edge = Union[Segment, Ray, Line]


@dataclass(frozen=True)
class BalancingViolation:
    vertex: int
    residue: Tuple[int, int]


class PlaneTropicalCurve:
    def __init__(self, vertices, edges):
        self.vertices: Tuple[Coord, ...] = tuple(
            (as_fraction(x), as_fraction(y)) for (x, y) in vertices
        )
        edges = tuple(edges)
        for e in edges:
            if e.weight < 1:
                raise ValueError(f"edge weight must be positive: {e}")
            if lattice_gcd(e.primitive if isinstance(e, Segment) else e.direction) != 1:
                raise ValueError(f"edge direction must be primitive: {e}")
            if isinstance(e, Segment):
                if not (0 <= e.a < len(self.vertices) and 0 <= e.b < len(self.vertices)):
                    raise ValueError(f"segment endpoints out of range: {e}")
                if self.vertices[e.a] == self.vertices[e.b]:
                    raise ValueError(f"zero-length segment: {e}")
            elif isinstance(e, Ray):
                if not 0 <= e.v < len(self.vertices):
                    raise ValueError(f"ray vertex out of range: {e}")
        self.edges: Tuple[Edge, ...] = edges

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def edges_at(self, v: int) -> List[Tuple[Edge, Tuple[int, int]]]:
        """Incident edges with their primitive direction pointing away from v."""
        out = []
        for e in self.edges:
            if isinstance(e, Segment):
                if e.a == v:
                    out.append((e, e.primitive))
                elif e.b == v:
                    out.append((e, (-e.primitive[0], -e.primitive[1])))
            elif isinstance(e, Ray) and e.v == v:
                out.append((e, e.direction))
        return out

    def check_balancing(self) -> List[BalancingViolation]:
        """Weighted primitive directions must cancel at every vertex."""
        violations = []
        for v in range(len(self.vertices)):
            sx = sy = 0
            for e, (ux, uy) in self.edges_at(v):
                sx += e.weight * ux
                sy += e.weight * uy
            if sx != 0 or sy != 0:
                violations.append(BalancingViolation(vertex=v, residue=(sx, sy)))
        return violations

    def unbounded_directions(self) -> Dict[Tuple[int, int], int]:
        """Total weight of unbounded ends per primitive direction."""
        ends: Dict[Tuple[int, int], int] = {}
        for e in self.edges:
            if isinstance(e, Ray):
                ends[e.direction] = ends.get(e.direction, 0) + e.weight
            elif isinstance(e, Line):
                d = e.direction
                for u in (d, (-d[0], -d[1])):
                    ends[u] = ends.get(u, 0) + e.weight
        return ends

    def degree(self) -> Optional[int]:
        """d when the ends are d each of (-1,0), (0,-1), (1,1); else None."""
        ends = self.unbounded_directions()
        expected = {(-1, 0), (0, -1), (1, 1)}
        if set(ends) != expected:
            return None
        counts = set(ends.values())
        if len(counts) != 1:
            return None
        d = counts.pop()
        return d if d >= 1 else None

    def canonical_form(self) -> tuple:
        """Order-independent description, usable for curve equality."""
        segs = sorted(
            tuple(sorted((self.vertices[e.a], self.vertices[e.b]))) + (e.weight,)
            for e in self.edges
            if isinstance(e, Segment)
        )
        rays = sorted(
            (self.vertices[e.v], e.direction, e.weight)
            for e in self.edges
            if isinstance(e, Ray)
        )
        lines = []
        for e in self.edges:
            if isinstance(e, Line):
                d = max(e.direction, (-e.direction[0], -e.direction[1]))
                # reduce the base point modulo the direction: use the line's
                # signed offset cross(d, point) as the invariant
                offset = d[0] * e.point[1] - d[1] * e.point[0]
                lines.append((d, offset, e.weight))
        return (segs, rays, sorted(lines))

    def same_curve(self, other: "PlaneTropicalCurve") -> bool:
        return self.canonical_form() == other.canonical_form()

    def to_json(self) -> dict:
        verts = [[format_rational(x), format_rational(y)] for (x, y) in self.vertices]
        edges = []
        for e in self.edges:
            if isinstance(e, Segment):
                edges.append(
                    {"ends": [e.a, e.b], "primitive": list(e.primitive), "weight": e.weight}
                )
            elif isinstance(e, Ray):
                edges.append(
                    {"ray": e.v, "primitive": list(e.direction), "weight": e.weight}
                )
            else:
                edges.append(
                    {
                        "line": [format_rational(e.point[0]), format_rational(e.point[1])],
                        "primitive": list(e.direction),
                        "weight": e.weight,
                    }
                )
        return {"vertices": verts, "edges": edges}

    @classmethod
    def from_json(cls, data: dict) -> "PlaneTropicalCurve":
        try:
            vertices = [
                (parse_rational(x), parse_rational(y)) for x, y in data["vertices"]
            ]
            edges: List[Edge] = []
            for rec in data["edges"]:
                prim = tuple(int(c) for c in rec["primitive"])
                weight = int(rec["weight"])
                if "ends" in rec:
                    a, b = rec["ends"]
                    edges.append(Segment(a=int(a), b=int(b), primitive=prim, weight=weight))
                elif "ray" in rec:
                    edges.append(Ray(v=int(rec["ray"]), direction=prim, weight=weight))
                elif "line" in rec:
                    x, y = rec["line"]
                    edges.append(
                        Line(
                            point=(parse_rational(x), parse_rational(y)),
                            direction=prim,
                            weight=weight,
                        )
                    )
                else:
                    raise FormatError(f"edge record needs ends/ray/line: {rec!r}")
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad curve JSON: {exc}") from exc
        return cls(vertices, edges)


def lattice_length(curve: PlaneTropicalCurve, edge: Edge):
    """Length of an edge in the inner metric (weighted primitive has speed 1).

    For a bounded segment spanning k primitive steps the answer is k/weight,
    an exact Fraction; unbounded edges have infinite length.
    """
    if isinstance(edge, (Ray, Line)):
        return inf
    a = curve.vertices[edge.a]
    b = curve.vertices[edge.b]
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        raise ValueError("zero-length edge")
    ux, uy = edge.primitive
    steps = dx / ux if ux != 0 else dy / uy
    if steps < 0:
        steps = -steps
    return steps / edge.weight


def _edge_weight(p, q) -> int:
    return lattice_gcd((q[0] - p[0], q[1] - p[1]))


def _outward_normal(a, b) -> Tuple[int, int]:
    """Primitive outward normal of CCW cell edge a -> b."""
    t = (b[0] - a[0], b[1] - a[1])
    return primitive((t[1], -t[0]))


def corner_locus(f: TropicalPolynomial) -> PlaneTropicalCurve:
    """The locus where max(a_ij + i*x + j*y) is not locally affine.

    Dual to the Newton subdivision: each 2-cell gives a vertex at (-A, -B)
    of its supporting plane, interior cell edges give bounded segments,
    Newton-polygon boundary edges give rays along the outward normal, and
    collinear supports give complete lines.  A single monomial is globally
    affine and yields the empty curve.
    """
    sub = dual_subdivision(f)

    if sub.dim == 0:
        return PlaneTropicalCurve(vertices=(), edges=())

    if sub.dim == 1:
        base, u, coords = line_coordinates(f.support)
        lift = f.terms
        by_s = {s: p for p, s in coords.items()}
        norm = Fraction(u[0] * u[0] + u[1] * u[1])
        direction = primitive((-u[1], u[0]))
        lines = []
        for cell in sub.cells:
            p, q = cell.vertices
            s1, s2 = sorted((coords[p], coords[q]))
            w_break = Fraction(lift[by_s[s1]] - lift[by_s[s2]], s2 - s1)
            point = (w_break * u[0] / norm, w_break * u[1] / norm)
            lines.append(Line(point=point, direction=direction, weight=s2 - s1))
        return PlaneTropicalCurve(vertices=(), edges=tuple(lines))

    dual_vertex = {}
    for idx, cell in enumerate(sub.cells):
        A, B = cell.slope
        dual_vertex[idx] = (-A, -B)
    order = sorted(dual_vertex, key=lambda i: dual_vertex[i])
    vid = {cell_idx: k for k, cell_idx in enumerate(order)}
    vertices = tuple(dual_vertex[cell_idx] for cell_idx in order)

    edges: List[Edge] = []
    for (p, q), incident in sorted(sub.edges().items()):
        w = _edge_weight(p, q)
        if len(incident) == 2:
            c1, c2 = sorted(incident, key=lambda i: vid[i])
            v1, v2 = vertices[vid[c1]], vertices[vid[c2]]
            delta = (v2[0] - v1[0], v2[1] - v1[1])
            # duality: the curve edge is perpendicular to its dual cell edge
            assert delta[0] * (q[0] - p[0]) + delta[1] * (q[1] - p[1]) == 0
            num = (delta[0].numerator * delta[1].denominator,
                   delta[1].numerator * delta[0].denominator)
            edges.append(
                Segment(a=vid[c1], b=vid[c2], primitive=primitive(num), weight=w)
            )
        else:
            (c,) = incident
            cell = sub.cells[c]
            vs = cell.vertices
            k = vs.index(p) if (vs[(vs.index(p) + 1) % len(vs)] == q) else vs.index(q)
            a, b = vs[k], vs[(k + 1) % len(vs)]
            edges.append(
                Ray(v=vid[c], direction=_outward_normal(a, b), weight=w)
            )
    return PlaneTropicalCurve(vertices=vertices, edges=tuple(edges))


def _verify_witness(f: TropicalPolynomial, monomial, point) -> bool:
    return f.dominating_terms(*point) == frozenset({monomial})


def region_monomials(f: TropicalPolynomial) -> Dict[Tuple[int, int], Coord]:
    """One witness point per complement region, keyed by its dominant monomial.

    The regions of the curve complement biject with the corner points of the
    subdivision cells; monomials lifted below the hull (or landing in the
    interior of a cell face) dominate nowhere and are absent from the map.
    """
    sub = dual_subdivision(f)

    if sub.dim == 0:
        (m,) = sub.polygon
        return {m: (Fraction(0), Fraction(0))}

    if sub.dim == 1:
        base, u, coords = line_coordinates(f.support)
        lift = f.terms
        hull_s = sorted({coords[p] for cell in sub.cells for p in cell.vertices})
        by_s = {s: p for p, s in coords.items()}
        breaks = []
        for s1, s2 in zip(hull_s, hull_s[1:]):
            breaks.append(Fraction(lift[by_s[s1]] - lift[by_s[s2]], s2 - s1))
        norm = Fraction(u[0] * u[0] + u[1] * u[1])
        out: Dict[Tuple[int, int], Coord] = {}
        # region of the k-th hull point: w between adjacent breakpoints
        for k, s in enumerate(hull_s):
            if k == 0:
                w = breaks[0] - 1 if breaks else Fraction(0)
            elif k == len(hull_s) - 1:
                w = breaks[-1] + 1
            else:
                w = (breaks[k - 1] + breaks[k]) / 2
            point = (w * u[0] / norm, w * u[1] / norm)
            m = by_s[s]
            assert _verify_witness(f, m, point), "witness landed outside its region"
            out[m] = point
        return out

    corners: Dict[Tuple[int, int], List[int]] = {}
    for idx, cell in enumerate(sub.cells):
        for v in cell.vertices:
            corners.setdefault(v, []).append(idx)
    boundary_normals: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for (p, q), incident in sub.edges().items():
        if len(incident) != 1:
            continue
        (c,) = incident
        vs = sub.cells[c].vertices
        k = vs.index(p) if (vs[(vs.index(p) + 1) % len(vs)] == q) else vs.index(q)
        n = _outward_normal(vs[k], vs[(k + 1) % len(vs)])
        for end in (p, q):
            boundary_normals.setdefault(end, []).append(n)

    out = {}
    for m, cells in sorted(corners.items()):
        duals = [(-sub.cells[c].slope[0], -sub.cells[c].slope[1]) for c in cells]
        cx = sum(d[0] for d in duals) / len(duals)
        cy = sum(d[1] for d in duals) / len(duals)
        push = boundary_normals.get(m, [])
        px = sum(n[0] for n in push)
        py = sum(n[1] for n in push)
        scale = Fraction(1)
        for _ in range(64):
            point = (cx + scale * px, cy + scale * py)
            if _verify_witness(f, m, point):
                out[m] = point
                break
            scale *= 2
        else:
            raise AssertionError(f"no witness found for monomial {m}")
    return out
