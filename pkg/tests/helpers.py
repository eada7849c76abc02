"""Shared test utilities: exact grid oracle and random generators.

The grid oracle flags a grid point as non-affine when a central second
difference of the polynomial's evaluation is positive.  The step h is
chosen below the denominator bound of any breakpoint along a grid line, so
the stencil can only cross the corner locus at its center: the flag is then
exactly equivalent to membership in the curve.  All arithmetic runs on a
common integer scale (numpy int64), so there is no rounding anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

import numpy as np

from tropgeom.curves import Line, PlaneTropicalCurve, Ray, Segment
from tropgeom.polynomials import TropicalPolynomial

TRIANGLE_4 = [(i, j) for i in range(5) for j in range(5) if i + j <= 4]


def random_polynomial(rng: random.Random, support_pool=TRIANGLE_4, denom=16):
    """Random support in the pool with coefficients p/denom, p in [-3d, 3d]."""
    size = rng.randint(1, len(support_pool))
    support = rng.sample(support_pool, size)
    return TropicalPolynomial(
        {p: Fraction(rng.randint(-3 * denom, 3 * denom), denom) for p in support}
    )


def make_grid(cells: int, lo=Fraction(-6), hi=Fraction(6)):
    step = (hi - lo) / cells
    return [lo + k * step for k in range(cells)]


def exact_step(f: TropicalPolynomial, xs, ys) -> Fraction:
    """h small enough that stencils only meet the corner locus at their center.

    Any breakpoint along a grid line solves a pairwise monomial tie, so its
    denominator divides lcm(coefficient denoms, grid denoms) * max exponent
    difference; half of that reciprocal does the job.
    """
    denom = 1
    for a in f.terms.values():
        denom = lcm(denom, a.denominator)
    for v in list(xs) + list(ys):
        denom = lcm(denom, Fraction(v).denominator)
    support = sorted(f.support)
    max_delta = 1
    for i1, j1 in support:
        for i2, j2 in support:
            max_delta = max(max_delta, abs(i1 - i2), abs(j1 - j2))
    return Fraction(1, 2 * denom * max_delta)


def finite_difference_flags(f: TropicalPolynomial, xs, ys, h: Fraction) -> np.ndarray:
    """Boolean (len(xs), len(ys)) array: some central second difference > 0."""
    scale = lcm(
        h.denominator,
        *[a.denominator for a in f.terms.values()],
        *[Fraction(v).denominator for v in xs],
        *[Fraction(v).denominator for v in ys],
    )
    X = np.array([int(Fraction(v) * scale) for v in xs], dtype=np.int64)
    Y = np.array([int(Fraction(v) * scale) for v in ys], dtype=np.int64)
    H = int(h * scale)
    terms = [(i, j, int(a * scale)) for (i, j), a in f.terms.items()]

    def fgrid(xcol, yrow):
        vals = None
        for i, j, a in terms:
            cur = a + i * xcol[:, None] + j * yrow[None, :]
            vals = cur if vals is None else np.maximum(vals, cur)
        return vals

    base = fgrid(X, Y)
    d2x = fgrid(X + H, Y) + fgrid(X - H, Y) - 2 * base
    d2y = fgrid(X, Y + H) + fgrid(X, Y - H) - 2 * base
    assert (d2x >= 0).all() and (d2y >= 0).all(), "convexity violated"
    return (d2x > 0) | (d2y > 0)


def curve_membership(curve: PlaneTropicalCurve, xs, ys) -> np.ndarray:
    """Boolean (len(xs), len(ys)) array: grid point lies on some edge, exactly."""
    mask = np.zeros((len(xs), len(ys)), dtype=bool)
    xat = {x: k for k, x in enumerate(xs)}
    yat = {y: k for k, y in enumerate(ys)}

    def edge_data(e):
        if isinstance(e, Segment):
            a = curve.vertices[e.a]
            b = curve.vertices[e.b]
            d = (b[0] - a[0], b[1] - a[1])
            return a, d, Fraction(0), Fraction(1)
        if isinstance(e, Ray):
            a = curve.vertices[e.v]
            return a, e.direction, Fraction(0), None
        return e.point, e.direction, None, None

    for e in curve.edges:
        anchor, d, t_lo, t_hi = edge_data(e)
        if d[0] != 0:
            for x in xs:
                t = (x - anchor[0]) / d[0]
                if (t_lo is not None and t < t_lo) or (t_hi is not None and t > t_hi):
                    continue
                y = anchor[1] + t * d[1]
                if y in yat:
                    mask[xat[x], yat[y]] = True
        else:
            if anchor[0] not in xat:
                continue
            col = xat[anchor[0]]
            for y in ys:
                t = (y - anchor[1]) / d[1]
                if (t_lo is not None and t < t_lo) or (t_hi is not None and t > t_hi):
                    continue
                mask[col, yat[y]] = True
    return mask


def grid_disagreements(f: TropicalPolynomial, curve: PlaneTropicalCurve, cells: int) -> int:
    xs = make_grid(cells)
    ys = make_grid(cells)
    h = exact_step(f, xs, ys)
    flags = finite_difference_flags(f, xs, ys, h)
    member = curve_membership(curve, xs, ys)
    return int((flags != member).sum())


def random_metric_graph(rng: random.Random):
    """Random connected multigraph with valid lengths and leaf flags."""
    from tropgeom.metric_graphs import MetricGraph
    from math import inf

    core = rng.randint(1, 4)
    edges = []
    for v in range(1, core):
        edges.append([rng.randrange(v), v, None])
    for _ in range(rng.randint(0, 3)):
        a, b = rng.randrange(core), rng.randrange(core)
        edges.append([min(a, b), max(a, b), None])
    n = core
    marked, punctures = set(), set()
    for _ in range(rng.randint(0, 3)):
        attach = rng.randrange(core)
        edges.append([attach, n, None])
        roll = rng.random()
        if roll < 0.3:
            marked.add(n)
        elif roll < 0.5:
            punctures.add(n)
        n += 1
    val = [0] * n
    for a, b, _ in edges:
        if a == b:
            val[a] += 2
        else:
            val[a] += 1
            val[b] += 1
    fixed = []
    for a, b, _ in edges:
        if val[a] == 1 or val[b] == 1:
            fixed.append((a, b, inf))
        else:
            fixed.append((a, b, Fraction(rng.randint(1, 40), rng.randint(1, 8))))
    marked = {v for v in marked if val[v] == 1}
    punctures = {v for v in punctures if val[v] == 1 and v not in marked}
    return MetricGraph(
        num_vertices=n, edges=tuple(fixed), marked=marked, punctures=punctures
    )
