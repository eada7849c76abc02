import random
from fractions import Fraction
from math import inf

import pytest

from tropgeom.curves import (
    Line,
    PlaneTropicalCurve,
    Ray,
    Segment,
    corner_locus,
    lattice_length,
    region_monomials,
)
from tropgeom.geometry import lattice_gcd
from tropgeom.polynomials import TropicalPolynomial, dual_subdivision

from helpers import grid_disagreements, random_polynomial

LINE = TropicalPolynomial({(0, 0): 0, (1, 0): 0, (0, 1): 0})

CUBIC_SUPPORT = {(i, j) for i in range(4) for j in range(4) if i + j <= 3}


def generic_cubic(seed=5):
    rng = random.Random(seed)
    return TropicalPolynomial(
        {p: Fraction(rng.randint(-48, 48), 16) for p in sorted(CUBIC_SUPPORT)}
    )


class TestGoldenLine:
    def test_vertex_and_rays(self):
        c = corner_locus(LINE)
        assert c.vertices == ((Fraction(0), Fraction(0)),)
        dirs = sorted(e.direction for e in c.edges)
        assert dirs == [(-1, 0), (0, -1), (1, 1)]
        assert all(isinstance(e, Ray) and e.weight == 1 for e in c.edges)
        assert c.degree() == 1


class TestDegenerate:
    def test_single_monomial_empty(self):
        c = corner_locus(TropicalPolynomial({(2, 1): 3}))
        assert c.is_empty
        assert c.check_balancing() == []

    def test_two_monomial_vertical_line_weight_2(self):
        c = corner_locus(TropicalPolynomial({(0, 0): 0, (2, 0): 0}))
        assert len(c.edges) == 1
        (e,) = c.edges
        assert isinstance(e, Line)
        assert e.direction in ((0, 1), (0, -1))
        assert e.weight == 2
        assert e.point[0] == 0  # the line x = 0
        f = TropicalPolynomial({(0, 0): 0, (2, 0): 0})
        assert grid_disagreements(f, c, cells=40) == 0

    def test_two_parallel_lines(self):
        f = TropicalPolynomial({(0, 0): 0, (1, 0): 1, (2, 0): 0})
        c = corner_locus(f)
        assert len(c.edges) == 2
        assert all(isinstance(e, Line) and e.weight == 1 for e in c.edges)
        assert grid_disagreements(f, c, cells=40) == 0


class TestBalancing:
    def test_corner_locus_balanced(self):
        rng = random.Random(3)
        for _ in range(120):
            assert corner_locus(random_polynomial(rng)).check_balancing() == []

    def test_hand_built_y(self):
        v = [(Fraction(0), Fraction(0))]
        edges = [
            Ray(v=0, direction=(1, 0), weight=1),
            Ray(v=0, direction=(0, 1), weight=1),
            Ray(v=0, direction=(-1, -1), weight=1),
        ]
        assert PlaneTropicalCurve(v, edges).check_balancing() == []

    def test_unbalanced_y_reports_vertex(self):
        v = [(Fraction(0), Fraction(0))]
        edges = [
            Ray(v=0, direction=(1, 0), weight=2),
            Ray(v=0, direction=(0, 1), weight=1),
            Ray(v=0, direction=(-1, -1), weight=1),
        ]
        violations = PlaneTropicalCurve(v, edges).check_balancing()
        assert len(violations) == 1
        assert violations[0].vertex == 0
        assert violations[0].residue == (1, 0)


class TestDuality:
    def test_vertex_count_and_perpendicularity(self):
        rng = random.Random(7)
        for _ in range(120):
            f = random_polynomial(rng)
            sub = dual_subdivision(f)
            c = corner_locus(f)
            if sub.dim == 2:
                assert len(c.vertices) == len(sub.cells)

    def test_boundary_ray_weights_match_polygon_sides(self):
        rng = random.Random(9)
        for _ in range(120):
            f = random_polynomial(rng)
            sub = dual_subdivision(f)
            if sub.dim != 2:
                continue
            c = corner_locus(f)
            poly = sub.polygon
            for k in range(len(poly)):
                a, b = poly[k], poly[(k + 1) % len(poly)]
                t = (b[0] - a[0], b[1] - a[1])
                normal = (t[1] // lattice_gcd(t), -t[0] // lattice_gcd(t))
                side_length = lattice_gcd(t)
                rays = sum(
                    e.weight
                    for e in c.edges
                    if isinstance(e, Ray) and e.direction == normal
                )
                assert rays == side_length

    def test_shift_invariance(self):
        rng = random.Random(13)
        for _ in range(60):
            f = random_polynomial(rng)
            shift = Fraction(rng.randint(-40, 40), 8)
            assert corner_locus(f).same_curve(corner_locus(f.shifted(shift)))


class TestGridOracle:
    def test_small_random_suite(self):
        rng = random.Random(17)
        for _ in range(40):
            f = random_polynomial(rng)
            assert grid_disagreements(f, corner_locus(f), cells=60) == 0

    def test_cubic_with_weight_two_edge(self):
        # coefficients chosen so the dual subdivision has lattice-length-2 edges
        f = TropicalPolynomial(
            {
                (0, 0): -4,
                (1, 0): -2,
                (2, 0): 6,
                (3, 0): Fraction(3, 2),
                (0, 1): 3,
                (1, 1): Fraction(-9, 2),
                (2, 1): 1,
                (0, 2): 6,
                (1, 2): Fraction(3, 2),
                (0, 3): -5,
            }
        )
        c = corner_locus(f)
        assert c.degree() == 3
        assert c.check_balancing() == []
        assert any(isinstance(e, Segment) and e.weight == 2 for e in c.edges)
        assert grid_disagreements(f, c, cells=60) == 0


class TestRegions:
    def test_line_three_regions(self):
        regions = region_monomials(LINE)
        assert set(regions) == {(0, 0), (1, 0), (0, 1)}

    def test_single_monomial(self):
        regions = region_monomials(TropicalPolynomial({(2, 1): 3}))
        assert set(regions) == {(2, 1)}

    def test_generic_cubic_matches_hull_corners(self):
        f = generic_cubic()
        sub = dual_subdivision(f)
        corners = {v for cell in sub.cells for v in cell.vertices}
        regions = region_monomials(f)
        assert set(regions) == corners
        assert len(regions) in (9, 10)

    def test_witnesses_strictly_dominate(self):
        rng = random.Random(19)
        for _ in range(80):
            f = random_polynomial(rng)
            for monomial, witness in region_monomials(f).items():
                assert f.dominating_terms(*witness) == frozenset({monomial})


class TestLatticeLength:
    def _one_seg_curve(self, a, b, primitive, weight):
        verts = [tuple(map(Fraction, a)), tuple(map(Fraction, b))]
        seg = Segment(a=0, b=1, primitive=primitive, weight=weight)
        return PlaneTropicalCurve(verts, [seg]), seg

    def test_horizontal(self):
        c, e = self._one_seg_curve((0, 0), (3, 0), (1, 0), 1)
        assert lattice_length(c, e) == Fraction(3)

    def test_diagonal_shorter_by_sqrt2(self):
        c, e = self._one_seg_curve((0, 0), (1, 1), (1, 1), 1)
        assert lattice_length(c, e) == Fraction(1)

    def test_weight_two_halves(self):
        c, e = self._one_seg_curve((0, 0), (0, 2), (0, 1), 2)
        assert lattice_length(c, e) == Fraction(1)

    def test_ray_infinite(self):
        c = corner_locus(LINE)
        assert lattice_length(c, c.edges[0]) == inf

    def test_zero_length_rejected(self):
        with pytest.raises(ValueError):
            self._one_seg_curve((0, 0), (0, 0), (0, 1), 1)


class TestJson:
    def test_round_trip(self):
        for f in (LINE, generic_cubic(), TropicalPolynomial({(0, 0): 0, (2, 0): 0})):
            c = corner_locus(f)
            again = PlaneTropicalCurve.from_json(c.to_json())
            assert again.same_curve(c)
            assert again.to_json() == c.to_json()
