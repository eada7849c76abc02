import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropgeom.semiring import (
    NEG_INF,
    EnergySpectrum,
    TropicalProjectivePoint,
    TropicalValue,
    free_energy,
    log_t,
    min_model,
    projective_equal,
    subtropical_add,
    trop_add,
    trop_mul,
)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=64)
tropicals = st.one_of(st.just(NEG_INF), rationals.map(TropicalValue))
BASES = [2.0, 10.0, 1e6, 0.5, 0.1]


class TestTropicalArithmetic:
    def test_examples(self):
        assert trop_add(3, 5) == TropicalValue(5)
        assert trop_add(NEG_INF, TropicalValue("7/2")) == TropicalValue("7/2")
        assert trop_add(4, 4) == TropicalValue(4)
        assert trop_mul(3, 5) == TropicalValue(8)
        assert trop_mul(NEG_INF, 123) == NEG_INF
        assert trop_mul(0, TropicalValue("7/2")) == TropicalValue("7/2")

    def test_operator_sugar(self):
        assert TropicalValue(3) + TropicalValue(5) == TropicalValue(5)
        assert TropicalValue(3) * TropicalValue(5) == TropicalValue(8)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            TropicalValue(0.5)

    def test_total_order(self):
        assert NEG_INF < TropicalValue(-10**9)
        assert not NEG_INF < NEG_INF
        assert TropicalValue(Fraction(1, 3)) < TropicalValue(Fraction(1, 2))

    @given(tropicals, tropicals)
    def test_commutativity(self, a, b):
        assert trop_add(a, b) == trop_add(b, a)
        assert trop_mul(a, b) == trop_mul(b, a)

    @given(tropicals, tropicals, tropicals)
    def test_associativity(self, a, b, c):
        assert trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c))
        assert trop_mul(trop_mul(a, b), c) == trop_mul(a, trop_mul(b, c))

    @given(tropicals, tropicals, tropicals)
    def test_distributivity(self, a, b, c):
        assert trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c))

    @given(tropicals)
    def test_identities_and_idempotency(self, a):
        assert trop_add(a, a) == a
        assert trop_add(a, NEG_INF) == a
        assert trop_mul(a, NEG_INF) == NEG_INF
        assert trop_mul(a, 0) == a

    def test_min_model(self):
        assert min_model(TropicalValue(3)) == TropicalValue(-3)
        with pytest.raises(ValueError):
            min_model(NEG_INF)


class TestLogBase:
    def test_examples(self):
        assert log_t(8, 2) == pytest.approx(3, rel=1e-12)
        assert log_t(0, 2) == -math.inf
        assert log_t(1, 10) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            log_t(-1, 2)

    def test_bad_base_rejected(self):
        for t in (0, -2, 1):
            with pytest.raises(ValueError):
                log_t(5, t)

    def test_small_base_zero(self):
        assert log_t(0, 0.5) == math.inf


class TestSubtropical:
    def test_examples(self):
        assert subtropical_add(0, 0, 2) == pytest.approx(1, rel=1e-12)
        expected = math.log(11) / math.log(10)  # defining formula, directly
        assert subtropical_add(1, 0, 10) == pytest.approx(expected, rel=1e-12)
        assert abs(subtropical_add(5, 0, 1e6) - 5) < 1e-5

    def test_bad_base(self):
        for t in (0, -1, 1):
            with pytest.raises(ValueError):
                subtropical_add(1, 2, t)

    @given(
        st.floats(-50, 50),
        st.floats(-50, 50),
        st.floats(-50, 50),
        st.sampled_from(BASES),
    )
    def test_distribution_law(self, x, y, z, t):
        lhs = subtropical_add(x, y, t) + z
        rhs = subtropical_add(x + z, y + z, t)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))

    @given(st.floats(-50, 50), st.floats(-50, 50), st.sampled_from(BASES))
    def test_limit_bounds(self, x, y, t):
        v = subtropical_add(x, y, t)
        tol = 1e-12 * max(1.0, abs(x), abs(y))
        if t > 1:
            gap = math.log(2) / math.log(t)
            assert max(x, y) - tol <= v <= max(x, y) + gap + tol
        else:
            gap = abs(math.log(2) / math.log(t))
            assert min(x, y) - gap - tol <= v <= min(x, y) + tol

    def test_overflow_safety(self):
        assert subtropical_add(1e8, 0, 10) == pytest.approx(1e8)
        assert subtropical_add(-1e8, 0, 10) == pytest.approx(0)


class TestFreeEnergy:
    def test_examples(self):
        assert free_energy(EnergySpectrum(levels=(0,), temperature=1)) == 0
        got = free_energy(EnergySpectrum(levels=(0, 1), temperature=1))
        assert got == pytest.approx(-math.log(1 + math.exp(-1)), rel=1e-12)
        cold = free_energy(EnergySpectrum(levels=(0, 1), temperature=0.01))
        assert abs(cold) < 1e-8  # bounded below by -T ln 2

    def test_errors(self):
        with pytest.raises(ValueError):
            EnergySpectrum(levels=(), temperature=1)
        with pytest.raises(ValueError):
            EnergySpectrum(levels=(0, 1), temperature=0)
        with pytest.raises(ValueError):
            EnergySpectrum(levels=(1, 0), temperature=1)

    @given(
        st.lists(st.floats(-20, 20), min_size=1, max_size=6),
        st.floats(0.05, 10),
    )
    def test_fold_equivalence_and_bounds(self, levels, T):
        levels = sorted(levels)
        spectrum = EnergySpectrum(levels=levels, temperature=T)
        F = free_energy(spectrum)
        t = math.exp(-1 / T)
        folded = levels[0]
        for e in levels[1:]:
            folded = subtropical_add(folded, e, t)
        assert abs(F - folded) <= 1e-10 * max(1.0, abs(F))
        assert F <= levels[0] + 1e-9
        assert F >= levels[0] - T * math.log(len(levels)) - 1e-9


finite_points = st.lists(
    st.one_of(st.just(None), rationals), min_size=1, max_size=4
).filter(lambda cs: any(c is not None for c in cs))


def _mk_point(cs):
    return TropicalProjectivePoint(
        coords=tuple(NEG_INF if c is None else TropicalValue(c) for c in cs)
    )


class TestProjectivePoints:
    def test_examples(self):
        p = _mk_point([0, 1, 2])
        q = _mk_point([-2, -1, 0])
        assert projective_equal(p, q)
        assert projective_equal(_mk_point([0, None]), _mk_point([5, None]))
        assert not projective_equal(_mk_point([0, 1]), _mk_point([0, 2]))

    def test_all_neg_inf_rejected(self):
        with pytest.raises(ValueError):
            TropicalProjectivePoint(coords=(NEG_INF, NEG_INF))

    def test_dimension_mismatch(self):
        assert not projective_equal(_mk_point([0, 1]), _mk_point([0, 1, 2]))

    @given(finite_points, rationals, rationals)
    def test_equivalence_relation(self, cs, lam, mu):
        p = _mk_point(cs)
        q = _mk_point([None if c is None else c + lam for c in cs])
        r = _mk_point([None if c is None else c + lam + mu for c in cs])
        assert projective_equal(p, p)
        assert projective_equal(p, q) and projective_equal(q, p)
        assert projective_equal(q, r)
        assert projective_equal(p, r)  # transitivity along the chain
