"""The max-plus semiring over exact rationals, and its finite-base deformation.

Two layers live here on purpose.  The combinatorial layer (`TropicalValue`,
`trop_add`, `trop_mul`, projective points) is exact rational arithmetic so
that downstream corner-locus and balancing checks never see rounding.  The
deformation layer (`log_t`, `subtropical_add`, `free_energy`) involves
transcendental functions and works in ordinary floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rationalish = Union[int, str, Fraction, "TropicalValue"]


class TropicalValue:
    """A rational number or -infinity under (max, +).

    `a + b` is the tropical sum max(a, b), `a * b` is the tropical product
    a + b as rationals.  NEG_INF is the additive identity and the
    multiplicative absorber; 0 is the multiplicative unit.  Equality and
    ordering are exact.
    """

    __slots__ = ("_v",)

    def __init__(self, value):
        if value is None:
            self._v = None
        elif isinstance(value, TropicalValue):
            self._v = value._v
        elif isinstance(value, float):
            raise TypeError("floats are not exact; use Fraction, int, or 'p/q'")
        else:
            self._v = Fraction(value)

    @property
    def is_neg_inf(self) -> bool:
        return self._v is None

    @property
    def finite_value(self) -> Fraction:
        if self._v is None:
            raise ValueError("NEG_INF has no finite value")
        return self._v

    def __add__(self, other):  # tropical sum
        return trop_add(self, other)

    __radd__ = __add__

    def __mul__(self, other):  # tropical product
        return trop_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TropicalValue):
            try:
                other = TropicalValue(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._v == other._v

    def __lt__(self, other):
        other = as_tropical(other)
        if self._v is None:
            return other._v is not None
        if other._v is None:
            return False
        return self._v < other._v

    def __le__(self, other):
        return self == as_tropical(other) or self < other

    def __gt__(self, other):
        return as_tropical(other) < self

    def __ge__(self, other):
        return as_tropical(other) <= self

    def __hash__(self):
        return hash(self._v)

    def __repr__(self):
        if self._v is None:
            return "NEG_INF"
        return f"TropicalValue({self._v})"


NEG_INF = TropicalValue(None)


def as_tropical(x: Rationalish) -> TropicalValue:
    return x if isinstance(x, TropicalValue) else TropicalValue(x)


def trop_add(a: Rationalish, b: Rationalish) -> TropicalValue:
    """Tropical sum: max of the two values."""
    a, b = as_tropical(a), as_tropical(b)
    return b if a < b else a


def trop_mul(a: Rationalish, b: Rationalish) -> TropicalValue:
    """Tropical product: rational sum, with NEG_INF absorbing."""
    a, b = as_tropical(a), as_tropical(b)
    if a.is_neg_inf or b.is_neg_inf:
        return NEG_INF
    return TropicalValue(a.finite_value + b.finite_value)


def min_model(x: Rationalish) -> TropicalValue:
    """The isomorphism x -> -x onto the min-plus model of the semiring.

    Defined for finite values only: the min-plus additive identity would be
    +infinity, which this type deliberately does not represent.
    """
    x = as_tropical(x)
    if x.is_neg_inf:
        raise ValueError("min_model is defined on finite tropical values")
    return TropicalValue(-x.finite_value)


def _check_base(t: float) -> None:
    if not (t > 0):
        raise ValueError(f"base must be positive, got {t}")
    if t == 1:
        raise ValueError("base 1 is excluded")


def log_t(modulus: float, t: float) -> float:
    """Base-t logarithm of a nonnegative modulus, as an extended real.

    modulus 0 maps to -inf for t > 1 (and to +inf for t < 1, where the
    logarithm is decreasing).
    """
    _check_base(t)
    if modulus < 0:
        raise ValueError(f"modulus must be nonnegative, got {modulus}")
    if modulus == 0:
        return -math.inf if t > 1 else math.inf
    return math.log(modulus) / math.log(t)


def subtropical_add(x: float, y: float, t: float) -> float:
    """log_t(t**x + t**y), evaluated without overflow.

    Factoring out the dominant term gives max(x,y) + log_t(1 + t**-|x-y|)
    for t > 1, and the mirror formula around min(x,y) for t < 1, so the
    result never exponentiates a large positive argument.  For t > 1 the
    value lies in [max(x,y), max(x,y) + log_t(2)]; for t < 1 it lies in
    [min(x,y) - |log_t(2)|, min(x,y)].
    """
    _check_base(t)
    lnt = math.log(t)
    d = abs(x - y)
    if t > 1:
        return max(x, y) + math.log1p(t ** (-d)) / lnt
    return min(x, y) + math.log1p(t ** d) / lnt


@dataclass(frozen=True)
class EnergySpectrum:
    """Nondecreasing energy levels plus a positive temperature (energy units)."""

    levels: Tuple[float, ...]
    temperature: float

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(float(e) for e in self.levels))
        if not self.levels:
            raise ValueError("spectrum must be non-empty")
        if any(b < a for a, b in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be nondecreasing")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")


def free_energy(spectrum: EnergySpectrum) -> float:
    """-T * ln(sum_j exp(-E_j / T)), computed with the ground state factored out.

    Equals the left fold of subtropical_add over the levels at base
    t = exp(-1/T), and satisfies E_0 - T ln(k) <= F <= E_0 for k levels.
    """
    T = spectrum.temperature
    e0 = spectrum.levels[0]
    acc = sum(math.exp(-(e - e0) / T) for e in spectrum.levels)
    return e0 - T * math.log(acc)


@dataclass(frozen=True)
class TropicalProjectivePoint:
    """Homogeneous coordinates in tropical projective space.

    At least one coordinate must be finite; (NEG_INF, ..., NEG_INF) is not
    a point.
    """

    coords: Tuple[TropicalValue, ...]

    def __post_init__(self):
        coords = tuple(as_tropical(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("point needs at least one coordinate")
        if all(c.is_neg_inf for c in coords):
            raise ValueError("all coordinates are NEG_INF; not a projective point")

    def __len__(self):
        return len(self.coords)


def projective_equal(p: TropicalProjectivePoint, q: TropicalProjectivePoint) -> bool:
    """True iff q = lambda + p coordinatewise for a single real lambda.

    NEG_INF coordinates must match exactly; lambda is read off the first
    pair of finite coordinates.
    """
    if len(p) != len(q):
        return False
    shift = None
    for a, b in zip(p.coords, q.coords):
        if a.is_neg_inf != b.is_neg_inf:
            return False
        if a.is_neg_inf:
            continue
        d = b.finite_value - a.finite_value
        if shift is None:
            shift = d
        elif shift != d:
            return False
    return True
