import math
from fractions import Fraction

import pytest

from diotrans.intervals import Enclosure
from diotrans.radicals import Radical


def test_point_enclosure_arithmetic_is_exact():
    a = Enclosure(Fraction(1, 3))
    b = Enclosure(Fraction(1, 6))
    assert (a + b).lo == Fraction(1, 2) == (a + b).hi
    assert (a - b).midpoint() == Fraction(1, 6)
    assert (a * b).lo == Fraction(1, 18)
    assert (a / b).lo == 2


def test_interval_multiplication_hull():
    a = Enclosure(-1, 2)
    b = Enclosure(-3, 1)
    prod = a * b
    assert prod.lo == -6 and prod.hi == 3


def test_division_by_straddling_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Enclosure(1) / Enclosure(-1, 1)


def test_exp_ln_roundtrip_contains_truth():
    x = Enclosure(Fraction(3, 7))
    y = x.exp().ln()
    assert Fraction(3, 7) in y
    assert y.width() < Fraction(1, 10**30)


def test_ln_of_nonpositive_raises():
    with pytest.raises(ValueError):
        Enclosure(0, 1).ln()


def test_integer_pow_is_exact():
    v = Enclosure(Fraction(2, 3)).pow(Fraction(3))
    assert v.lo == Fraction(8, 27) == v.hi


def test_fractional_pow_encloses():
    v = Enclosure(2).pow(Fraction(1, 2))
    assert v.lo < Fraction(1414214, 10**6) < v.hi or math.isclose(float(v), math.sqrt(2))
    assert abs(float(v) - math.sqrt(2)) < 1e-12


def test_radical_conversion_tight():
    e = Enclosure.of(Radical(2, 2))
    assert e.width() < Fraction(1, 10**30)
    assert e.lo**2 <= 2 <= e.hi**2


def test_ordering_queries():
    a = Enclosure(1, 2)
    b = Enclosure(3, 4)
    assert a.surely_le(b) and a.surely_lt(b)
    assert a.possibly_le(b) and not b.surely_le(a)


def test_empty_enclosure_rejected():
    with pytest.raises(ValueError):
        Enclosure(2, 1)
