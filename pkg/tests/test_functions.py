from fractions import Fraction

import math

import pytest

from diotrans.errors import DomainError
from diotrans.functions import FunctionSpec, power_spec
from diotrans.intervals import Enclosure
from diotrans.radicals import Radical


def test_power_value_and_inverse_are_exact():
    f = power_spec(Fraction(1, 2), Fraction(-3))
    assert f.value(Fraction(2)) == Fraction(1, 16)
    assert f.inverse_at(Fraction(1, 16)) == 2
    assert not f.increasing


def test_power_with_radical_result():
    f = power_spec(1, Fraction(-1, 2))
    v = f.value(2)
    assert isinstance(v, Radical)
    assert v == Radical(Fraction(1, 2), 2)


def test_power_log_value_encloses_float():
    f = FunctionSpec("power_log", 1, -2, -1)
    t = Fraction(100)
    v = f.value(t)
    truth = 100.0**-2 / math.log(100.0)
    assert v.lo <= Fraction(truth).limit_denominator(10**12) <= v.hi or abs(
        float(v) - truth
    ) < 1e-12


def test_power_log_domain_restriction():
    # t^{1/2} (ln t)^{-1} is monotone only past exp(2)
    f = FunctionSpec("power_log", 1, Fraction(1, 2), -1)
    assert f.t_min > 7
    with pytest.raises(DomainError):
        f.value(2)


def test_exp_family_inverse_bisection():
    f = FunctionSpec("exp", 1, Fraction(-1, 10))
    target = f.value(Fraction(5))
    inv = f.inverse_at(target)
    assert Fraction(5) in inv or abs(float(inv) - 5) < 1e-9


def test_bisection_inverse_of_power_log():
    f = FunctionSpec("power_log", 1, -2, -1)
    s = f.value(Fraction(50))
    inv = f.inverse_at(s)
    assert abs(float(inv) - 50) < 1e-6


def test_validation_errors():
    with pytest.raises(DomainError):
        FunctionSpec("power", 1, 0)
    with pytest.raises(DomainError):
        FunctionSpec("power", -1, -1)
    with pytest.raises(DomainError):
        FunctionSpec("power", 1, -1, log_exponent=1)
    with pytest.raises(DomainError):
        FunctionSpec("power_log", 1, -1, 0)
    with pytest.raises(DomainError):
        FunctionSpec("nosuch", 1, -1)


def test_describe_mentions_parameters():
    assert "t^(-2)" in power_spec(1, -2).describe()
