from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crgeom.scalars import GaussRational, format_coefficient

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gauss = st.builds(GaussRational, rationals, rationals)


def test_basic_arithmetic():
    a = GaussRational(Fraction(1, 2), Fraction(1, 3))
    b = GaussRational(2, -1)
    assert a + b == GaussRational(Fraction(5, 2), Fraction(-2, 3))
    assert a * GaussRational(0, 1) == GaussRational(Fraction(-1, 3),
                                                    Fraction(1, 2))
    assert (a / a) == GaussRational(1)
    assert -a + a == GaussRational(0)


def test_conjugate_and_complex():
    a = GaussRational(Fraction(3, 4), Fraction(-2, 5))
    assert a.conjugate().im == Fraction(2, 5)
    assert complex(a) == 0.75 - 0.4j


def test_power():
    i = GaussRational(0, 1)
    assert i ** 2 == GaussRational(-1)
    assert i ** 3 == GaussRational(0, -1)
    assert i ** 4 == GaussRational(1)
    assert GaussRational(Fraction(1, 2)) ** 3 == GaussRational(Fraction(1, 8))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussRational(1) / GaussRational(0)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(gauss)
def test_multiplicative_inverse(a):
    if not a.is_zero():
        assert (a / a) == GaussRational(1)
        assert a * (GaussRational(1) / a) == GaussRational(1)


@given(gauss, gauss)
def test_conjugation_is_a_ring_map(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_format_coefficient():
    assert format_coefficient(GaussRational(Fraction(3, 2))) == "3/2"
    assert format_coefficient(GaussRational(0, 1)) == "i"
    assert format_coefficient(GaussRational(0, -2)) == "-2*i"
    assert format_coefficient(GaussRational(Fraction(1, 2),
                                            Fraction(1, 3))) == "(1/2+1/3*i)"
    assert format_coefficient(GaussRational(-1)) == "-1"
