from fractions import Fraction

import pytest

from opqmod.scalars import (
    GaussianRational,
    falling_factorial,
    rising_factorial,
)


def test_arithmetic_is_exact():
    a = GaussianRational(Fraction(1, 3), Fraction(2, 7))
    b = GaussianRational(Fraction(-5, 2), 1)
    assert (a + b) - b == a
    assert a * b / b == a
    assert -(-a) == a
    assert a - a == 0


def test_imaginary_unit_squares_to_minus_one():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert i.conjugate() == GaussianRational(0, -1)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_coercion_and_equality_with_rationals():
    assert GaussianRational(Fraction(3, 4)) == Fraction(3, 4)
    assert GaussianRational(2) + 1 == 3
    assert GaussianRational(1, 1) != 1


def test_text_round_trip():
    values = [
        GaussianRational(0),
        GaussianRational(Fraction(3, 4), Fraction(-1, 2)),
        GaussianRational(-2, 5),
    ]
    for v in values:
        assert GaussianRational.from_text(v.to_text()) == v
    assert GaussianRational(Fraction(3, 4), Fraction(1, 2)).to_text() == "3/4+1/2·i"


def test_factorials():
    assert rising_factorial(Fraction(3, 2), 0) == 1
    assert rising_factorial(Fraction(3, 2), 2) == Fraction(15, 4)
    assert falling_factorial(Fraction(4), 2) == 12
    assert falling_factorial(Fraction(2), 3) == 0
