"""Byte-exact serialization against committed golden files."""

from fractions import Fraction
from pathlib import Path

from opqmod.module_e import ModuleElement
from opqmod.poly import Polynomial, rho
from opqmod.scalars import GaussianRational as GR
from opqmod.weyl import WeylOperator, laplacian, weyl_compose

GOLDEN = Path(__file__).parent / "golden"


def build_polynomial():
    p, q = 2, 2
    x1 = Polynomial.x_var(1, p, q)
    y2 = Polynomial.y_var(2, p, q)
    return (x1 + y2.scale(GR(Fraction(1, 3), Fraction(-1, 2)))) * x1 + Polynomial.constant(
        Fraction(7, 5), p, q
    )


def build_operator():
    p, q = 2, 2
    x1 = Polynomial.x_var(1, p, q)
    y2 = Polynomial.y_var(2, p, q)
    return weyl_compose(
        WeylOperator.from_polynomial(x1 * y2), laplacian("x", p, q)
    ) + WeylOperator.dx(2, p, q).scale(GR(0, Fraction(3, 4)))


def build_module_element():
    p, q = 2, 2
    x1 = Polynomial.x_var(1, p, q)
    return ModuleElement(
        p,
        q,
        {
            Fraction(3, 2): x1 * x1,
            Fraction(5, 2): rho("y", p, q).scale(GR(-2, 1)),
        },
    )


def test_polynomial_golden():
    text = build_polynomial().to_text() + "\n"
    assert text == (GOLDEN / "polynomial.txt").read_text()
    assert Polynomial.from_text(text) == build_polynomial()


def test_weyl_operator_golden():
    text = build_operator().to_text() + "\n"
    assert text == (GOLDEN / "weyl_operator.txt").read_text()
    assert WeylOperator.from_text(text) == build_operator()


def test_module_element_golden():
    text = build_module_element().to_text() + "\n"
    assert text == (GOLDEN / "module_element.txt").read_text()
    assert ModuleElement.from_text(text) == build_module_element()
