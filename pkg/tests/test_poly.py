import random
from fractions import Fraction

import pytest

from opqmod.poly import (
    AmbientMismatch,
    Polynomial,
    grlex_key,
    poly_divide,
    radius_sq,
    rho,
)
from opqmod.scalars import GaussianRational


def random_poly(rng, p, q, terms=4, max_deg=3):
    out = Polynomial.zero(p, q)
    for _ in range(terms):
        mono = tuple(rng.randint(0, max_deg) for _ in range(p + q))
        coeff = GaussianRational(
            Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
            Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
        )
        out = out + Polynomial(p, q, {mono: coeff})
    return out


def test_zero_coefficients_are_never_stored():
    p = Polynomial(1, 1, {(1, 0): GaussianRational(1)})
    assert (p - p).terms == {}
    assert not (p - p).terms


def test_graded_lex_order_sorts_by_degree_then_lex():
    monos = [(0, 2), (1, 0), (0, 0), (2, 0), (1, 1)]
    ordered = sorted(monos, key=grlex_key)
    assert ordered == [(0, 0), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_product_and_euler_degree():
    x1 = Polynomial.x_var(1, 2, 1)
    y1 = Polynomial.y_var(1, 2, 1)
    f = (x1 + y1) * (x1 - y1)
    assert f == x1 * x1 - y1 * y1
    assert f.degree() == 2 and f.is_homogeneous()


def test_ambient_mismatch_raises():
    with pytest.raises(AmbientMismatch):
        Polynomial.one(1, 1) + Polynomial.one(2, 1)


def test_divide_examples():
    p, q = 3, 1
    rx2 = radius_sq("x", p, q)
    x1 = Polynomial.x_var(1, p, q)
    assert poly_divide(rx2 * x1, rx2) == x1
    assert poly_divide(x1, rx2) is None
    prod = rho("x", p, q) * rho("y", p, q)
    f = x1 * x1 - Polynomial.x_var(2, p, q) * Polynomial.x_var(2, p, q)
    assert poly_divide(prod * f, prod) == f
    with pytest.raises(ZeroDivisionError):
        poly_divide(x1, Polynomial.zero(p, q))


def test_divide_multiply_back_randomized():
    rng = random.Random(11)
    for _ in range(25):
        p, q = rng.choice([(1, 1), (2, 2), (3, 1)])
        f = random_poly(rng, p, q)
        g = random_poly(rng, p, q, terms=3, max_deg=2)
        if g.is_zero():
            continue
        quotient = poly_divide(f * g, g)
        assert quotient is not None
        assert quotient * g == f * g


def test_evaluate_agrees_with_expansion():
    rng = random.Random(5)
    p, q = 2, 2
    f = random_poly(rng, p, q)
    g = random_poly(rng, p, q)
    pt = [Fraction(1, 2), Fraction(-2, 3), Fraction(3), Fraction(0)]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


def test_homogeneous_components_recompose():
    rng = random.Random(17)
    f = random_poly(rng, 2, 1, terms=6)
    parts = f.homogeneous_components()
    total = Polynomial.zero(2, 1)
    for d, part in parts.items():
        assert part.is_homogeneous() and part.degree() == d
        total = total + part
    assert total == f


def test_embed_places_blocks_correctly():
    h = Polynomial.x_var(2, 2, 0) * Polynomial.x_var(1, 2, 0)
    wide = h.embed(4, 3)
    assert wide == Polynomial.x_var(2, 4, 3) * Polynomial.x_var(1, 4, 3)
    hy = Polynomial.y_var(1, 0, 2)
    assert hy.embed(3, 2) == Polynomial.y_var(1, 3, 2)


def test_serialization_round_trip_randomized():
    rng = random.Random(23)
    for _ in range(20):
        p, q = rng.choice([(1, 1), (2, 2), (2, 4)])
        f = random_poly(rng, p, q, terms=5)
        assert Polynomial.from_text(f.to_text()) == f


def test_serialization_is_deterministic():
    f = Polynomial(
        2,
        2,
        {
            (1, 0, 0, 0): GaussianRational(1),
            (0, 0, 2, 0): GaussianRational(Fraction(-1, 2)),
            (0, 0, 0, 0): GaussianRational(0, 1),
        },
    )
    expected = "\n".join(
        [
            "polynomial p=2 q=2",
            "1 : 0/1+1/1·i",
            "x1 : 1/1+0/1·i",
            "y1^2 : -1/2+0/1·i",
        ]
    )
    assert f.to_text() == expected
