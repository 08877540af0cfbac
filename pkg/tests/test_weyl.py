import random
from fractions import Fraction

import pytest

from opqmod.poly import AmbientMismatch, Polynomial, radius_sq
from opqmod.scalars import GaussianRational
from opqmod.weyl import (
    WeylOperator,
    euler,
    laplacian,
    radius_sq_operator,
    weyl_apply,
    weyl_commutator,
    weyl_compose,
)

from test_poly import random_poly


def mult(f: Polynomial) -> WeylOperator:
    return WeylOperator.from_polynomial(f)


def random_operator(rng, p, q, terms=3, max_deg=2):
    out = WeylOperator.zero(p, q)
    for _ in range(terms):
        mono = tuple(rng.randint(0, max_deg) for _ in range(p + q))
        deriv = tuple(rng.randint(0, max_deg) for _ in range(p + q))
        coeff = GaussianRational(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            rng.randint(-1, 1),
        )
        out = out + WeylOperator(p, q, {(mono, deriv): coeff})
    return out


def test_compose_derivative_past_coordinate():
    p, q = 2, 2
    x1 = Polynomial.x_var(1, p, q)
    d1 = WeylOperator.dx(1, p, q)
    assert weyl_compose(d1, mult(x1)) == weyl_compose(mult(x1), d1) + WeylOperator.identity(p, q)
    assert weyl_compose(WeylOperator.identity(p, q), d1) == d1


def test_compose_laplacian_with_radius():
    p, q = 3, 2
    comp = weyl_compose(laplacian("x", p, q), radius_sq_operator("x", p, q))
    image = weyl_apply(comp, Polynomial.one(p, q))
    assert image == Polynomial.constant(2 * p, p, q)


def test_commutator_canonical_pair_and_self():
    p, q = 1, 1
    d1 = WeylOperator.dx(1, p, q)
    x1 = mult(Polynomial.x_var(1, p, q))
    assert weyl_commutator(d1, x1) == WeylOperator.identity(p, q)
    a = weyl_compose(d1, x1)
    assert weyl_commutator(a, a).is_zero()


def test_commutator_rotations():
    p, q = 3, 1

    def rot(i, j):
        xi = mult(Polynomial.x_var(i, p, q))
        xj = mult(Polynomial.x_var(j, p, q))
        return weyl_compose(xi, WeylOperator.dx(j, p, q)) - weyl_compose(
            xj, WeylOperator.dx(i, p, q)
        )

    assert weyl_commutator(rot(1, 2), rot(2, 3)) == rot(1, 3)


def test_apply_examples():
    p, q = 2, 2
    rx2 = radius_sq("x", p, q)
    assert weyl_apply(laplacian("x", p, q), rx2) == Polynomial.constant(2 * p, p, q)
    f = Polynomial.x_var(1, p, q) ** 2 * Polynomial.x_var(2, p, q)
    assert weyl_apply(euler("x", p, q), f) == f.scale(3)
    x1 = Polynomial.x_var(1, p, q)
    y1 = Polynomial.y_var(1, p, q)
    op = mult(x1 * y1) + weyl_compose(WeylOperator.dx(1, p, q), WeylOperator.dy(1, p, q))
    assert weyl_apply(op, x1 * y1) == x1 * x1 * y1 * y1 + Polynomial.one(p, q)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        weyl_compose(WeylOperator.identity(1, 1), WeylOperator.identity(2, 1))
    with pytest.raises(AmbientMismatch):
        weyl_apply(WeylOperator.identity(1, 1), Polynomial.one(2, 1))


def test_compose_agrees_with_sequential_application():
    rng = random.Random(31)
    for _ in range(30):
        p, q = rng.choice([(1, 1), (2, 2), (2, 1)])
        a = random_operator(rng, p, q)
        b = random_operator(rng, p, q)
        f = random_poly(rng, p, q, terms=4, max_deg=3)
        assert weyl_apply(weyl_compose(a, b), f) == weyl_apply(a, weyl_apply(b, f))


def test_jacobi_identity_randomized():
    rng = random.Random(37)
    for _ in range(12):
        p, q = 2, 1
        a = random_operator(rng, p, q, terms=2)
        b = random_operator(rng, p, q, terms=2)
        c = random_operator(rng, p, q, terms=2)
        total = (
            weyl_commutator(a, weyl_commutator(b, c))
            + weyl_commutator(b, weyl_commutator(c, a))
            + weyl_commutator(c, weyl_commutator(a, b))
        )
        assert total.is_zero()


def test_serialization_round_trip():
    rng = random.Random(41)
    for _ in range(15):
        p, q = rng.choice([(1, 1), (2, 2)])
        a = random_operator(rng, p, q)
        assert WeylOperator.from_text(a.to_text()) == a


def test_scalar_detection():
    p, q = 2, 2
    ident = WeylOperator.identity(p, q)
    assert ident.scale(Fraction(7, 3)).is_scalar()
    assert not euler("x", p, q).is_scalar()
    assert ident.scale(5).constant_part() == 5
