"""Exact Gaussian-rational scalars, the coefficient field used everywhere.

No floating point enters any computation in this package: every coefficient
is a complex number a + b*i with a, b arbitrary-precision rationals.
"""

from __future__ import annotations

from fractions import Fraction

RatLike = "int | Fraction"


class GaussianRational:
    """A complex number ``re + im*i`` with exact rational parts.

    Instances are immutable by convention and hashable, so they can be used
    as dictionary values in sparse polynomial maps and compared exactly.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero scalar")
        if not d:
            return GaussianRational(a / c, b / c)
        n = c * c + d * d
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form ``num/den+num/den·i`` used by serialization."""
        r, i = self.re, self.im
        return f"{r.numerator}/{r.denominator}+{i.numerator}/{i.denominator}·i"

    @staticmethod
    def from_text(text: str) -> "GaussianRational":
        body, _, tail = text.partition("+")
        if not tail.endswith("·i"):
            raise ValueError(f"malformed scalar {text!r}")
        return GaussianRational(Fraction(body), Fraction(tail[:-2]))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else ''}{self.im}i)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IMAG_UNIT = GaussianRational(0, 1)


def rising_factorial(base: Fraction, n: int) -> Fraction:
    """base * (base+1) * ... * (base+n-1); equals 1 for n = 0."""
    out = Fraction(1)
    for i in range(n):
        out *= base + i
    return out


def falling_factorial(base: Fraction, n: int) -> Fraction:
    """base * (base-1) * ... * (base-n+1); equals 1 for n = 0."""
    out = Fraction(1)
    for i in range(n):
        out *= base - i
    return out
