"""Homogeneous harmonic polynomials: dimensions, exact bases, projections.

All spaces are taken inside a single variable block. Working polynomials use
ambient (n, 0) for an x-block space and (0, n) for a y-block space, so they
can be embedded into any larger ambient with Polynomial.embed.

The dimension of the degree-d space on R^n is, for n >= 2 and d >= 1,

    C(d+n-1, n-1) - C(d+n-3, n-1)  =  (d+n-3)! / (d! (n-2)!) * (2d+n-2),

with the conventions dim = 1 at d = 0 and, on the line (n = 1), dim = 1 for
d <= 1 and 0 beyond. Both closed forms are validated against the kernel rank
of the Laplacian in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .errors import DegenerateProjection
from .linalg import kernel_basis
from .poly import Polynomial, grlex_key, radius_sq
from .scalars import GaussianRational, rising_factorial
from .weyl import laplacian, weyl_apply


def _block_geometry(block: str, ambient_p: int, ambient_q: int) -> Tuple[int, int]:
    """(block dimension, slot offset) of a block within an ambient."""
    if block == "x":
        return ambient_p, 0
    if block == "y":
        return ambient_q, ambient_p
    raise ValueError(f"unknown block {block!r}")


def dim_harm(n: int, d: int) -> int:
    """Dimension of the space of degree-d harmonic polynomials on R^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if d < 0:
        return 0
    if n == 1:
        return 1 if d <= 1 else 0
    if n == 2:
        return 1 if d == 0 else 2
    value = Fraction(2) * (d + Fraction(n, 2) - 1) * rising_factorial(
        Fraction(d + 1), n - 3
    )
    for k in range(2, n - 1):
        value /= k
    if value.denominator != 1:
        raise ArithmeticError(f"dimension formula gave non-integer {value}")
    return int(value)


def _degree_monomials(n: int, d: int) -> List[tuple]:
    """All exponent tuples of total degree d, in graded-lex order."""
    out: List[tuple] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if n == 0:
        return [()] if d == 0 else []
    rec((), d, n)
    out.sort(key=grlex_key)
    return out


@dataclass(frozen=True)
class HarmonicBasis:
    """An exact basis of the degree-d harmonic polynomials in one block."""

    n: int
    d: int
    block: str
    elements: Tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def harmonic_basis(n: int, d: int, block: str = "x") -> HarmonicBasis:
    """Kernel of the block Laplacian on degree-d monomials.

    Computed by exact sparse row reduction of the coefficient matrix, with
    graded-lex column order, so the result is deterministic. The element
    count is checked against dim_harm before returning.
    """
    p, q = (n, 0) if block == "x" else (0, n)
    monos = _degree_monomials(n, d)
    col_of = {m: i for i, m in enumerate(monos)}
    lap = laplacian(block, p, q)
    rows: dict = {}
    for col, mono in enumerate(monos):
        image = weyl_apply(lap, Polynomial(p, q, {mono: GaussianRational(1)}))
        for im_mono, coeff in image.terms.items():
            rows.setdefault(im_mono, {})[col] = coeff
    row_list = [rows[key] for key in sorted(rows, key=grlex_key)]
    vectors, _rank = kernel_basis(row_list, len(monos))
    elements = tuple(
        Polynomial(p, q, {monos[col]: c for col, c in vec.items()})
        for vec in vectors
    )
    expected = dim_harm(n, d)
    if len(elements) != expected:
        raise ArithmeticError(
            f"kernel rank {len(elements)} disagrees with dimension formula {expected}"
            f" at (n, d) = ({n}, {d})"
        )
    return HarmonicBasis(n, d, block, elements)


def block_laplacian_apply(f: Polynomial, block: str) -> Polynomial:
    return weyl_apply(laplacian(block, f.p, f.q), f)


def _block_degree_checked(f: Polynomial, block: str) -> int:
    lo, hi = (0, f.p) if block == "x" else (f.p, f.p + f.q)
    degrees = {sum(m[lo:hi]) for m in f.terms}
    if len(degrees) != 1:
        raise ValueError(f"polynomial is not homogeneous in the {block} block")
    return degrees.pop()


def dagger(f: Polynomial, block: str = "x") -> Polynomial:
    """Harmonic projection P - r^2 (Laplacian P) / (4 (d + n/2 - 2)).

    Exact on any P with vanishing double Laplacian. A harmonic input comes
    back unchanged without touching the denominator; a degenerate
    denominator with a nonzero Laplacian raises DegenerateProjection.
    """
    n, _ = _block_geometry(block, f.p, f.q)
    d = _block_degree_checked(f, block)
    lap = block_laplacian_apply(f, block)
    if lap.is_zero():
        return f
    denominator = 4 * (d + Fraction(n, 2) - 2)
    if denominator == 0:
        raise DegenerateProjection(
            f"projection undefined at degree {d} on {n} variables"
        )
    r2 = radius_sq(block, f.p, f.q)
    return f - (r2 * lap).scale(Fraction(1) / denominator)


def decompose_into_harmonics(f: Polynomial, block: str = "x") -> List[Tuple[Polynomial, int]]:
    """Write a block-homogeneous f as sum of r^(2m) h_m with h_m harmonic.

    Peels radial layers through the Laplacian: the image of r^(2j) h under
    the block Laplacian is 2j (2e + n + 2j - 2) r^(2j-2) h for h of degree e,
    which determines every lower layer recursively; the top harmonic layer
    is whatever remains. Exact, and recomposition reproduces f.
    """
    if f.is_zero():
        return []
    n, _ = _block_geometry(block, f.p, f.q)
    d = _block_degree_checked(f, block)
    if d <= 1:
        return [(f, 0)]
    lap = block_laplacian_apply(f, block)
    if lap.is_zero():
        return [(f, 0)]
    inner = decompose_into_harmonics(lap, block)
    r2 = radius_sq(block, f.p, f.q)
    parts: List[Tuple[Polynomial, int]] = []
    rest = Polynomial.zero(f.p, f.q)
    for g, i in inner:
        j = i + 1
        scale = 2 * j * (2 * (d - 2 * j) + n + 2 * j - 2)
        h = g.scale(Fraction(1, scale))
        parts.append((h, j))
        rest = rest + (r2**j) * h
    top = f - rest
    if not top.is_zero():
        parts.insert(0, (top, 0))
    parts.sort(key=lambda hm: hm[1])
    return parts
