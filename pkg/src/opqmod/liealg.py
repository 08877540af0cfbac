"""The Lie algebra o(p,q): matrices, operator models, and the moment map.

Basis matrices and their bracket live here, together with the two operator
models pi and pi_sharp (differential operators on p + q variables), the
partial Fourier substitution relating them, the commuting sl2 triple, the
Casimir operators, and the rational-point moment map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

from .errors import VerificationError
from .linalg import invert_dense
from .poly import AmbientMismatch, Polynomial, radius_sq
from .scalars import IMAG_UNIT, GaussianRational
from .weyl import (
    WeylOperator,
    euler,
    laplacian,
    radius_sq_operator,
    weyl_commutator,
    weyl_compose,
)

Matrix = Tuple[Tuple[GaussianRational, ...], ...]


def _as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(GaussianRational.coerce(v) for v in row) for row in rows)


def _zero_matrix(n: int) -> List[List[GaussianRational]]:
    return [[GaussianRational(0)] * n for _ in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = _zero_matrix(n)
    for i in range(n):
        for k in range(n):
            v = a[i][k]
            if not v:
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(n):
                if row_b[j]:
                    row_o[j] = row_o[j] + v * row_b[j]
    return tuple(tuple(r) for r in out)


def indefinite_form(p: int, q: int) -> Matrix:
    """diag(1_p, -1_q), the bilinear form defining o(p,q)."""
    return tuple(
        tuple(
            GaussianRational(0)
            if i != j
            else GaussianRational(1 if i < p else -1)
            for j in range(p + q)
        )
        for i in range(p + q)
    )


@dataclass(frozen=True)
class BasisLabel:
    """Label of a standard basis element.

    kind "xx": rotation between x_i, x_j (i != j in [1, p]);
    kind "yy": rotation between y_i, y_j (i != j in [1, q]);
    kind "mixed": boost pairing x_i with y_j (i in [1, p], j in [1, q]).
    Indices are 1-based.
    """

    kind: str
    i: int
    j: int


def basis_labels(p: int, q: int) -> List[BasisLabel]:
    """The standard basis enumeration (i < j within each rotation block)."""
    labels = [BasisLabel("xx", i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)]
    labels += [BasisLabel("yy", i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1)]
    labels += [BasisLabel("mixed", i, j) for i in range(1, p + 1) for j in range(1, q + 1)]
    return labels


class LieElement:
    """A (p+q) x (p+q) matrix lying in the complexified o(p,q)."""

    __slots__ = ("p", "q", "mat")

    def __init__(self, p: int, q: int, mat, check: bool = True):
        self.p = p
        self.q = q
        self.mat = _as_matrix(mat)
        if len(self.mat) != p + q or any(len(r) != p + q for r in self.mat):
            raise ValueError(f"matrix is not ({p + q}) x ({p + q})")
        if check and not self._is_member():
            raise ValueError("matrix does not satisfy tX.I + I.X = 0")

    def _is_member(self) -> bool:
        n = self.p + self.q
        eps = [1] * self.p + [-1] * self.q
        for i in range(n):
            for j in range(n):
                # (tX I + I X)[i][j] = X[j][i]*eps[j] + eps[i]*X[i][j]
                if self.mat[j][i] * eps[j] + self.mat[i][j] * eps[i]:
                    return False
        return True

    def _check_ambient(self, other: "LieElement"):
        if self.p != other.p or self.q != other.q:
            raise AmbientMismatch(
                f"ambient ({self.p},{self.q}) vs ({other.p},{other.q})"
            )

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check_ambient(other)
        rows = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.mat, other.mat)
        ]
        return LieElement(self.p, self.q, rows, check=False)

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check_ambient(other)
        rows = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.mat, other.mat)
        ]
        return LieElement(self.p, self.q, rows, check=False)

    def scale(self, scalar) -> "LieElement":
        scalar = GaussianRational.coerce(scalar)
        rows = [[v * scalar for v in row] for row in self.mat]
        return LieElement(self.p, self.q, rows, check=False)

    def is_zero(self) -> bool:
        return all(not v for row in self.mat for v in row)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.mat == other.mat

    def __hash__(self):
        return hash((self.p, self.q, self.mat))

    def __repr__(self):
        return f"LieElement({self.p},{self.q},{self.mat!r})"


def basis_element(label: BasisLabel, p: int, q: int) -> LieElement:
    """Matrix of a standard basis element.

    "xx": E_ij - E_ji; "yy": the same within the y block (slots p..p+q-1);
    "mixed": E_{i, p+j} + E_{p+j, i}.
    """
    n = p + q
    rows = _zero_matrix(n)
    one = GaussianRational(1)
    if label.kind == "xx":
        if not (1 <= label.i <= p and 1 <= label.j <= p and label.i != label.j):
            raise ValueError(f"bad xx indices {label}")
        rows[label.i - 1][label.j - 1] = one
        rows[label.j - 1][label.i - 1] = -one
    elif label.kind == "yy":
        if not (1 <= label.i <= q and 1 <= label.j <= q and label.i != label.j):
            raise ValueError(f"bad yy indices {label}")
        rows[p + label.i - 1][p + label.j - 1] = one
        rows[p + label.j - 1][p + label.i - 1] = -one
    elif label.kind == "mixed":
        if not (1 <= label.i <= p and 1 <= label.j <= q):
            raise ValueError(f"bad mixed indices {label}")
        rows[label.i - 1][p + label.j - 1] = one
        rows[p + label.j - 1][label.i - 1] = one
    else:
        raise ValueError(f"unknown label kind {label.kind!r}")
    return LieElement(p, q, rows, check=False)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Matrix commutator XY - YX."""
    x._check_ambient(y)
    ab = mat_mul(x.mat, y.mat)
    ba = mat_mul(y.mat, x.mat)
    rows = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(ab, ba)]
    return LieElement(x.p, x.q, rows)


def lie_decompose(x: LieElement) -> List[Tuple[GaussianRational, BasisLabel]]:
    """Expansion of a Lie element over the standard basis.

    The block structure makes coefficients plain matrix entries: the strict
    upper triangles of the two rotation blocks and the full upper-right block.
    """
    p, q = x.p, x.q
    out = []
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            c = x.mat[i - 1][j - 1]
            if c:
                out.append((c, BasisLabel("xx", i, j)))
    for i in range(1, q + 1):
        for j in range(i + 1, q + 1):
            c = x.mat[p + i - 1][p + j - 1]
            if c:
                out.append((c, BasisLabel("yy", i, j)))
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            c = x.mat[i - 1][p + j - 1]
            if c:
                out.append((c, BasisLabel("mixed", i, j)))
    return out


def trace_form(x: LieElement, y: LieElement) -> GaussianRational:
    """The invariant bilinear form (1/2) tr(XY)."""
    x._check_ambient(y)
    n = x.p + x.q
    total = GaussianRational(0)
    for i in range(n):
        for k in range(n):
            if x.mat[i][k] and y.mat[k][i]:
                total = total + x.mat[i][k] * y.mat[k][i]
    return total * Fraction(1, 2)


# -- the two operator models -------------------------------------------------------


def _rotation_operator(block: str, i: int, j: int, p: int, q: int) -> WeylOperator:
    """-v_j d/dv_i + v_i d/dv_j within one block."""
    if block == "x":
        vi = Polynomial.x_var(i, p, q)
        vj = Polynomial.x_var(j, p, q)
        di = WeylOperator.dx(i, p, q)
        dj = WeylOperator.dx(j, p, q)
    else:
        vi = Polynomial.y_var(i, p, q)
        vj = Polynomial.y_var(j, p, q)
        di = WeylOperator.dy(i, p, q)
        dj = WeylOperator.dy(j, p, q)
    return (
        weyl_compose(WeylOperator.from_polynomial(vj), di).scale(-1)
        + weyl_compose(WeylOperator.from_polynomial(vi), dj)
    )


def pi(x: Union[BasisLabel, LieElement], p: Optional[int] = None, q: Optional[int] = None) -> WeylOperator:
    """The quantized-moment-map model of o(p,q) on polynomials in (x, y).

    Basis values: rotations go to -v_j d_i + v_i d_j in their block; a mixed
    boost goes to i(x_i y_j + d_{x_i} d_{y_j}). General elements extend
    linearly through the basis expansion.
    """
    if isinstance(x, LieElement):
        out = WeylOperator.zero(x.p, x.q)
        for coeff, label in lie_decompose(x):
            out = out + pi(label, x.p, x.q).scale(coeff)
        return out
    if p is None or q is None:
        raise ValueError("p and q are required with a BasisLabel")
    if x.kind == "xx":
        return _rotation_operator("x", x.i, x.j, p, q)
    if x.kind == "yy":
        return _rotation_operator("y", x.i, x.j, p, q)
    if x.kind == "mixed":
        mult = Polynomial.x_var(x.i, p, q) * Polynomial.y_var(x.j, p, q)
        dd = weyl_compose(WeylOperator.dx(x.i, p, q), WeylOperator.dy(x.j, p, q))
        return (WeylOperator.from_polynomial(mult) + dd).scale(IMAG_UNIT)
    raise ValueError(f"unknown label kind {x.kind!r}")


def pi_sharp(x: Union[BasisLabel, LieElement], p: Optional[int] = None, q: Optional[int] = None) -> WeylOperator:
    """The regular-representation model; agrees with pi on both rotation blocks.

    A mixed boost goes to -(x_i d_{y_j} + y_j d_{x_i}).
    """
    if isinstance(x, LieElement):
        out = WeylOperator.zero(x.p, x.q)
        for coeff, label in lie_decompose(x):
            out = out + pi_sharp(label, x.p, x.q).scale(coeff)
        return out
    if p is None or q is None:
        raise ValueError("p and q are required with a BasisLabel")
    if x.kind in ("xx", "yy"):
        return pi(x, p, q)
    if x.kind == "mixed":
        xi = WeylOperator.from_polynomial(Polynomial.x_var(x.i, p, q))
        yj = WeylOperator.from_polynomial(Polynomial.y_var(x.j, p, q))
        return (
            weyl_compose(xi, WeylOperator.dy(x.j, p, q))
            + weyl_compose(yj, WeylOperator.dx(x.i, p, q))
        ).scale(-1)
    raise ValueError(f"unknown label kind {x.kind!r}")


def partial_fourier(op: WeylOperator, inverse: bool = False) -> WeylOperator:
    """Substitution y_j -> i d_j, d_{y_j} -> i y_j on the y block, re-normal-ordered.

    The dual variables reuse the y slots. The inverse substitution
    (y_j -> -i d_j, d_{y_j} -> -i y_j) undoes the forward one exactly.
    """
    p, q = op.p, op.q
    unit = GaussianRational(0, -1) if inverse else IMAG_UNIT
    zero = (0,) * (p + q)
    out = WeylOperator.zero(p, q)
    for (mono, deriv), coeff in op.terms.items():
        mx, my = mono[:p], mono[p:]
        dx, dy = deriv[:p], deriv[p:]
        phase = coeff
        for _ in range(sum(my) + sum(dy)):
            phase = phase * unit
        left = WeylOperator(p, q, {((mx + (0,) * q), (0,) * p + my): phase})
        right = WeylOperator(p, q, {(((0,) * p + dy), dx + (0,) * q): 1})
        out = out + weyl_compose(left, right)
    return out


# -- the commuting sl2 triple -------------------------------------------------------


@dataclass(frozen=True)
class Sl2Triple:
    """Operators h, x_plus, x_minus with [h,x+]=2x+, [h,x-]=-2x-, [x+,x-]=h."""

    h: WeylOperator
    x_plus: WeylOperator
    x_minus: WeylOperator


def sl2_triple(p: int, q: int) -> Sl2Triple:
    """The triple commuting with the pi model of o(p,q)."""
    ident = WeylOperator.identity(p, q)
    h = (
        euler("x", p, q).scale(-1)
        + euler("y", p, q)
        + ident.scale(Fraction(q - p, 2))
    )
    x_plus = (laplacian("x", p, q) + radius_sq_operator("y", p, q)).scale(
        Fraction(-1, 2)
    )
    x_minus = (radius_sq_operator("x", p, q) + laplacian("y", p, q)).scale(
        Fraction(1, 2)
    )
    return Sl2Triple(h, x_plus, x_minus)


# -- Casimir operators ------------------------------------------------------------


def _casimir_quadratic_tail(p: int, q: int) -> WeylOperator:
    """The shared non-constant part of the quadratic Casimir displays."""
    ex = euler("x", p, q)
    ey = euler("y", p, q)
    rx2 = radius_sq_operator("x", p, q)
    ry2 = radius_sq_operator("y", p, q)
    lx = laplacian("x", p, q)
    ly = laplacian("y", p, q)
    d = ex - ey
    out = weyl_compose(d, d) + d.scale(p - q) - (ex + ey).scale(2)
    out = out - (
        weyl_compose(rx2, ry2)
        + weyl_compose(rx2, lx)
        + weyl_compose(ry2, ly)
        + weyl_compose(lx, ly)
    )
    return out


def _basis_sum_casimir(labels: List[BasisLabel], p: int, q: int) -> WeylOperator:
    """sum_a pi(X_a) pi(X^a) over a dual pair of bases for span(labels).

    Duality is taken with respect to the invariant form (1/2) tr(XY),
    inverted exactly; nothing about orthogonality is assumed.
    """
    mats = [basis_element(lb, p, q) for lb in labels]
    gram = [[trace_form(a, b) for b in mats] for a in mats]
    gram_inv = invert_dense(gram)
    ops = [pi(lb, p, q) for lb in labels]
    out = WeylOperator.zero(p, q)
    for a, row in enumerate(gram_inv):
        for b, coeff in enumerate(row):
            if coeff:
                out = out + weyl_compose(ops[a], ops[b]).scale(coeff)
    return out


def casimir(kind: str, p: int, q: int) -> WeylOperator:
    """Quadratic Casimir operator in the pi model.

    kind "g": full algebra; cross-checked against the dual-basis sum.
    kind "k": the block-rotation subalgebra; also cross-checked.
    kind "sl2": the commuting triple; all three orderings of the defining
    expression are compared before returning.
    Any mismatch raises VerificationError rather than returning silently.
    """
    ident = WeylOperator.identity(p, q)
    if kind == "g":
        display = _casimir_quadratic_tail(p, q) + ident.scale(-p * q)
        summed = _basis_sum_casimir(basis_labels(p, q), p, q)
        if display != summed:
            raise VerificationError(
                "full Casimir: displayed operator differs from the dual-basis sum"
            )
        return display
    if kind == "k":
        ex = euler("x", p, q)
        ey = euler("y", p, q)
        display = (
            weyl_compose(ex, ex)
            + ex.scale(p - 2)
            - weyl_compose(radius_sq_operator("x", p, q), laplacian("x", p, q))
            + weyl_compose(ey, ey)
            + ey.scale(q - 2)
            - weyl_compose(radius_sq_operator("y", p, q), laplacian("y", p, q))
        )
        k_labels = [lb for lb in basis_labels(p, q) if lb.kind in ("xx", "yy")]
        if k_labels:
            summed = _basis_sum_casimir(k_labels, p, q)
            if display != summed:
                raise VerificationError(
                    "compact Casimir: displayed operator differs from the dual-basis sum"
                )
        return display
    if kind == "sl2":
        trip = sl2_triple(p, q)
        h, xp, xm = trip.h, trip.x_plus, trip.x_minus
        hh = weyl_compose(h, h)
        defining = hh + (weyl_compose(xp, xm) + weyl_compose(xm, xp)).scale(2)
        lowered = hh - h.scale(2) + weyl_compose(xp, xm).scale(4)
        raised = hh + h.scale(2) + weyl_compose(xm, xp).scale(4)
        display = _casimir_quadratic_tail(p, q) + ident.scale(
            Fraction((p - q) ** 2, 4) - (p + q)
        )
        if not (defining == lowered == raised == display):
            raise VerificationError("sl2 Casimir: the four expressions disagree")
        return display
    raise ValueError(f"unknown Casimir kind {kind!r}")


def casimir_scalar_shift(p: int, q: int) -> Fraction:
    """The scalar with casimir('g') = casimir('sl2') + shift * identity."""
    return Fraction(-((p + q) ** 2), 4) + (p + q)


# -- the moment map ---------------------------------------------------------------


def moment_map(x_vec, y_vec, p: int, q: int) -> Matrix:
    """(-x y^t + y x^t) . diag(1_p, -1_q) at a rational point z = x + iy."""
    xs = [Fraction(v) for v in x_vec]
    ys = [Fraction(v) for v in y_vec]
    n = p + q
    if len(xs) != n or len(ys) != n:
        raise ValueError(f"vectors must have length {n}")
    eps = [1] * p + [-1] * q
    return tuple(
        tuple(
            GaussianRational((-xs[i] * ys[j] + ys[i] * xs[j]) * eps[j])
            for j in range(n)
        )
        for i in range(n)
    )
