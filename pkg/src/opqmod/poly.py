"""Sparse exact multivariate polynomials over Gaussian rationals.

A polynomial lives in an ambient pair (p, q): its variables are
x1..xp followed by y1..yq, addressed internally by slot 0..p+q-1.
Monomials are exponent tuples of length p+q, iterated in graded
lexicographic order so that serialization and reports are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .scalars import GaussianRational

Monomial = tuple  # tuple[int, ...] of length p + q


class AmbientMismatch(ValueError):
    """Two values from different ambient (p, q) spaces were combined."""


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def grlex_key(mono: Monomial):
    """Sort key realizing graded lexicographic order (degree, then lex)."""
    return (sum(mono), mono)


def monomial_text(mono: Monomial, p: int) -> str:
    parts = []
    for slot, e in enumerate(mono):
        if e == 0:
            continue
        name = f"x{slot + 1}" if slot < p else f"y{slot - p + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def monomial_from_text(text: str, p: int, q: int) -> Monomial:
    exps = [0] * (p + q)
    if text.strip() == "1":
        return tuple(exps)
    for token in text.split("*"):
        name, _, power = token.partition("^")
        e = int(power) if power else 1
        idx = int(name[1:]) - 1
        if name[0] == "x":
            if not 0 <= idx < p:
                raise ValueError(f"variable {name} outside ambient ({p},{q})")
            slot = idx
        elif name[0] == "y":
            if not 0 <= idx < q:
                raise ValueError(f"variable {name} outside ambient ({p},{q})")
            slot = p + idx
        else:
            raise ValueError(f"bad variable token {token!r}")
        exps[slot] += e
    return tuple(exps)


class Polynomial:
    """Immutable sparse polynomial with Gaussian-rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients; constructors
    and arithmetic strip zeros, so two polynomials are equal exactly when
    their term maps are equal.
    """

    __slots__ = ("p", "q", "terms")

    def __init__(self, p: int, q: int, terms: Optional[dict] = None):
        self.p = p
        self.q = q
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = GaussianRational.coerce(coeff)
                if coeff:
                    if len(mono) != p + q:
                        raise ValueError(
                            f"monomial {mono} has wrong length for ambient ({p},{q})"
                        )
                    clean[tuple(mono)] = coeff
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(p: int, q: int) -> "Polynomial":
        return Polynomial(p, q)

    @staticmethod
    def constant(value, p: int, q: int) -> "Polynomial":
        return Polynomial(p, q, {(0,) * (p + q): GaussianRational.coerce(value)})

    @staticmethod
    def one(p: int, q: int) -> "Polynomial":
        return Polynomial.constant(1, p, q)

    @staticmethod
    def variable(slot: int, p: int, q: int) -> "Polynomial":
        mono = [0] * (p + q)
        mono[slot] = 1
        return Polynomial(p, q, {tuple(mono): GaussianRational(1)})

    @staticmethod
    def x_var(i: int, p: int, q: int) -> "Polynomial":
        """x_i with 1-based index i in [1, p]."""
        if not 1 <= i <= p:
            raise ValueError(f"x index {i} outside [1, {p}]")
        return Polynomial.variable(i - 1, p, q)

    @staticmethod
    def y_var(j: int, p: int, q: int) -> "Polynomial":
        """y_j with 1-based index j in [1, q]."""
        if not 1 <= j <= q:
            raise ValueError(f"y index {j} outside [1, {q}]")
        return Polynomial.variable(p + j - 1, p, q)

    # -- bookkeeping --------------------------------------------------------

    def _check_ambient(self, other: "Polynomial"):
        if self.p != other.p or self.q != other.q:
            raise AmbientMismatch(
                f"ambient ({self.p},{self.q}) vs ({other.p},{other.q})"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_components(self) -> dict:
        """Map degree -> homogeneous part, zero parts omitted."""
        parts: dict = {}
        for mono, coeff in self.terms.items():
            parts.setdefault(sum(mono), {})[mono] = coeff
        return {
            d: Polynomial(self.p, self.q, terms)
            for d, terms in sorted(parts.items())
        }

    def block_degree(self, block: str) -> int:
        """Total degree in the x-variables or y-variables alone; -1 if zero."""
        lo, hi = (0, self.p) if block == "x" else (self.p, self.p + self.q)
        return max((sum(m[lo:hi]) for m in self.terms), default=-1)

    def sorted_terms(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0])))

    def leading_term(self):
        """(monomial, coefficient) maximal in graded-lex order."""
        if not self.terms:
            return None
        mono = max(self.terms, key=grlex_key)
        return mono, self.terms[mono]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ambient(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.p, out.q, out.terms = self.p, self.q, terms
        return out

    def __neg__(self) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.p, out.q = self.p, self.q
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_ambient(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                prev = acc.get(mono)
                c = c if prev is None else prev + c
                if c:
                    acc[mono] = c
                else:
                    acc.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.p, out.q, out.terms = self.p, self.q, acc
        return out

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, scalar) -> "Polynomial":
        scalar = GaussianRational.coerce(scalar)
        out = Polynomial.__new__(Polynomial)
        out.p, out.q = self.p, self.q
        if not scalar:
            out.terms = {}
        else:
            out.terms = {m: c * scalar for m, c in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.one(self.p, self.q)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def differentiate(self, slot: int) -> "Polynomial":
        terms = {}
        for mono, coeff in self.terms.items():
            e = mono[slot]
            if e == 0:
                continue
            lowered = mono[:slot] + (e - 1,) + mono[slot + 1:]
            c = coeff * e
            prev = terms.get(lowered)
            terms[lowered] = c if prev is None else prev + c
        out = Polynomial.__new__(Polynomial)
        out.p, out.q, out.terms = self.p, self.q, terms
        return out

    def truncate(self, max_degree: int) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.p, out.q = self.p, self.q
        out.terms = {m: c for m, c in self.terms.items() if sum(m) <= max_degree}
        return out

    def evaluate(self, point: Iterable) -> GaussianRational:
        """Exact evaluation at a point of rationals (length p+q)."""
        values = [Fraction(v) for v in point]
        if len(values) != self.p + self.q:
            raise ValueError("point has wrong length")
        total = GaussianRational(0)
        for mono, coeff in self.terms.items():
            factor = Fraction(1)
            for v, e in zip(values, mono):
                if e:
                    factor *= v**e
            total = total + coeff * factor
        return total

    def embed(self, p: int, q: int) -> "Polynomial":
        """Reinterpret in a larger ambient: x-slots keep shape, y-slots shift."""
        if p < self.p or q < self.q:
            raise ValueError("target ambient must contain the source ambient")
        pad_x = p - self.p
        terms = {}
        for mono, coeff in self.terms.items():
            xs, ys = mono[: self.p], mono[self.p:]
            terms[xs + (0,) * pad_x + ys + (0,) * (q - self.q)] = coeff
        return Polynomial(p, q, terms)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.terms.items())))

    # -- text form --------------------------------------------------------------

    def to_text(self) -> str:
        """Deterministic one-term-per-line form in graded-lex order."""
        lines = [f"polynomial p={self.p} q={self.q}"]
        for mono, coeff in self.sorted_terms():
            lines.append(f"{monomial_text(mono, self.p)} : {coeff.to_text()}")
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "Polynomial":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "polynomial":
            raise ValueError("not a polynomial block")
        p = int(head[1].split("=")[1])
        q = int(head[2].split("=")[1])
        terms: dict = {}
        for line in lines[1:]:
            mono_text, _, coeff_text = line.partition(" : ")
            mono = monomial_from_text(mono_text.strip(), p, q)
            coeff = GaussianRational.from_text(coeff_text.strip())
            if coeff:
                terms[mono] = terms.get(mono, GaussianRational(0)) + coeff
        return Polynomial(p, q, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in self.sorted_terms():
            bits.append(f"{coeff!r}*{monomial_text(mono, self.p)}")
        return " + ".join(bits)


def poly_divide(f: Polynomial, g: Polynomial) -> Optional[Polynomial]:
    """Exact quotient f/g, or None when g does not divide f.

    Repeatedly cancels the graded-lex leading term; since the order is
    multiplicative this decides divisibility by a single polynomial.
    """
    f._check_ambient(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quotient = Polynomial.zero(f.p, f.q)
    remainder = f
    g_mono, g_coeff = g.leading_term()
    while not remainder.is_zero():
        r_mono, r_coeff = remainder.leading_term()
        diff = tuple(a - b for a, b in zip(r_mono, g_mono))
        if any(e < 0 for e in diff):
            return None
        piece = Polynomial(f.p, f.q, {diff: r_coeff / g_coeff})
        quotient = quotient + piece
        remainder = remainder - piece * g
    return quotient


def radius_sq(block: str, p: int, q: int) -> Polynomial:
    """Sum of squares over one variable block: r_x^2 or r_y^2."""
    n = p if block == "x" else q
    offset = 0 if block == "x" else p
    terms = {}
    for i in range(n):
        mono = [0] * (p + q)
        mono[offset + i] = 2
        terms[tuple(mono)] = GaussianRational(1)
    return Polynomial(p, q, terms)


def rho(block: str, p: int, q: int) -> Polynomial:
    """Half the squared radius of a block (r^2 / 2)."""
    return radius_sq(block, p, q).scale(Fraction(1, 2))
