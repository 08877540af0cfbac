"""Normal-ordered Weyl algebra: polynomial-coefficient differential operators.

Every operator is stored as a sparse map (monomial, derivative multi-index)
-> coefficient, read as "multiply by the monomial, then differentiate".
Composition re-establishes this normal order through the Leibniz rule, so
operator equality is a plain term-map comparison.
"""

from __future__ import annotations

import math
from typing import Optional

from .poly import (
    AmbientMismatch,
    Monomial,
    Polynomial,
    grlex_key,
    monomial_from_text,
    monomial_text,
    radius_sq,
)
from .scalars import GaussianRational


def _pull_through(deriv: Monomial, mono: Monomial):
    """Expand d^deriv ∘ x^mono into normally ordered terms.

    Yields (coefficient, monomial, derivative) triples from the Leibniz rule
    d^b x^c = sum_k C(b,k) * c!/(c-k)! * x^(c-k) d^(b-k).
    """
    slots = [i for i in range(len(mono)) if deriv[i] and mono[i]]
    if not slots:
        yield 1, mono, deriv
        return

    def rec(idx, coeff, mono_acc, deriv_acc):
        if idx == len(slots):
            yield coeff, tuple(mono_acc), tuple(deriv_acc)
            return
        s = slots[idx]
        b, c = deriv[s], mono[s]
        for k in range(min(b, c) + 1):
            factor = math.comb(b, k) * math.perm(c, k)
            mono_acc[s] = c - k
            deriv_acc[s] = b - k
            yield from rec(idx + 1, coeff * factor, mono_acc, deriv_acc)
        mono_acc[s] = c
        deriv_acc[s] = b

    yield from rec(0, 1, list(mono), list(deriv))


class WeylOperator:
    """Element of the algebra of polynomial-coefficient differential operators."""

    __slots__ = ("p", "q", "terms")

    def __init__(self, p: int, q: int, terms: Optional[dict] = None):
        self.p = p
        self.q = q
        clean = {}
        if terms:
            for key, coeff in terms.items():
                coeff = GaussianRational.coerce(coeff)
                if coeff:
                    mono, deriv = key
                    if len(mono) != p + q or len(deriv) != p + q:
                        raise ValueError(f"term {key} has wrong arity for ({p},{q})")
                    clean[(tuple(mono), tuple(deriv))] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: int, q: int) -> "WeylOperator":
        return WeylOperator(p, q)

    @staticmethod
    def identity(p: int, q: int) -> "WeylOperator":
        z = (0,) * (p + q)
        return WeylOperator(p, q, {(z, z): GaussianRational(1)})

    @staticmethod
    def from_polynomial(f: Polynomial) -> "WeylOperator":
        """The operator of multiplication by f."""
        z = (0,) * (f.p + f.q)
        return WeylOperator(f.p, f.q, {(m, z): c for m, c in f.terms.items()})

    @staticmethod
    def derivative(slot: int, p: int, q: int, order: int = 1) -> "WeylOperator":
        z = (0,) * (p + q)
        d = list(z)
        d[slot] = order
        return WeylOperator(p, q, {(z, tuple(d)): GaussianRational(1)})

    @staticmethod
    def dx(i: int, p: int, q: int) -> "WeylOperator":
        """d/dx_i with 1-based i."""
        if not 1 <= i <= p:
            raise ValueError(f"x index {i} outside [1, {p}]")
        return WeylOperator.derivative(i - 1, p, q)

    @staticmethod
    def dy(j: int, p: int, q: int) -> "WeylOperator":
        """d/dy_j with 1-based j."""
        if not 1 <= j <= q:
            raise ValueError(f"y index {j} outside [1, {q}]")
        return WeylOperator.derivative(p + j - 1, p, q)

    # -- bookkeeping ----------------------------------------------------------

    def _check_ambient(self, other: "WeylOperator"):
        if self.p != other.p or self.q != other.q:
            raise AmbientMismatch(
                f"ambient ({self.p},{self.q}) vs ({other.p},{other.q})"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Highest total derivative order; -1 for the zero operator."""
        return max((sum(d) for _, d in self.terms), default=-1)

    def constant_part(self) -> GaussianRational:
        z = (0,) * (self.p + self.q)
        return self.terms.get((z, z), GaussianRational(0))

    def is_scalar(self) -> bool:
        """True when the operator is c * identity."""
        if not self.terms:
            return True
        z = (0,) * (self.p + self.q)
        return set(self.terms) == {(z, z)}

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        self._check_ambient(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        out = WeylOperator.__new__(WeylOperator)
        out.p, out.q, out.terms = self.p, self.q, terms
        return out

    def __neg__(self) -> "WeylOperator":
        out = WeylOperator.__new__(WeylOperator)
        out.p, out.q = self.p, self.q
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def scale(self, scalar) -> "WeylOperator":
        scalar = GaussianRational.coerce(scalar)
        out = WeylOperator.__new__(WeylOperator)
        out.p, out.q = self.p, self.q
        out.terms = {} if not scalar else {k: c * scalar for k, c in self.terms.items()}
        return out

    def __mul__(self, other):
        """Operator product (composition) or scalar multiple."""
        if isinstance(other, WeylOperator):
            return weyl_compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.terms.items())))

    # -- text form ------------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"weyl-operator p={self.p} q={self.q}"]
        for (mono, deriv), coeff in sorted(
            self.terms.items(), key=lambda kv: (grlex_key(kv[0][1]), grlex_key(kv[0][0]))
        ):
            mtxt = monomial_text(mono, self.p)
            dtxt = monomial_text(deriv, self.p)
            if dtxt != "1":
                dtxt = "*".join("d" + tok for tok in dtxt.split("*"))
                mtxt = dtxt if mtxt == "1" else f"{mtxt}*{dtxt}"
            lines.append(f"{mtxt} : {coeff.to_text()}")
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "WeylOperator":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "weyl-operator":
            raise ValueError("not a weyl-operator block")
        p = int(head[1].split("=")[1])
        q = int(head[2].split("=")[1])
        terms: dict = {}
        for line in lines[1:]:
            body, _, coeff_text = line.partition(" : ")
            mono_tokens, deriv_tokens = [], []
            for token in body.strip().split("*"):
                if token.startswith("d") and token != "1":
                    deriv_tokens.append(token[1:])
                elif token != "1":
                    mono_tokens.append(token)
            mono = monomial_from_text("*".join(mono_tokens) or "1", p, q)
            deriv = monomial_from_text("*".join(deriv_tokens) or "1", p, q)
            coeff = GaussianRational.from_text(coeff_text.strip())
            key = (mono, deriv)
            if coeff:
                terms[key] = terms.get(key, GaussianRational(0)) + coeff
        return WeylOperator(p, q, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (mono, deriv), coeff in sorted(
            self.terms.items(), key=lambda kv: (grlex_key(kv[0][1]), grlex_key(kv[0][0]))
        ):
            mtxt = monomial_text(mono, self.p)
            dtxt = monomial_text(deriv, self.p)
            if dtxt != "1":
                dtxt = "*".join("d" + tok for tok in dtxt.split("*"))
                mtxt = dtxt if mtxt == "1" else f"{mtxt}*{dtxt}"
            bits.append(f"{coeff!r}*{mtxt}")
        return " + ".join(bits)


def weyl_compose(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    """Normal-ordered product a∘b; applying it equals applying b then a."""
    a._check_ambient(b)
    acc: dict = {}
    for (m1, d1), c1 in a.terms.items():
        for (m2, d2), c2 in b.terms.items():
            base = c1 * c2
            for factor, mid_mono, mid_deriv in _pull_through(d1, m2):
                mono = tuple(x + y for x, y in zip(m1, mid_mono))
                deriv = tuple(x + y for x, y in zip(mid_deriv, d2))
                coeff = base * factor
                prev = acc.get((mono, deriv))
                coeff = coeff if prev is None else prev + coeff
                if coeff:
                    acc[(mono, deriv)] = coeff
                else:
                    acc.pop((mono, deriv), None)
    out = WeylOperator.__new__(WeylOperator)
    out.p, out.q, out.terms = a.p, a.q, acc
    return out


def weyl_commutator(a: WeylOperator, b: WeylOperator) -> WeylOperator:
    return weyl_compose(a, b) - weyl_compose(b, a)


def weyl_apply(op: WeylOperator, f: Polynomial) -> Polynomial:
    """Exact image of a polynomial under the operator."""
    if op.p != f.p or op.q != f.q:
        raise AmbientMismatch(f"ambient ({op.p},{op.q}) vs ({f.p},{f.q})")
    acc: dict = {}
    for (mono, deriv), coeff in op.terms.items():
        for fm, fc in f.terms.items():
            factor = 1
            out = list(fm)
            ok = True
            for slot, d in enumerate(deriv):
                if d:
                    e = out[slot]
                    if e < d:
                        ok = False
                        break
                    factor *= math.perm(e, d)
                    out[slot] = e - d
            if not ok:
                continue
            for slot, m in enumerate(mono):
                if m:
                    out[slot] += m
            key = tuple(out)
            c = coeff * fc * factor
            prev = acc.get(key)
            c = c if prev is None else prev + c
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
    out_poly = Polynomial.__new__(Polynomial)
    out_poly.p, out_poly.q, out_poly.terms = f.p, f.q, acc
    return out_poly


# -- the standard block operators used throughout ---------------------------------


def euler(block: str, p: int, q: int) -> WeylOperator:
    """Degree operator of one block: sum_i v_i d/dv_i."""
    n, offset = (p, 0) if block == "x" else (q, p)
    terms = {}
    for i in range(n):
        mono = [0] * (p + q)
        deriv = [0] * (p + q)
        mono[offset + i] = 1
        deriv[offset + i] = 1
        terms[(tuple(mono), tuple(deriv))] = GaussianRational(1)
    return WeylOperator(p, q, terms)


def laplacian(block: str, p: int, q: int) -> WeylOperator:
    """Block Laplacian: sum_i d^2/dv_i^2."""
    n, offset = (p, 0) if block == "x" else (q, p)
    terms = {}
    z = (0,) * (p + q)
    for i in range(n):
        deriv = [0] * (p + q)
        deriv[offset + i] = 2
        terms[(z, tuple(deriv))] = GaussianRational(1)
    return WeylOperator(p, q, terms)


def radius_sq_operator(block: str, p: int, q: int) -> WeylOperator:
    """Multiplication by the block squared radius."""
    return WeylOperator.from_polynomial(radius_sq(block, p, q))
