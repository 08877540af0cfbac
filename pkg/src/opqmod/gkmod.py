"""Finite-ladder submodules: K-type lattices, growth, and invariants.

For a non-negative integer m with m + 3 <= (p+q)/2 and p = q mod 2, the
highest-weight vectors of sl2-weight m span a module whose K-types form the
planar lattice

    Sigma_m = { (kappa+, kappa-) : kappa+ - p/2, kappa- - q/2 in N,
                kappa+ - kappa- in {-m, -m+2, ..., m} },

with kappa+ = k + p/2 and kappa- = l + q/2 labelling the harmonic pair
degrees. The mixed boosts move a K-type to its four diagonal neighbours
with explicit rational coefficients; irreducibility is decided exactly as
single-orbit strong connectivity of that transition graph, so the verdict
returned here is "irreducible per the K-type transition criterion".

Graded dimension growth, the Gelfand-Kirillov dimension, and the Bernstein
degree come from exact integer dimension counts fitted by exact polynomial
interpolation, then compared against closed formulas; a mismatch raises.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConfigurationError, VerificationError
from .harmonics import dim_harm
from .module_e import (
    ExtremalSpec,
    RadialElement,
    act_sl2_closed,
    extremal_radial,
    radial_proportionality,
)
from .scalars import falling_factorial, rising_factorial

Direction = str
DIRECTIONS: Tuple[Direction, ...] = ("NE", "NW", "SE", "SW")
_STEPS: Dict[Direction, Tuple[int, int]] = {
    "NE": (1, 1),
    "NW": (-1, 1),
    "SE": (1, -1),
    "SW": (-1, -1),
}


def weight_set(m: int) -> Tuple[int, ...]:
    """{-m, -m+2, ..., m}, the ladder weights of the (m+1)-dimensional module."""
    return tuple(range(-m, m + 1, 2))


def check_gates(p: int, q: int, m: int, need_pq2: bool = False, need_pq3: bool = False):
    """Parameter gates; violations raise ConfigurationError."""
    if p < 1 or q < 1:
        raise ConfigurationError("p and q must be at least 1")
    if m < 0:
        raise ConfigurationError("m must be a non-negative integer")
    if (p - q) % 2 != 0:
        raise ConfigurationError(f"p = {p} and q = {q} must have equal parity")
    if 2 * (m + 3) > p + q:
        raise ConfigurationError(
            f"m = {m} is out of range: need m + 3 <= (p + q)/2 = {Fraction(p + q, 2)}"
        )
    if need_pq2 and (p < 2 or q < 2):
        raise ConfigurationError("irreducibility analysis needs p, q >= 2")
    if need_pq3 and (p < 3 or q < 3):
        raise ConfigurationError("growth invariants need p, q >= 3")


def default_window(p: int, q: int, m: int) -> int:
    return max(m + p, m + q) + 12


@dataclass(frozen=True)
class LatticePoint:
    """One K-type of the lattice with its derived data."""

    k: int
    l: int
    kappa_plus: Fraction
    kappa_minus: Fraction
    mu: int
    case: str


@dataclass(frozen=True)
class TransitionRecord:
    """One directed move of the boost action out of a lattice point.

    ``coefficient`` is the exact single-term radial coefficient of the
    channel (None when the harmonic factor is identically zero, in which
    case no coefficient is ever formed). ``vanishes`` flags a computed zero
    coefficient; ``harmonic_blocked`` flags a dead harmonic factor;
    ``target_in_support`` tells whether the destination is a lattice point.
    """

    direction: Direction
    coefficient: Optional[Fraction]
    vanishes: bool
    harmonic_blocked: bool
    target_in_support: bool

    @property
    def carries(self) -> bool:
        """True when the move reaches a lattice point with nonzero amplitude."""
        return (
            self.target_in_support
            and not self.harmonic_blocked
            and not self.vanishes
        )


def _enumerate_points(p: int, q: int, m: int, window: int) -> List[LatticePoint]:
    """Integral lattice points with kappa+ + kappa- <= window (no gates)."""
    points = []
    weights = set(weight_set(m))
    k = 0
    while True:
        kp = k + Fraction(p, 2)
        if kp + Fraction(q, 2) > window:
            break
        for w in sorted(weights):
            km = kp - w
            l = km - Fraction(q, 2)
            if l.denominator != 1 or l < 0:
                continue
            if kp + km > window:
                continue
            l = int(l)
            mu = Fraction(kp - km + m, 2)
            if mu.denominator != 1:
                continue
            mu = int(mu)
            interior = k >= 1 and l >= 1 and 0 < mu < m
            if interior:
                case = "i"
            elif m == 0:
                case = "ii-ab"
            elif mu == 0:
                case = "ii-a"
            elif mu == m:
                case = "ii-b"
            else:
                case = "ii-c"
            points.append(LatticePoint(k, l, kp, km, mu, case))
        k += 1
    points.sort(key=lambda pt: (pt.kappa_plus + pt.kappa_minus, pt.kappa_plus))
    return points


def hwv_radial_channels(
    p: int, q: int, k: int, l: int, mu: int
) -> Dict[Direction, Tuple[Fraction, Tuple[int, int, Fraction]]]:
    """Reduced radial content of the boost action on a highest-weight vector.

    Starting from the (a, b, alpha) = (0, mu, kappa+) term, each of the four
    harmonic channels collapses, after applying the series recurrence, to a
    single radial term; this returns direction -> (coefficient, term).
    Channels with a dead harmonic factor (k = 0 blocks westward moves,
    l = 0 blocks southward moves) are omitted.
    """
    kp = k + Fraction(p, 2)
    km = l + Fraction(q, 2)
    alpha = kp
    a, b = 0, mu
    out: Dict[Direction, Tuple[Fraction, Tuple[int, int, Fraction]]] = {}

    def reduce_single(target_k: int, target_l: int, pieces) -> Tuple[Fraction, Tuple[int, int, Fraction]]:
        terms = {}
        for coeff, ea, eb, al in pieces:
            if coeff:
                terms[(ea, eb, al)] = terms.get((ea, eb, al), Fraction(0)) + coeff
        elem = RadialElement(p, q, target_k, target_l, terms).simplify()
        if not elem.terms:
            return Fraction(0), (0, 0, alpha)
        if len(elem.terms) != 1:
            raise VerificationError("highest-weight channel did not reduce to one term")
        (term, coeff), = elem.terms.items()
        return coeff, term

    if k >= 1 and l >= 1:
        out["SW"] = reduce_single(
            k - 1,
            l - 1,
            [
                ((kp + a - alpha) * (km + b - alpha) / ((kp - 1) * (km - 1)), a, b, alpha),
                ((alpha - 1) * (kp + km + a + b - alpha - 1) / ((kp - 1) * (km - 1)), a, b, alpha - 1),
            ],
        )
    if k >= 1:
        pieces = [(-(kp + a + b - alpha) / (alpha * (kp - 1)), a + 1, b, alpha + 1)]
        if b:
            pieces.append((Fraction(b) * (kp + a - 1) / (kp - 1), a, b - 1, alpha))
        out["NW"] = reduce_single(k - 1, l + 1, pieces)
    if l >= 1:
        pieces = [(-(km + a + b - alpha) / (alpha * (km - 1)), a, b + 1, alpha + 1)]
        if a:
            pieces.append((Fraction(a) * (km + b - 1) / (km - 1), a - 1, b, alpha))
        out["SE"] = reduce_single(k + 1, l - 1, pieces)
    pieces = [(-(a + b + 1 - alpha) / alpha, a, b, alpha + 1)]
    if a and b:
        pieces.append((Fraction(a * b), a - 1, b - 1, alpha))
    out["NE"] = reduce_single(k + 1, l + 1, pieces)
    return out


@dataclass
class KTypeLattice:
    """The windowed K-type support with transition annotations."""

    p: int
    q: int
    m: int
    window: int
    weights: Tuple[int, ...]
    points: Dict[Tuple[Fraction, Fraction], LatticePoint]
    transitions: Dict[Tuple[Fraction, Fraction], Dict[Direction, TransitionRecord]]

    def ordered_points(self) -> List[LatticePoint]:
        return sorted(
            self.points.values(),
            key=lambda pt: (pt.kappa_plus + pt.kappa_minus, pt.kappa_plus),
        )

    def contains(self, kappa_plus, kappa_minus) -> bool:
        return (Fraction(kappa_plus), Fraction(kappa_minus)) in self.points


def transition_pattern(
    point: LatticePoint, p: int, q: int, m: int, lattice: Optional[KTypeLattice] = None
) -> Dict[Direction, TransitionRecord]:
    """The four directed moves out of one lattice point, with exact coefficients."""
    channels = hwv_radial_channels(p, q, point.k, point.l, point.mu)
    records: Dict[Direction, TransitionRecord] = {}
    for direction in DIRECTIONS:
        dk, dl = _STEPS[direction]
        tk, tl = point.k + dk, point.l + dl
        target_kp = point.kappa_plus + dk
        target_km = point.kappa_minus + dl
        in_support = tk >= 0 and tl >= 0 and abs(target_kp - target_km) <= m
        if lattice is not None:
            in_support = in_support and lattice.contains(target_kp, target_km)
        blocked = direction not in channels
        coeff = None if blocked else channels[direction][0]
        records[direction] = TransitionRecord(
            direction=direction,
            coefficient=coeff,
            vanishes=(coeff == 0) if coeff is not None else False,
            harmonic_blocked=blocked,
            target_in_support=in_support,
        )
    return records


def ktype_support(p: int, q: int, m: int, window: Optional[int] = None) -> KTypeLattice:
    """Enumerate the windowed lattice and annotate every transition."""
    check_gates(p, q, m)
    window = window if window is not None else default_window(p, q, m)
    pts = _enumerate_points(p, q, m, window)
    points = {(pt.kappa_plus, pt.kappa_minus): pt for pt in pts}
    lattice = KTypeLattice(
        p=p,
        q=q,
        m=m,
        window=window,
        weights=weight_set(m),
        points=points,
        transitions={},
    )
    for key, pt in points.items():
        lattice.transitions[key] = transition_pattern(pt, p, q, m, lattice)
    return lattice


# -- irreducibility as graph connectivity ---------------------------------------


@dataclass
class ConnectivityCertificate:
    """Spanning in/out trees rooted at the base point, plus the verdict."""

    connected: bool
    base: Tuple[Fraction, Fraction]
    node_count: int
    out_tree: Dict[Tuple[Fraction, Fraction], Tuple[Tuple[Fraction, Fraction], Direction]]
    in_tree: Dict[Tuple[Fraction, Fraction], Tuple[Tuple[Fraction, Fraction], Direction]]
    window: int
    stable_under_window_growth: bool = True


def _edges(lattice: KTypeLattice):
    out: Dict[Tuple[Fraction, Fraction], List[Tuple[Tuple[Fraction, Fraction], Direction]]] = {
        key: [] for key in lattice.points
    }
    for key, records in lattice.transitions.items():
        pt = lattice.points[key]
        for direction, rec in records.items():
            if rec.carries:
                dk, dl = _STEPS[direction]
                target = (pt.kappa_plus + dk, pt.kappa_minus + dl)
                out[key].append((target, direction))
    return out


def _bfs_tree(edges, base):
    tree = {}
    seen = {base}
    queue = deque([base])
    while queue:
        node = queue.popleft()
        for target, direction in edges.get(node, ()):
            if target not in seen:
                seen.add(target)
                tree[target] = (node, direction)
                queue.append(target)
    return tree, seen


def _connectivity(lattice: KTypeLattice) -> ConnectivityCertificate:
    keys = sorted(lattice.points, key=lambda key: (key[0] + key[1], key[0]))
    if not keys:
        raise VerificationError("empty lattice window")
    base = keys[0]
    forward = _edges(lattice)
    backward: Dict = {key: [] for key in lattice.points}
    for src, targets in forward.items():
        for target, direction in targets:
            backward[target].append((src, direction))
    out_tree, reached = _bfs_tree(forward, base)
    in_tree, coreached = _bfs_tree(backward, base)
    connected = len(reached) == len(keys) and len(coreached) == len(keys)
    return ConnectivityCertificate(
        connected=connected,
        base=base,
        node_count=len(keys),
        out_tree=out_tree,
        in_tree=in_tree,
        window=lattice.window,
    )


def irreducible(
    p: int, q: int, m: int, window: Optional[int] = None, check_stability: bool = True
) -> ConnectivityCertificate:
    """Single-orbit connectivity of the K-type transition graph.

    A True verdict certifies that every window K-type reaches every other
    through moves with nonzero coefficient and live harmonic factor, which
    is the irreducibility criterion for p, q >= 2; stability re-runs the
    verdict with the window enlarged by 4 and records agreement.
    """
    check_gates(p, q, m, need_pq2=True)
    window = window if window is not None else default_window(p, q, m)
    cert = _connectivity(ktype_support(p, q, m, window))
    if check_stability:
        bigger = _connectivity(ktype_support(p, q, m, window + 4))
        cert.stable_under_window_growth = bigger.connected == cert.connected
        if not cert.stable_under_window_growth:
            raise VerificationError(
                f"connectivity verdict changed when window grew: {window} -> {window + 4}"
            )
    return cert


# -- ladder formulas ---------------------------------------------------------------


def ladder_closed(spec: ExtremalSpec, nu: int) -> RadialElement:
    """Closed form of the nu-fold ladder action on an extremal vector.

    Lowering a highest-weight vector h1 h2 rho_y^mu psi_{kappa+} of weight
    lam gives the binomial sum over i of

        C(nu, i) (-lam+nu-1)_i- (mu)_{nu-i}- (kappa- + mu - 1)_{nu-i}-
        / (kappa+)_i+  *  rho_x^i rho_y^{mu-nu+i} psi_{kappa+ + i},

    with (x)_n- falling and (x)_n+ rising factorials; raising a lowest
    vector is the mirror image with an overall (-1)^nu. Any term whose
    radial exponent would go negative must carry a zero coefficient; that
    is asserted, never silently fixed.
    """
    if nu < 0:
        raise ValueError("nu must be non-negative")
    lam = spec.weight
    kp, km = spec.kappa_plus, spec.kappa_minus
    mu = spec.mu
    terms = {}
    for i in range(nu + 1):
        if spec.kind == "highest":
            coeff = (
                Fraction(math.comb(nu, i))
                * falling_factorial(-lam + nu - 1, i)
                * falling_factorial(Fraction(mu), nu - i)
                * falling_factorial(km + mu - 1, nu - i)
                / rising_factorial(kp, i)
            )
            key = (i, mu - nu + i, kp + i)
        elif spec.kind == "lowest":
            coeff = (
                Fraction(-1 if nu % 2 else 1)
                * Fraction(math.comb(nu, i))
                * falling_factorial(lam + nu - 1, i)
                * falling_factorial(Fraction(mu), nu - i)
                * falling_factorial(kp + mu - 1, nu - i)
                / rising_factorial(km, i)
            )
            key = (mu - nu + i, i, km + i)
        else:
            raise ValueError(f"unknown extremal kind {spec.kind!r}")
        if not coeff:
            continue
        if key[0] < 0 or key[1] < 0:
            raise VerificationError(
                f"ladder term {key} has a negative exponent with coefficient {coeff}"
            )
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return RadialElement(spec.p, spec.q, spec.k, spec.l, terms)


def ladder_iterated(spec: ExtremalSpec, nu: int) -> RadialElement:
    """The same ladder action computed by iterating the one-step closed action."""
    which = "x_minus" if spec.kind == "highest" else "x_plus"
    out = extremal_radial(spec)
    for _ in range(nu):
        out = act_sl2_closed(which, out)
    return out


def ladder_identity(spec: ExtremalSpec, j: int) -> Fraction:
    """The scalar c with (raise)^j (lower)^j v = c v on a weight-m highest vector.

    Computed by iterating the closed one-step actions and projecting back on
    the original vector through the series oracle; the residual must vanish.
    The value is checked against j! (m)_j- before returning.
    """
    if spec.kind != "highest":
        raise ValueError("the up-down identity starts from a highest-weight vector")
    m = spec.weight
    if m.denominator != 1 or m < 0:
        raise ConfigurationError(f"extremal weight {m} is not a non-negative integer")
    m = int(m)
    if not 0 <= j <= m + 1:
        raise ValueError(f"j = {j} outside [0, {m + 1}]")
    v = extremal_radial(spec)
    cur = v
    for _ in range(j):
        cur = act_sl2_closed("x_minus", cur)
    for _ in range(j):
        cur = act_sl2_closed("x_plus", cur)
    c = radial_proportionality(cur, v)
    if c is None:
        raise VerificationError("up-down image is not proportional to the start vector")
    expected = Fraction(math.factorial(j)) * falling_factorial(Fraction(m), j)
    if c != expected:
        raise VerificationError(
            f"up-down constant {c} differs from j!(m)_j- = {expected}"
        )
    return c


# -- graded growth and invariants ----------------------------------------------------


def graded_dim(p: int, q: int, m: int, n: int) -> int:
    """Dimension of the n-th layer of the degree filtration of the module.

    Equal to the sum over the m+1 lattice diagonals of products of harmonic
    dimensions; stated for p >= q, so arguments are swapped if needed.
    """
    check_gates(p, q, m)
    if n < 0:
        raise ValueError("n must be non-negative")
    if p < q:
        p, q = q, p
    half_gap = (p - q) // 2
    total = 0
    for j in range(m + 1):
        total += dim_harm(p, n + j) * dim_harm(q, n + m - j + half_gap)
    return total


def _interpolate(n0: int, values: Sequence[Fraction]) -> List[Fraction]:
    """Exact polynomial through (n0+i, values[i]), power-basis coefficients."""
    diffs = [Fraction(v) for v in values]
    table = [diffs[0]]
    level = diffs
    for _ in range(len(values) - 1):
        level = [b - a for a, b in zip(level, level[1:])]
        table.append(level[0])
    # Newton form sum_j table[j] * C(x - n0, j), expanded exactly.
    coeffs = [Fraction(0)] * len(values)
    basis = [Fraction(1)]  # falling-product polynomial, power basis
    for jj, delta in enumerate(table):
        scale = delta / math.factorial(jj)
        for e, c in enumerate(basis):
            coeffs[e] += scale * c
        root = Fraction(n0 + jj)
        new_basis = [Fraction(0)] * (len(basis) + 1)
        for e, c in enumerate(basis):
            new_basis[e + 1] += c
            new_basis[e] -= root * c
        basis = new_basis
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class GrowthInvariants:
    """Exact growth table, fitted polynomial, and the two invariants."""

    p: int
    q: int
    m: int
    table: Tuple[Tuple[int, int], ...]
    coefficients: Tuple[Fraction, ...]
    onset: int
    gk_dimension: int
    bernstein_degree: int


def bernstein_degree_formula(p: int, q: int, m: int) -> int:
    value = Fraction(4 * (m + 1) * math.factorial(p + q - 4)) / (
        math.factorial(p - 2) * math.factorial(q - 2)
    )
    if value.denominator != 1:
        raise ArithmeticError("Bernstein degree formula gave a non-integer")
    return int(value)


def gk_invariants(p: int, q: int, m: int) -> GrowthInvariants:
    """Fit the exact growth polynomial and read off the two invariants.

    Interpolates p+q-2 consecutive exact layer dimensions past the
    stabilization onset, verifies five extra points and a disjoint second
    interpolation window, then insists the fitted degree is p+q-4, that
    GK dimension = degree + 1 = p+q-3, and that the normalized leading
    coefficient matches 4(m+1)(p+q-4)!/((p-2)!(q-2)!). Exact throughout.
    """
    check_gates(p, q, m, need_pq3=True)
    count = p + q - 2
    expected_degree = p + q - 4
    onset = None
    coeffs: List[Fraction] = []
    for candidate in range(0, 7):
        values = [Fraction(graded_dim(p, q, m, candidate + i)) for i in range(count)]
        coeffs = _interpolate(candidate, values)
        extras_ok = all(
            _poly_eval(coeffs, candidate + count + e)
            == graded_dim(p, q, m, candidate + count + e)
            for e in range(5)
        )
        if extras_ok:
            onset = candidate
            break
    if onset is None:
        raise VerificationError("no stabilization onset found for the growth table")
    second_start = onset + count
    second = _interpolate(
        second_start,
        [Fraction(graded_dim(p, q, m, second_start + i)) for i in range(count)],
    )
    if second != coeffs:
        raise VerificationError("disjoint interpolation windows disagree")
    degree = len(coeffs) - 1
    if degree != expected_degree:
        raise VerificationError(
            f"fitted degree {degree} differs from expected {expected_degree}"
        )
    lead = coeffs[-1]
    bdeg = lead * math.factorial(degree)
    if bdeg.denominator != 1:
        raise VerificationError("normalized leading coefficient is not an integer")
    bdeg = int(bdeg)
    if bdeg != bernstein_degree_formula(p, q, m):
        raise VerificationError(
            f"Bernstein degree {bdeg} differs from the closed formula "
            f"{bernstein_degree_formula(p, q, m)}"
        )
    gk = degree + 1
    if gk != p + q - 3:
        raise VerificationError(f"GK dimension {gk} differs from p+q-3")
    table = tuple((n, graded_dim(p, q, m, n)) for n in range(onset + count + 5))
    return GrowthInvariants(
        p=p,
        q=q,
        m=m,
        table=table,
        coefficients=tuple(coeffs),
        onset=onset,
        gk_dimension=gk,
        bernstein_degree=bdeg,
    )


# -- generating threshold --------------------------------------------------------------


def generating_threshold(p: int, q: int, m: int, window: Optional[int] = None) -> int:
    """Least j whose diagonal kappa+ + kappa- = j realizes every ladder weight.

    Scans j upward over the windowed lattice; the scanned value is verified
    against max(m+p, m+q) before returning, and re-verified on a window
    enlarged by 4.
    """
    check_gates(p, q, m)
    window = window if window is not None else default_window(p, q, m)
    target = set(weight_set(m))

    def scan(limit: int) -> Optional[int]:
        for j in range(0, limit + 1):
            realized = set()
            for w in target:
                kp = Fraction(j + w, 2)
                km = Fraction(j - w, 2)
                k = kp - Fraction(p, 2)
                l = km - Fraction(q, 2)
                if k.denominator == 1 and l.denominator == 1 and k >= 0 and l >= 0:
                    realized.add(w)
            if realized == target:
                return j
        return None

    found = scan(window)
    if found is None:
        raise VerificationError(f"no full diagonal found within window {window}")
    expected = max(m + p, m + q)
    if found != expected:
        raise VerificationError(
            f"scanned threshold {found} differs from max(m+p, m+q) = {expected}"
        )
    if scan(window + 4) != found:
        raise VerificationError("threshold changed when the window grew")
    return found


# -- isomorphism between the two ladder realizations -------------------------------------


@dataclass
class IsomorphismSample:
    k: int
    l: int
    mu_minus: int
    mu_plus: int
    down_constant: Fraction
    up_constant: Fraction
    round_trip: Fraction


@dataclass
class IsomorphismReport:
    p: int
    q: int
    m: int
    samples: Tuple[IsomorphismSample, ...]
    round_trip_constant: Fraction


def isomorphism_check(
    p: int, q: int, m: int, ktypes: Optional[Sequence[Tuple[int, int]]] = None
) -> IsomorphismReport:
    """Certify that the two extremal realizations generate the same module.

    For each sampled K-type, the m-fold lowering of the highest vector is
    verified proportional (nonzero constant) to the lowest vector with
    mu+ + mu- = m, and symmetrically for raising; the m-fold up-down
    round-trip constant must equal (m!)^2 and be identical across K-types.
    The one-way constants themselves vary with the K-type and are recorded.
    """
    check_gates(p, q, m)
    if ktypes is None:
        lattice = ktype_support(p, q, m)
        ktypes = [(pt.k, pt.l) for pt in lattice.ordered_points()[:4]]
    samples = []
    for k, l in ktypes:
        kp = k + Fraction(p, 2)
        km = l + Fraction(q, 2)
        mu_minus = Fraction(kp - km + m, 2)
        if mu_minus.denominator != 1 or not 0 <= mu_minus <= m:
            raise ConfigurationError(f"K-type ({k},{l}) is not in the lattice")
        mu_minus = int(mu_minus)
        mu_plus = m - mu_minus
        high = ExtremalSpec("highest", p, q, k, l, mu_minus)
        low = ExtremalSpec("lowest", p, q, k, l, mu_plus)
        v_high = extremal_radial(high)
        v_low = extremal_radial(low)
        down = v_high
        up = v_low
        for _ in range(m):
            down = act_sl2_closed("x_minus", down)
            up = act_sl2_closed("x_plus", up)
        c_down = radial_proportionality(down, v_low)
        c_up = radial_proportionality(up, v_high)
        if c_down is None or c_up is None or not c_down or not c_up:
            raise VerificationError(
                f"extremal vectors at K-type ({k},{l}) are not proportional images"
            )
        round_trip = c_down * c_up
        samples.append(
            IsomorphismSample(k, l, mu_minus, mu_plus, c_down, c_up, round_trip)
        )
    constants = {s.round_trip for s in samples}
    if len(constants) != 1:
        raise VerificationError(f"round-trip constant depends on the K-type: {constants}")
    constant = constants.pop()
    expected = Fraction(math.factorial(m)) ** 2
    if constant != expected:
        raise VerificationError(f"round-trip constant {constant} != (m!)^2 = {expected}")
    return IsomorphismReport(p, q, m, tuple(samples), constant)
