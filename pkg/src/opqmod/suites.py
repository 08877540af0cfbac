"""Verification suites: every identity the package claims, as check records.

Each suite returns a list of CheckResult and is driven by the command line
("verify") as well as reused by the acceptance tests. All checks are exact;
the only tunables are the series truncation override and the lattice window,
both of which are recorded in the report configuration.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConfigurationError
from .gkmod import (
    ConnectivityCertificate,
    default_window,
    generating_threshold,
    gk_invariants,
    irreducible,
    isomorphism_check,
    ktype_support,
    ladder_closed,
    ladder_identity,
    ladder_iterated,
    weight_set,
)
from .harmonics import dim_harm, harmonic_basis
from .liealg import (
    BasisLabel,
    basis_element,
    basis_labels,
    bracket,
    casimir,
    casimir_scalar_shift,
    indefinite_form,
    mat_mul,
    moment_map,
    partial_fourier,
    pi,
    pi_sharp,
    sl2_triple,
)
from .module_e import (
    ExtremalSpec,
    ModuleElement,
    RadialElement,
    act_p_closed,
    act_sl2_closed,
    extremal_radial,
    extremal_vector,
    is_zero,
    psi_coefficient,
    simplify,
    to_series,
    weyl_act,
)
from .poly import Polynomial, rho
from .report import CheckResult, run_check
from .scalars import GaussianRational, rising_factorial
from .weyl import WeylOperator, weyl_commutator, weyl_compose

PSI_TEST_INDICES = (Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3))


# -- liealg ------------------------------------------------------------------------


def liealg_suite(p: int, q: int) -> List[CheckResult]:
    labels = basis_labels(p, q)
    checks = []

    def membership():
        eps = [1] * p + [-1] * q
        for lb in labels:
            x = basis_element(lb, p, q)
            for i in range(p + q):
                for j in range(p + q):
                    if x.mat[j][i] * eps[j] + x.mat[i][j] * eps[i]:
                        raise AssertionError(f"{lb} leaves the algebra")
        return f"{len(labels)} basis elements"

    checks.append(
        run_check("liealg.basis.membership", "tX.I(p,q) + I(p,q).X == 0", membership)
    )

    def homomorphism(model):
        ops = {lb: model(lb, p, q) for lb in labels}
        pairs = 0
        for a in labels:
            for b in labels:
                lhs = weyl_commutator(ops[a], ops[b])
                rhs = model(bracket(basis_element(a, p, q), basis_element(b, p, q)))
                if lhs != rhs:
                    raise AssertionError(f"bracket mismatch at ({a}, {b})")
                pairs += 1
        return f"{pairs} ordered pairs"

    checks.append(
        run_check(
            "liealg.homomorphism.pi",
            "[pi(X),pi(Y)] == pi([X,Y])",
            lambda: homomorphism(pi),
        )
    )
    checks.append(
        run_check(
            "liealg.homomorphism.pi-sharp",
            "[pi#(X),pi#(Y)] == pi#([X,Y])",
            lambda: homomorphism(pi_sharp),
        )
    )

    def commutant():
        trip = sl2_triple(p, q)
        for lb in labels:
            op = pi(lb, p, q)
            for name, t in (("h", trip.h), ("x+", trip.x_plus), ("x-", trip.x_minus)):
                if not weyl_commutator(op, t).is_zero():
                    raise AssertionError(f"[pi({lb}), {name}] != 0")
        return f"{len(labels)} basis elements x 3 generators"

    checks.append(
        run_check("liealg.commutant.sl2", "[pi(X), {h,x+,x-}] == 0", commutant)
    )

    def rotations_agree():
        for lb in labels:
            if lb.kind in ("xx", "yy") and pi(lb, p, q) != pi_sharp(lb, p, q):
                raise AssertionError(f"models differ on rotation {lb}")

    checks.append(
        run_check(
            "liealg.models.agree-on-rotations",
            "pi(X) == pi#(X) for X in the rotation subalgebra",
            rotations_agree,
        )
    )

    def fourier():
        for lb in labels:
            a = pi(lb, p, q)
            if partial_fourier(a) != pi_sharp(lb, p, q):
                raise AssertionError(f"substitution misses pi# at {lb}")
            if partial_fourier(partial_fourier(a), inverse=True) != a:
                raise AssertionError(f"inverse substitution fails at {lb}")
        return f"{len(labels)} labels, forward and inverse"

    checks.append(
        run_check(
            "liealg.fourier.pi-to-pi-sharp",
            "partial_fourier(pi(X)) == pi#(X)",
            fourier,
        )
    )

    def sl2_brackets():
        trip = sl2_triple(p, q)
        assert weyl_commutator(trip.h, trip.x_plus) == trip.x_plus.scale(2)
        assert weyl_commutator(trip.h, trip.x_minus) == trip.x_minus.scale(-2)
        assert weyl_commutator(trip.x_plus, trip.x_minus) == trip.h

    checks.append(
        run_check(
            "liealg.sl2.brackets",
            "[h,x+]=2x+, [h,x-]=-2x-, [x+,x-]=h",
            sl2_brackets,
        )
    )

    checks.append(
        run_check(
            "liealg.casimir.dual-basis",
            "displayed full Casimir == sum over a dual basis",
            lambda: casimir("g", p, q) and "cross-checked inside constructor",
        )
    )
    checks.append(
        run_check(
            "liealg.casimir.rotation-part",
            "displayed rotation Casimir == dual-basis sum",
            lambda: casimir("k", p, q) and "cross-checked inside constructor",
        )
    )

    def casimir_shift():
        diff = casimir("g", p, q) - casimir("sl2", p, q)
        if not diff.is_scalar():
            raise AssertionError("difference is not scalar")
        if diff.constant_part() != casimir_scalar_shift(p, q):
            raise AssertionError(f"scalar is {diff.constant_part()!r}")
        return f"shift = {casimir_scalar_shift(p, q)}"

    checks.append(
        run_check(
            "liealg.casimir.scalar-shift",
            "casimir(g) - casimir(sl2) == (-(p+q)^2/4 + p+q) id",
            casimir_shift,
        )
    )

    def moment_equivariance():
        xs = [Fraction(1), Fraction(1, 2)] + [Fraction(i + 1, 3) for i in range(p + q - 2)]
        ys = [Fraction(2, 3)] + [Fraction(2 * i + 1, 5) for i in range(p + q - 1)]
        group_elements = []
        if p >= 2:
            c, s = Fraction(3, 5), Fraction(4, 5)
            g = [[Fraction(int(i == j)) for j in range(p + q)] for i in range(p + q)]
            g[0][0], g[0][1], g[1][0], g[1][1] = c, -s, s, c
            ginv = [row[:] for row in g]
            ginv[0][1], ginv[1][0] = s, -s
            group_elements.append((g, ginv))
        ch, sh = Fraction(5, 4), Fraction(3, 4)
        g = [[Fraction(int(i == j)) for j in range(p + q)] for i in range(p + q)]
        g[0][0], g[0][p], g[p][0], g[p][p] = ch, sh, sh, ch
        ginv = [row[:] for row in g]
        ginv[0][p], ginv[p][0] = -sh, -sh
        group_elements.append((g, ginv))
        for g, ginv in group_elements:
            gx = [sum(g[i][k] * xs[k] for k in range(p + q)) for i in range(p + q)]
            gy = [sum(g[i][k] * ys[k] for k in range(p + q)) for i in range(p + q)]
            lhs = moment_map(gx, gy, p, q)
            gm = tuple(tuple(GaussianRational(v) for v in row) for row in g)
            gmi = tuple(tuple(GaussianRational(v) for v in row) for row in ginv)
            rhs = mat_mul(mat_mul(gm, moment_map(xs, ys, p, q)), gmi)
            if lhs != rhs:
                raise AssertionError("moment map is not equivariant at a sample point")
        return f"{len(group_elements)} rational group elements"

    checks.append(
        run_check(
            "liealg.moment-map.equivariance",
            "mu(g.z) == g mu(z) g^-1 at rational group points",
            moment_equivariance,
        )
    )
    return checks


# -- series calculus ------------------------------------------------------------------


def series_suite(depth: int = 12) -> List[CheckResult]:
    checks = []

    def ode():
        for alpha in PSI_TEST_INDICES:
            for n in range(depth + 1):
                lhs = (n + 1) * (n + alpha) * psi_coefficient(alpha, n + 1)
                if lhs + psi_coefficient(alpha, n) != 0:
                    raise AssertionError(f"ODE fails at alpha={alpha}, u^{n}")
        shown = ", ".join(str(a) for a in PSI_TEST_INDICES)
        return f"indices {shown}, coefficients through u^{depth}"

    checks.append(
        run_check(
            "series.ode",
            "u f'' + alpha f' + f == 0 for the normalized series",
            ode,
        )
    )

    def derivative_shift():
        for alpha in PSI_TEST_INDICES:
            for k in range(1, 5):
                scale = Fraction(-1 if k % 2 else 1) / rising_factorial(alpha, k)
                for n in range(depth + 1):
                    lhs = psi_coefficient(alpha, n + k) * math.perm(n + k, k)
                    if lhs != scale * psi_coefficient(alpha + k, n):
                        raise AssertionError(f"shift fails at alpha={alpha}, k={k}, n={n}")
        return "orders 1..4"

    checks.append(
        run_check(
            "series.derivative-shift",
            "f_alpha^(k) == (-1)^k / (alpha)_k+ f_{alpha+k}",
            derivative_shift,
        )
    )

    def recurrence():
        p = q = 2
        u = rho("x", p, q) * rho("y", p, q)
        for alpha in PSI_TEST_INDICES:
            f = ModuleElement(p, q, {alpha + 2: u}) - (
                ModuleElement.psi(alpha + 1, p, q) - ModuleElement.psi(alpha, p, q)
            ).scale(GaussianRational(alpha * (alpha + 1)))
            if not is_zero(f, depth):
                raise AssertionError(f"recurrence fails at alpha={alpha}")
        return f"series depth {depth}"

    checks.append(
        run_check(
            "series.recurrence",
            "u psi_{a+2} == a(a+1)(psi_{a+1} - psi_a) at u = rho_x rho_y",
            recurrence,
        )
    )

    def extremal_profile():
        # s f_ss + kappa f_s + t f == 0 for f = t^mu Psi_kappa(st), as a
        # truncated bivariate series in the half squared radii (s, t).
        for kappa in PSI_TEST_INDICES:
            for mu in (0, 1, 2):
                f = {
                    (n, n + mu): psi_coefficient(kappa, n) for n in range(depth + 2)
                }
                residual: Dict[Tuple[int, int], Fraction] = {}

                def add(key, value):
                    if key[0] < 0 or key[1] < 0 or not value:
                        return
                    acc = residual.get(key, Fraction(0)) + value
                    if acc:
                        residual[key] = acc
                    else:
                        residual.pop(key, None)

                for (i, j), c in f.items():
                    add((i - 1, j), c * i * (i - 1) + kappa * c * i)
                    add((i, j + 1), c)
                bad = [key for key in residual if sum(key) <= depth]
                if bad:
                    raise AssertionError(
                        f"profile fails at kappa={kappa}, mu={mu}: {sorted(bad)[:3]}"
                    )
        return "bivariate residual vanishes through total series order"

    checks.append(
        run_check(
            "series.extremal-profile",
            "s d2f/ds2 + kappa df/ds + t f == 0 for f = t^mu Psi_kappa(st)",
            extremal_profile,
        )
    )
    return checks


# -- module-level oracle agreement ------------------------------------------------------


def random_corpus(
    rng: random.Random, p: int, q: int, count: int
) -> List[Tuple[int, int, int, int, Fraction, int, int]]:
    """Single-term sample data: (k, l, a, b, alpha, h1 index, h2 index)."""
    out = []
    for _ in range(count):
        k = rng.randint(0, 2)
        l = rng.randint(0, 2)
        a = rng.randint(0, 2)
        b = rng.randint(0, 2)
        alpha = k + Fraction(p, 2) + rng.randint(0, 2)
        i1 = rng.randrange(len(harmonic_basis(p, k, "x").elements))
        i2 = rng.randrange(len(harmonic_basis(q, l, "y").elements))
        out.append((k, l, a, b, alpha, i1, i2))
    return out


def closed_vs_generic_one(
    p: int,
    q: int,
    sample: Tuple[int, int, int, int, Fraction, int, int],
    boost: Tuple[int, int],
    depth: Optional[int] = None,
) -> None:
    """Raise when any closed action disagrees with the generic action."""
    k, l, a, b, alpha, i1, i2 = sample
    h1 = harmonic_basis(p, k, "x").elements[i1].embed(p, q)
    h2 = harmonic_basis(q, l, "y").elements[i2].embed(p, q)
    r = RadialElement.single(p, q, k, l, a, b, alpha)
    f = r.to_module_element(h1, h2)
    trip = sl2_triple(p, q)
    for which, op in (
        ("h", trip.h),
        ("x_plus", trip.x_plus),
        ("x_minus", trip.x_minus),
    ):
        closed = act_sl2_closed(which, r).to_module_element(h1, h2)
        if not is_zero(closed - weyl_act(op, f), depth):
            raise AssertionError(f"sl2 {which} disagrees at {sample}")
    i, j = boost
    closed = act_p_closed(i, j, h1, h2, a, b, alpha)
    op = pi(BasisLabel("mixed", i, j), p, q).scale(GaussianRational(0, -1))
    if not is_zero(closed - weyl_act(op, f), depth):
        raise AssertionError(f"boost ({i},{j}) disagrees at {sample}")


def module_suite(
    p: int, q: int, seed: int = 0, count: int = 50, depth: Optional[int] = None
) -> List[CheckResult]:
    if (p - q) % 2 != 0:
        raise ConfigurationError(f"p = {p} and q = {q} must have equal parity")
    rng = random.Random(f"{seed}:{p}:{q}")
    checks = []

    def closed_vs_generic():
        corpus = random_corpus(rng, p, q, count)
        for sample in corpus:
            boost = (rng.randint(1, p), rng.randint(1, q))
            closed_vs_generic_one(p, q, sample, boost, depth)
        return f"{len(corpus)} single-term elements, 4 operators each"

    checks.append(
        run_check(
            "module.closed-vs-generic",
            "closed sl2/boost actions == generic operator action",
            closed_vs_generic,
        )
    )

    def composition():
        trip = sl2_triple(p, q)
        ops = [trip.h, trip.x_plus, trip.x_minus, pi(BasisLabel("mixed", 1, 1), p, q)]
        corpus = random_corpus(rng, p, q, max(4, count // 10))
        for k, l, a, b, alpha, i1, i2 in corpus:
            h1 = harmonic_basis(p, k, "x").elements[i1].embed(p, q)
            h2 = harmonic_basis(q, l, "y").elements[i2].embed(p, q)
            f = RadialElement.single(p, q, k, l, a, b, alpha).to_module_element(h1, h2)
            for a_op in ops:
                for b_op in ops:
                    lhs = weyl_act(weyl_compose(a_op, b_op), f)
                    rhs = weyl_act(a_op, weyl_act(b_op, f))
                    if not is_zero(lhs - rhs, depth):
                        raise AssertionError("composition mismatch")
        return f"{len(corpus)} elements x {len(ops)}^2 operator pairs"

    checks.append(
        run_check(
            "module.action.composition",
            "acting by A∘B == acting by B then A",
            composition,
        )
    )

    def simplify_checks():
        corpus = random_corpus(rng, p, q, max(6, count // 8))
        u = rho("x", p, q) * rho("y", p, q)
        for k, l, a, b, alpha, i1, i2 in corpus:
            h1 = harmonic_basis(p, k, "x").elements[i1].embed(p, q)
            h2 = harmonic_basis(q, l, "y").elements[i2].embed(p, q)
            base = RadialElement.single(p, q, k, l, a, b, alpha).to_module_element(h1, h2)
            f = base.multiply_poly(u) + base.scale(GaussianRational(Fraction(1, 3)))
            g = simplify(f)
            if simplify(g) != g:
                raise AssertionError("simplify is not idempotent")
            if not is_zero(f - g, depth):
                raise AssertionError("simplify changed the element")
        return "idempotence and soundness on a randomized corpus"

    checks.append(
        run_check(
            "module.simplify",
            "simplify preserves the element and is idempotent",
            simplify_checks,
        )
    )

    def extremal_annihilation():
        trip = sl2_triple(p, q)
        for kind in ("highest", "lowest"):
            for k, l, mu in ((0, 0, 0), (1, 1, 1), (0, 1, 2)):
                spec = ExtremalSpec(kind, p, q, k, l, mu)
                f = extremal_vector(spec)
                killer = trip.x_plus if kind == "highest" else trip.x_minus
                if not is_zero(weyl_act(killer, f), depth):
                    raise AssertionError(f"{kind} vector not annihilated at {spec}")
                hf = weyl_act(trip.h, f)
                if not is_zero(hf - f.scale(GaussianRational(spec.weight)), depth):
                    raise AssertionError(f"wrong weight at {spec}")
        return "both kinds, three (k, l, mu) shapes each"

    checks.append(
        run_check(
            "module.extremal.annihilation",
            "extremal vectors are weight vectors killed by their ladder operator",
            extremal_annihilation,
        )
    )
    return checks


# -- harmonic machinery ------------------------------------------------------------------


def harmonics_suite(max_n: int = 6, max_d: int = 8) -> List[CheckResult]:
    checks = []

    def dims():
        for n in range(1, max_n + 1):
            for d in range(0, max_d + 1):
                basis = harmonic_basis(n, d)  # raises if count != formula
                for h in basis.elements:
                    pass
        return f"all n <= {max_n}, d <= {max_d}"

    checks.append(
        run_check(
            "harmonics.dimension",
            "kernel rank of the Laplacian == closed dimension formula",
            dims,
        )
    )

    def product_rule():
        # Laplacian of h * phi(r^2) for harmonic h and polynomial phi.
        coeffs = [Fraction(1), Fraction(2, 3), Fraction(-5, 7), Fraction(11, 13)]
        from .harmonics import block_laplacian_apply
        from .poly import radius_sq

        for n in range(1, 5):
            for d in range(0, 5):
                basis = harmonic_basis(n, d)
                if not basis.elements:
                    continue
                h = basis.elements[0]
                r2 = radius_sq("x", n, 0)
                phi = sum(
                    ((r2**e).scale(c) for e, c in enumerate(coeffs)),
                    Polynomial.zero(n, 0),
                )
                dphi = sum(
                    ((r2 ** (e - 1)).scale(c * e) for e, c in enumerate(coeffs) if e),
                    Polynomial.zero(n, 0),
                )
                ddphi = sum(
                    (
                        (r2 ** (e - 2)).scale(c * e * (e - 1))
                        for e, c in enumerate(coeffs)
                        if e >= 2
                    ),
                    Polynomial.zero(n, 0),
                )
                lhs = block_laplacian_apply(h * phi, "x")
                rhs = (h * dphi).scale(4 * d + 2 * n) + (r2 * h * ddphi).scale(4)
                if lhs != rhs:
                    raise AssertionError(f"product rule fails at (n,d)=({n},{d})")
        return "harmonic x radial product rule, n <= 4, d <= 4"

    checks.append(
        run_check(
            "harmonics.radial-product-rule",
            "Lap(h phi(r^2)) == (4d+2n) h phi' + 4 r^2 h phi''",
            product_rule,
        )
    )
    return checks


# -- lattice / module suite ----------------------------------------------------------------


def gkmod_suite(
    p: int, q: int, m: int, window: Optional[int] = None, depth: Optional[int] = None
) -> List[CheckResult]:
    window = window if window is not None else default_window(p, q, m)
    checks = []
    lattice = ktype_support(p, q, m, window)
    points = lattice.ordered_points()

    def lattice_invariants():
        weights = set(weight_set(m))
        for pt in points:
            w = pt.kappa_plus - pt.kappa_minus
            if w not in weights:
                raise AssertionError(f"point {pt} carries weight {w}")
            if not 0 <= pt.mu <= m:
                raise AssertionError(f"point {pt} has mu outside [0, m]")
            if pt.kappa_plus + pt.kappa_minus <= m + 2:
                raise AssertionError(f"point {pt} violates the excluded-branch bound")
        bigger = ktype_support(p, q, m, window + 4)
        if not set(lattice.points) <= set(bigger.points):
            raise AssertionError("window growth lost points")
        return f"{len(points)} points, window {window}"

    checks.append(
        run_check(
            "gkmod.lattice.invariants",
            "weights in the ladder set, mu in [0,m], kappa sum > m+2, window monotone",
            lattice_invariants,
        )
    )

    def annihilation():
        for pt in points:
            spec = ExtremalSpec("highest", p, q, pt.k, pt.l, pt.mu)
            v = extremal_radial(spec)
            if not act_sl2_closed("x_plus", v).is_structurally_zero():
                raise AssertionError(f"raising does not kill the vector at {pt}")
            hv = act_sl2_closed("h", v)
            if not (hv - v.scale(m)).is_structurally_zero():
                raise AssertionError(f"weight is not m at {pt}")
            cur = v
            for j in range(1, m + 2):
                cur = act_sl2_closed("x_minus", cur)
                iszero = cur.is_zero(depth)
                if j <= m and iszero:
                    raise AssertionError(f"lowering step {j} vanished early at {pt}")
                if j == m + 1 and not iszero:
                    raise AssertionError(f"lowering step {m+1} did not vanish at {pt}")
        return f"{len(points)} highest-weight vectors"

    checks.append(
        run_check(
            "gkmod.annihilation",
            "Hv=mv, raise kills v, m-fold lowering survives, (m+1)-fold vanishes",
            annihilation,
        )
    )

    def ladder_checks():
        for pt in points[:6]:
            spec = ExtremalSpec("highest", p, q, pt.k, pt.l, pt.mu)
            for nu in range(m + 2):
                if not (ladder_closed(spec, nu) - ladder_iterated(spec, nu)).is_zero(depth):
                    raise AssertionError(f"ladder closed form differs at {pt}, nu={nu}")
            mirror = ExtremalSpec("lowest", p, q, pt.k, pt.l, m - pt.mu)
            for nu in range(m + 2):
                if not (ladder_closed(mirror, nu) - ladder_iterated(mirror, nu)).is_zero(depth):
                    raise AssertionError(f"mirror ladder differs at {pt}, nu={nu}")
        return "closed binomial form == iterated one-step action, nu <= m+1"

    checks.append(
        run_check(
            "gkmod.ladder.closed-vs-iterated",
            "nu-fold ladder closed form matches iteration",
            ladder_checks,
        )
    )

    def up_down():
        pt = points[0]
        spec = ExtremalSpec("highest", p, q, pt.k, pt.l, pt.mu)
        for j in range(m + 2):
            ladder_identity(spec, j)  # self-verifying
        return "constants j!(m)_j- for j <= m+1, including (m!)^2 and 0"

    checks.append(
        run_check(
            "gkmod.ladder.up-down-constants",
            "(raise)^j (lower)^j v == j!(m)_j- v",
            up_down,
        )
    )

    checks.append(
        run_check(
            "gkmod.isomorphism",
            "m-fold ladder maps identify the two realizations; round trip (m!)^2",
            lambda: f"round trip {isomorphism_check(p, q, m).round_trip_constant}",
        )
    )

    def transition_flags():
        for pt in points:
            recs = lattice.transitions[(pt.kappa_plus, pt.kappa_minus)]
            if pt.case == "i":
                bad = [r for r in recs.values() if r.harmonic_blocked or r.vanishes]
                if bad:
                    raise AssertionError(f"interior point {pt} has dead moves {bad}")
            if pt.mu == 0 and not recs["NW"].harmonic_blocked:
                if recs["NW"].coefficient != 0:
                    raise AssertionError(f"NW coefficient nonzero at mu=0: {pt}")
            if pt.mu == m and not recs["SE"].harmonic_blocked:
                if recs["SE"].coefficient != 0:
                    raise AssertionError(f"SE coefficient nonzero at mu=m: {pt}")
            if pt.case == "ii-c" and not (pt.k == 0 or pt.l == 0):
                raise AssertionError(f"case ii-c without a zero harmonic degree: {pt}")
        return f"{len(points)} points classified"

    checks.append(
        run_check(
            "gkmod.transitions.case-flags",
            "boundary cases: NW dies at mu=0, SE dies at mu=m, interior all live",
            transition_flags,
        )
    )

    if p >= 2 and q >= 2:
        def connectivity():
            cert = irreducible(p, q, m, window)
            if not cert.connected:
                raise AssertionError("transition graph is not strongly connected")
            return (
                f"{cert.node_count} nodes, window {window}, stable under +4: "
                f"{cert.stable_under_window_growth}"
            )

        checks.append(
            run_check(
                "gkmod.connectivity",
                "K-type transition graph strongly connected (irreducibility criterion)",
                connectivity,
            )
        )
    else:
        from .report import inapplicable

        checks.append(
            inapplicable(
                "gkmod.connectivity",
                "K-type transition graph strongly connected (irreducibility criterion)",
                "requires p, q >= 2",
            )
        )

    checks.append(
        run_check(
            "gkmod.threshold",
            "first full diagonal == max(m+p, m+q)",
            lambda: f"threshold {generating_threshold(p, q, m, window)}",
        )
    )

    if p >= 3 and q >= 3:
        def growth():
            inv = gk_invariants(p, q, m)
            return (
                f"degree {inv.gk_dimension - 1}, GK {inv.gk_dimension}, "
                f"Bernstein {inv.bernstein_degree}"
            )

        checks.append(
            run_check(
                "gkmod.growth",
                "fitted growth polynomial matches GK and Bernstein closed forms",
                growth,
            )
        )
    else:
        from .report import inapplicable

        checks.append(
            inapplicable(
                "gkmod.growth",
                "fitted growth polynomial matches GK and Bernstein closed forms",
                "requires p, q >= 3",
            )
        )
    return checks
