"""Exact models of o(p,q) acting through a commuting sl2 ladder.

The package realizes the indefinite orthogonal Lie algebra by polynomial
coefficient differential operators obtained from a quantized moment map,
verifies every claimed operator identity symbolically over Gaussian
rationals, builds the K-type lattices of the finite-ladder submodules,
decides their irreducibility criterion by graph connectivity, and computes
Gelfand-Kirillov dimension and Bernstein degree from exact graded growth.
"""

from .errors import (
    ClosedFormInapplicable,
    ConfigurationError,
    DegenerateProjection,
    ForbiddenAlpha,
    VerificationError,
)
from .gkmod import (
    ConnectivityCertificate,
    GrowthInvariants,
    KTypeLattice,
    LatticePoint,
    TransitionRecord,
    bernstein_degree_formula,
    generating_threshold,
    gk_invariants,
    graded_dim,
    irreducible,
    isomorphism_check,
    ktype_support,
    ladder_closed,
    ladder_identity,
    ladder_iterated,
    transition_pattern,
    weight_set,
)
from .harmonics import HarmonicBasis, dagger, decompose_into_harmonics, dim_harm, harmonic_basis
from .liealg import (
    BasisLabel,
    LieElement,
    Sl2Triple,
    basis_element,
    basis_labels,
    bracket,
    casimir,
    casimir_scalar_shift,
    lie_decompose,
    moment_map,
    partial_fourier,
    pi,
    pi_sharp,
    sl2_triple,
    trace_form,
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
    radial_proportionality,
    simplify,
    to_series,
    weyl_act,
)
from .poly import Monomial, Polynomial, poly_divide, radius_sq, rho
from .scalars import GaussianRational, falling_factorial, rising_factorial
from .weyl import (
    WeylOperator,
    euler,
    laplacian,
    radius_sq_operator,
    weyl_apply,
    weyl_commutator,
    weyl_compose,
)

__version__ = "0.1.0"
