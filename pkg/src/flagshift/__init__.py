"""Numerical laboratory for commuting polynomial families on product Lie algebras."""

from .algebra import LieAlgebra, build_algebra
from .errors import ConfigurationError, GenericityError
from .product import ProductSpace
from .ranks import DEFAULT_POLICY, RankPolicy, numerical_rank, nullspace
from .families import (
    FamilyMember,
    PolynomialFamily,
    casimir_family,
    flag_momentum_family,
    flag_shift_family,
    gaudin_family,
    generic_shift,
    mf_shift_family,
    momentum_coordinates,
    restrict_family,
    restrict_member,
)
from .poisson import (
    factor_bracket,
    family_bivector,
    invariant_tangent_span,
    kernel_of_restricted_bivector,
    lp_bracket,
    pencil_bracket,
    v_bracket,
)
from .certify import (
    CLAIM_IDS,
    CertificateReport,
    ClaimContext,
    Tolerances,
    check_ad_invariance,
    check_involutive,
    estimate_ddim,
    estimate_dind,
    generic_point,
    run_claims,
    verify_completeness,
    verify_lemma1,
    verify_span_inclusion,
)
from .dynamics import (
    FlowSpec,
    Trajectory,
    einstein_hamiltonian,
    einstein_parameters,
    enr_closed_form,
    euler_field,
    gaudin_field,
    gaudin_hamiltonian,
    integrate,
    normal_hamiltonian,
    novi_hamiltonian,
)

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra",
    "build_algebra",
    "ConfigurationError",
    "GenericityError",
    "ProductSpace",
    "DEFAULT_POLICY",
    "RankPolicy",
    "numerical_rank",
    "nullspace",
    "FamilyMember",
    "PolynomialFamily",
    "casimir_family",
    "flag_momentum_family",
    "flag_shift_family",
    "gaudin_family",
    "generic_shift",
    "mf_shift_family",
    "momentum_coordinates",
    "restrict_family",
    "restrict_member",
    "factor_bracket",
    "family_bivector",
    "invariant_tangent_span",
    "kernel_of_restricted_bivector",
    "lp_bracket",
    "pencil_bracket",
    "v_bracket",
    "CLAIM_IDS",
    "CertificateReport",
    "ClaimContext",
    "Tolerances",
    "check_ad_invariance",
    "check_involutive",
    "estimate_ddim",
    "estimate_dind",
    "generic_point",
    "run_claims",
    "verify_completeness",
    "verify_lemma1",
    "verify_span_inclusion",
    "FlowSpec",
    "Trajectory",
    "einstein_hamiltonian",
    "einstein_parameters",
    "enr_closed_form",
    "euler_field",
    "gaudin_field",
    "gaudin_hamiltonian",
    "integrate",
    "normal_hamiltonian",
    "novi_hamiltonian",
    "__version__",
]
