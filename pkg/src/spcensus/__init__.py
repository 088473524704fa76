"""Exact-arithmetic census of (polarized) superspecial abelian surfaces in
the isogeny class of the real Weil numbers ±sqrt(q), backed by independently
cross-checked quadratic-field invariant engines."""

from .arith import (
    ExactRational,
    PrimeInput,
    fundamental_discriminant,
    is_prime,
    kronecker,
)
from .formulas import (
    CensusReport,
    EllipticBaseline,
    GaussGenus,
    GenusLabel,
    GroupTag,
    PolModTriple,
    RefinedTable,
    census,
    elliptic_baseline,
    lambda_pp_strata,
    mass_values,
    pol_mod_numbers,
    ppav_class_number,
    ppav_refined,
    ppav_type_number,
    ppav_type_number_variant,
    refined_pol_mod,
)
from .errors import (
    IntegralityError,
    InvariantViolation,
    OracleDisagreement,
    VerificationFailure,
)
from .quadratic import (
    QuadraticUnit,
    RealQuadraticProfile,
    class_number_imaginary,
    class_number_order_A,
    class_number_real,
    fundamental_unit,
    quadratic_profile,
    unit_index_varpi,
    zeta_F_minus1,
)
from .symplectic import (
    AlternatingForm,
    SymplecticDecomposition,
    hermitian_self_dual_exists,
    invariant_factors,
    is_modular,
    is_self_dual,
    pfaffian,
    symplectic_normal_form,
)

__version__ = "0.1.0"
