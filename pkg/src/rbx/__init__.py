"""Exact-arithmetic toolkit for Rota-Baxter Lie algebras.

Validates structures and twisting cocycles, builds and deconstructs
non-abelian extensions, decides inducibility of automorphism pairs, evaluates
Wells obstructions, and verifies the associated exact sequences by exhaustive
enumeration over prime fields.
"""

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidStructure,
    ParseError,
    RbxError,
)
from .linalg import DEFAULT_BUDGET, GF, QQ, Field, Matrix, solve
from .liealg import (
    LieAlgebra,
    RBLieAlgebra,
    check_jacobi,
    check_rb_morphism,
    check_rota_baxter,
    derivation_algebra,
    enumerate_rb_automorphisms,
    is_rb_automorphism,
    validate_rb_lie,
)
from .reps import (
    Representation,
    adjoint_representation,
    check_compatible_pair,
    check_representation,
    pullback_action,
    semidirect_product,
)
from .cohomology import (
    Cochain,
    RBCochain,
    SecondCohomology,
    ce_differential,
    derivation_space,
    rb_twisted_differential,
    rbl_differential,
    second_cohomology,
)
from .results import (
    CheckReport,
    EquivalenceResult,
    ExtensionEquivalenceResult,
    InducibilityResult,
    ValidationReport,
    Verdict,
)
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    build_extension,
    canonical_section,
    check_extension_equivalence,
    extract_cocycle,
    solve_cocycle_equivalence,
    validate_cocycle,
    validate_extension,
    verify_cocycle_equivalence,
)
from .inducibility import (
    AutomorphismPair,
    aut_h_subgroup,
    check_wells_exactness,
    decide_inducible,
    lift_automorphism,
    tau,
    transform_cocycle,
    verify_inducibility_witness,
    wells_is_trivial,
    wells_restricted_g,
    wells_restricted_h,
)
from .abelian import (
    AbelianExtensionView,
    abelian_wells_class,
    abelianize,
    aut_to_derivation,
    check_abelian_wells_sequence,
    check_split_semidirect,
    classify_abelian,
    decide_inducible_abelian,
    derivation_to_aut,
)

__all__ = [name for name in dir() if not name.startswith("_")]
