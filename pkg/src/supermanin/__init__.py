"""Exact computations with quadratic super-algebras and super Manin matrices."""

from .algebra import (
    GradedComponent,
    Idempotent,
    QuadraticSuperAlgebra,
    algebra_X,
    algebra_Xi,
    algebra_from_relations,
    algebra_from_terms,
    antisymmetrizer_idempotent,
    black,
    build_Lambda,
    build_S,
    build_T,
    check_homomorphism,
    component,
    coproduct,
    dual_identification,
    graded_tensor,
    hilbert,
    koszul_dual,
    opposite,
    parity_shift,
    symmetrizer_idempotent,
    tensor,
    transport,
    unit_K,
    unit_dual_numbers,
    unit_polynomial,
    white,
)
from .errors import SuperManinError
from .linalg import Matrix, Subspace
from .manin import (
    AlgebraMatrix,
    CoendComonoid,
    ManinVerdict,
    UniversalManinAlgebra,
    bracket_compose,
    coend,
    cohom_bullet,
    cohom_preimage,
    fm_homomorphism,
    inverse_super_transpose,
    is_manin,
    scalar_matrix,
    super_transpose,
    swap_iso_check,
    universal_manin_algebra,
    xi_homomorphism,
)
from .quantum import (
    BialgebraPresentation,
    ClassicalModule,
    LinearAction,
    QuantumRepresentation,
    action_from_representation,
    check_multiplicative,
    coopposite_representation,
    intertwiner_check,
    lift_classical_module,
    opposite_representation,
    parity_change_representation,
    representation_from_action,
)
from .superlinear import make_format, tensor_format

__version__ = "0.1.0"

__all__ = [
    "make_format",
    "tensor_format",
    "AlgebraMatrix",
    "BialgebraPresentation",
    "ClassicalModule",
    "CoendComonoid",
    "GradedComponent",
    "Idempotent",
    "LinearAction",
    "ManinVerdict",
    "Matrix",
    "QuadraticSuperAlgebra",
    "QuantumRepresentation",
    "Subspace",
    "SuperManinError",
    "UniversalManinAlgebra",
    "action_from_representation",
    "algebra_X",
    "algebra_Xi",
    "algebra_from_relations",
    "algebra_from_terms",
    "antisymmetrizer_idempotent",
    "black",
    "bracket_compose",
    "build_Lambda",
    "build_S",
    "build_T",
    "check_homomorphism",
    "check_multiplicative",
    "coend",
    "cohom_bullet",
    "cohom_preimage",
    "component",
    "coopposite_representation",
    "coproduct",
    "dual_identification",
    "fm_homomorphism",
    "graded_tensor",
    "hilbert",
    "intertwiner_check",
    "inverse_super_transpose",
    "is_manin",
    "koszul_dual",
    "lift_classical_module",
    "opposite",
    "opposite_representation",
    "parity_change_representation",
    "parity_shift",
    "representation_from_action",
    "scalar_matrix",
    "super_transpose",
    "swap_iso_check",
    "symmetrizer_idempotent",
    "tensor",
    "transport",
    "unit_K",
    "unit_dual_numbers",
    "unit_polynomial",
    "universal_manin_algebra",
    "white",
    "xi_homomorphism",
]
