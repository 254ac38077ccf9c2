"""Exact-rational computations for Lie algebras with twisted triangular r-matrices."""

from .linalg import (
    LinearSolver,
    Matrix,
    NoSolutionError,
    Rational,
    SingularMatrixError,
    invert,
    kernel_basis,
    rat,
    rref,
    solve,
)
from .liealg import (
    Cochain,
    JacobiViolationError,
    LieAlgebra,
    Multivector,
    NotClosedError,
    NotInvariantError,
    Representation,
    RepresentationError,
    Subalgebra,
    annihilator,
    ce_differential,
    check_jacobi,
    coadjoint_subrep,
    infinitesimal_character,
    interior,
    pair,
    quotient_rep,
    span_subalgebra,
    trace_adjoint,
    whole_algebra,
)
from .twisted import (
    CYBE_SIGN,
    CybeResult,
    InternalDisagreementError,
    ModularClassReport,
    PsiNotClosedError,
    RelationReport,
    StructureInvariantError,
    TwistedTriangularStructure,
    carrier_and_kernel,
    cybe_lhs_trivector,
    dual_bracket,
    dual_lie_algebra,
    modular_class,
    psi_pullback_trivector,
    r_sharp_matrix,
    relation_check,
    restricted_sharp,
)
from .frobenius import (
    DegenerateFormError,
    FrobeniusCheck,
    NotFrobeniusError,
    frobenius_modular,
    invert_bivector,
    invert_cochain,
    is_frobenius,
    linearize,
    linearize_from_parts,
    mu_from_xi,
)
from . import catalog, structfile

__all__ = [
    "CYBE_SIGN",
    "Cochain",
    "CybeResult",
    "DegenerateFormError",
    "FrobeniusCheck",
    "InternalDisagreementError",
    "JacobiViolationError",
    "LieAlgebra",
    "LinearSolver",
    "Matrix",
    "ModularClassReport",
    "Multivector",
    "NoSolutionError",
    "NotClosedError",
    "NotFrobeniusError",
    "NotInvariantError",
    "PsiNotClosedError",
    "Rational",
    "RelationReport",
    "Representation",
    "RepresentationError",
    "SingularMatrixError",
    "StructureInvariantError",
    "Subalgebra",
    "TwistedTriangularStructure",
    "annihilator",
    "carrier_and_kernel",
    "catalog",
    "ce_differential",
    "check_jacobi",
    "coadjoint_subrep",
    "cybe_lhs_trivector",
    "dual_bracket",
    "dual_lie_algebra",
    "frobenius_modular",
    "infinitesimal_character",
    "interior",
    "invert",
    "invert_bivector",
    "invert_cochain",
    "is_frobenius",
    "kernel_basis",
    "linearize",
    "linearize_from_parts",
    "modular_class",
    "mu_from_xi",
    "pair",
    "psi_pullback_trivector",
    "quotient_rep",
    "r_sharp_matrix",
    "rat",
    "relation_check",
    "restricted_sharp",
    "rref",
    "solve",
    "span_subalgebra",
    "structfile",
    "trace_adjoint",
    "whole_algebra",
]
