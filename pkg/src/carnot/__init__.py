"""Exact computations for stratified nilpotent Lie algebras: derivations,
Tanaka and Singer–Sternberg prolongations, and rank-one rigidity tests."""

from .algebra import (
    AlgebraParseError,
    AlgebraValidationError,
    GradedLieAlgebra,
    StrataDerivation,
    check_valid,
    degenerate_subspace,
    parse_algebra,
    serialize_algebra,
    validate_structure,
)
from .derivations import MatrixSubspace, conformal_subalgebra, h_zero, strata_derivations
from .groebner import GroebnerBasis, NonHomogeneousInput, PartialComputation, groebner_basis, normal_form, only_origin
from .linalg import ExactMatrix, kernel_basis, rank, rref_and_rank, solve_linear
from .poly import MultiPoly
from .rigidity import (
    CharacteristicInput,
    RigidityVerdict,
    characteristic_certificate,
    minor_ideal_adX,
    minor_ideal_h0,
    rigidity_verdict,
    witness_search,
)
from .scalars import GaussianRational, Rational
from .symmetric import (
    FiniteType,
    SSProlongationElement,
    SymTensor,
    UndeterminedUpTo,
    classical_matrix_algebras,
    finite_type_scan,
    pairing,
    polarize,
    ss_prolongation_level,
    symmetrize,
)
from .tanaka import (
    LevelNotComputed,
    ProlongationTower,
    TowerNotTerminated,
    bracket_in_tower,
    export_graded_algebra,
    h_spaces,
    prolong_tower,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParseError",
    "AlgebraValidationError",
    "CharacteristicInput",
    "ExactMatrix",
    "FiniteType",
    "GaussianRational",
    "GradedLieAlgebra",
    "GroebnerBasis",
    "LevelNotComputed",
    "MatrixSubspace",
    "MultiPoly",
    "NonHomogeneousInput",
    "PartialComputation",
    "ProlongationTower",
    "Rational",
    "RigidityVerdict",
    "SSProlongationElement",
    "StrataDerivation",
    "SymTensor",
    "TowerNotTerminated",
    "UndeterminedUpTo",
    "bracket_in_tower",
    "characteristic_certificate",
    "check_valid",
    "classical_matrix_algebras",
    "conformal_subalgebra",
    "degenerate_subspace",
    "export_graded_algebra",
    "finite_type_scan",
    "groebner_basis",
    "h_spaces",
    "h_zero",
    "kernel_basis",
    "minor_ideal_adX",
    "minor_ideal_h0",
    "normal_form",
    "only_origin",
    "pairing",
    "parse_algebra",
    "polarize",
    "prolong_tower",
    "rank",
    "rigidity_verdict",
    "rref_and_rank",
    "serialize_algebra",
    "solve_linear",
    "ss_prolongation_level",
    "strata_derivations",
    "symmetrize",
    "validate_structure",
    "witness_search",
]
