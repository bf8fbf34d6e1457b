//! Lie algebras with parabolic gradings and their representations.

mod algebra;
mod builtin;
pub mod checks;
mod grading;
mod rep;

pub use algebra::{build_lie_algebra, from_matrix_basis, LieAlgebraData, StructureConstant};
pub use builtin::{builtin_parabolic, conformal, g2, projective, BuiltinFamily, GradedAlgebra};
pub use grading::ParabolicGrading;
pub use rep::{
    adjoint, build_representation, dual, exterior_matrix, exterior_power, sort_with_sign, standard, subsets, tensor,
    trivial, validate_representation, weight_decomposition, RepExpr, RepValidation, RepresentationData, Scope,
    WeightDecomposition,
};
