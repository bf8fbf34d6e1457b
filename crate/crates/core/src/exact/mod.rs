//! Exact rational linear algebra.

pub mod elim;
mod rational;
mod space;
mod sparse;

pub use rational::{ParseRationalError, Rational};
pub use space::{invert_on_subspace, rank_factor, solve_linear, BasedSpace, OperatorMatrix, RankFactor, SubspaceBasis};
pub use sparse::{DenseAccumulator, SparseMatrix, SparseVec};
