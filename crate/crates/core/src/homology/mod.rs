//! Chains `Λ^k m* ⊗ W`, the codifferential and coboundary, and the Hodge splitting.

pub mod checks;
mod complex;
mod forms;
mod hodge;

pub use complex::{chain_space, chain_space_basis, ChainComplexData};
pub use forms::FormTables;
pub use hodge::{
    fiber_hodge, hodge_split, homology_dim, homology_module, verify_harmonic_identification, FiberHodge, HodgeSplit,
    HomologyModule,
};
