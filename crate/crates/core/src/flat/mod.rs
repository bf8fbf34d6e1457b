//! Polynomial sections on the big cell of an abelian parabolic and constant-coefficient
//! operators between them.

pub mod checks;
mod derham;
mod operator;
mod poly;

pub use derham::{lift_fiberwise, poly_section_space, FlatModel};
pub use operator::FlatOperator;
pub use poly::{MonomialBasis, PolySectionSpace};
