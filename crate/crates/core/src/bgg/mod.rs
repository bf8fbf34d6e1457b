//! Twisted complexes on flat models and the BGG machinery built from them.

mod ainfinity;
mod cap;
pub mod checks;
mod context;
mod deform;
mod pairing;
mod products;
mod random;
mod twisted;

pub use ainfinity::{lambda_expansion, AInfinity, Graded};
pub use cap::CapProduct;
pub use context::BggContext;
pub use deform::{deformation_obstruction, gauge_obstruction, DeformationReport};
pub use pairing::PairingData;
pub use products::{contract_sections, wedge_sections, Product, SignedTerm, Triple};
pub use random::SectionSampler;
pub use twisted::{dual_space, stabilization_degree, Direction, FiberComplex, TwistedComplex};
